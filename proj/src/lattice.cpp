#include "pwbands/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwbands {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Columns of [v1ᵀ; v2ᵀ; v3ᵀ]⁻¹ scaled by `scale`.
std::array<Vec3, 3> dual_basis(const std::array<Vec3, 3>& v, double det, double scale) {
    const double s = scale / det;
    return {cross(v[1], v[2]) * s, cross(v[2], v[0]) * s, cross(v[0], v[1]) * s};
}

}  // namespace

std::string to_string(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::SC: return "SC";
        case LatticeKind::BCC: return "BCC";
        case LatticeKind::FCC: return "FCC";
        case LatticeKind::Diamond: return "DIAMOND";
    }
    return "?";
}

std::optional<LatticeKind> lattice_kind_from_string(const std::string& name) {
    if (name == "SC") return LatticeKind::SC;
    if (name == "BCC") return LatticeKind::BCC;
    if (name == "FCC") return LatticeKind::FCC;
    if (name == "DIAMOND") return LatticeKind::Diamond;
    return std::nullopt;
}

RealLattice::RealLattice(const Vec3& a1, const Vec3& a2, const Vec3& a3,
                         std::vector<Vec3> basis_offsets, double lattice_constant,
                         std::optional<LatticeKind> kind)
    : a_{a1, a2, a3}, basis_(std::move(basis_offsets)), lattice_constant_(lattice_constant),
      kind_(kind) {
    if (!(lattice_constant_ > 0.0) || !std::isfinite(lattice_constant_)) {
        throw std::invalid_argument("lattice constant must be positive");
    }
    for (const auto& v : a_) {
        if (!is_finite(v)) throw std::invalid_argument("primitive vector is not finite");
    }
    const double det = triple_product();
    const double scale = norm(a1) * norm(a2) * norm(a3);
    if (!(std::abs(det) > 1e-12 * scale)) {
        throw std::invalid_argument("primitive vectors are linearly dependent");
    }
    if (basis_.empty()) basis_.push_back(Vec3{});

    // Fractional coordinate along a_i is τ·(a_j × a_k)/det.
    const auto frac_axes = dual_basis(a_, det, 1.0);
    for (auto& tau : basis_) {
        if (!is_finite(tau)) throw std::invalid_argument("basis offset is not finite");
        std::array<double, 3> shift{};
        bool moved = false;
        for (int i = 0; i < 3; ++i) {
            const double f = dot(tau, frac_axes[static_cast<std::size_t>(i)]);
            shift[static_cast<std::size_t>(i)] = std::floor(f + 0.5);
            moved = moved || shift[static_cast<std::size_t>(i)] != 0.0;
        }
        if (moved) tau -= a_[0] * shift[0] + a_[1] * shift[1] + a_[2] * shift[2];
    }
}

double RealLattice::triple_product() const { return dot(a_[0], cross(a_[1], a_[2])); }

RealLattice make_cubic(LatticeKind kind, double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("lattice constant must be positive");
    }
    const double h = 0.5 * a;
    switch (kind) {
        case LatticeKind::SC:
            return RealLattice({a, 0, 0}, {0, a, 0}, {0, 0, a}, {Vec3{}}, a, kind);
        case LatticeKind::BCC:
            return RealLattice({-h, h, h}, {h, -h, h}, {h, h, -h}, {Vec3{}}, a, kind);
        case LatticeKind::FCC:
            return RealLattice({0, h, h}, {h, 0, h}, {h, h, 0}, {Vec3{}}, a, kind);
        case LatticeKind::Diamond: {
            const double e = a / 8.0;
            return RealLattice({0, h, h}, {h, 0, h}, {h, h, 0}, {Vec3{e, e, e}, Vec3{-e, -e, -e}},
                               a, kind);
        }
    }
    throw std::invalid_argument("unknown lattice kind");
}

ReciprocalLattice::ReciprocalLattice(const Vec3& g1, const Vec3& g2, const Vec3& g3, double omega,
                                     double lattice_constant)
    : g_{g1, g2, g3}, omega_(omega), lattice_constant_(lattice_constant) {}

Vec3 ReciprocalLattice::cartesian(const std::array<int, 3>& c) const {
    return g_[0] * c[0] + g_[1] * c[1] + g_[2] * c[2];
}

int ReciprocalLattice::shell_of(double g2) const {
    const double unit = std::numbers::pi / lattice_constant_;
    return static_cast<int>(std::llround(g2 / (unit * unit)));
}

GVector ReciprocalLattice::make_gvector(const std::array<int, 3>& coeff) const {
    GVector g;
    g.coeff = coeff;
    g.cart = cartesian(coeff);
    g.shell = shell_of(norm2(g.cart));
    return g;
}

ReciprocalLattice reciprocal_of(const RealLattice& real) {
    const std::array<Vec3, 3> a{real.a1(), real.a2(), real.a3()};
    const double det = real.triple_product();
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
        throw std::invalid_argument("singular lattice matrix");
    }
    const auto g = dual_basis(a, det, kTwoPi);
    return ReciprocalLattice(g[0], g[1], g[2], std::abs(det), real.lattice_constant());
}

std::vector<GVector> enumerate_g(const ReciprocalLattice& recip, double g2_max) {
    if (!(g2_max >= 0.0)) throw std::invalid_argument("g2_max must be non-negative");

    // n_i = G·a_i/2π, so |n_i| <= |G||a_i|/2π with a_i the dual of the g basis.
    const std::array<Vec3, 3> g{recip.g1(), recip.g2(), recip.g3()};
    const double det = dot(g[0], cross(g[1], g[2]));
    const auto a = dual_basis(g, det, 1.0);
    const double radius = std::sqrt(g2_max);
    const double limit = g2_max * (1.0 + 1e-10);
    std::array<int, 3> bound{};
    for (std::size_t i = 0; i < 3; ++i) {
        bound[i] = static_cast<int>(std::floor(radius * norm(a[i]) * (1.0 + 1e-10)));
    }

    struct Entry {
        GVector g;
        double g2;
    };
    std::vector<Entry> found;
    for (int n = -bound[0]; n <= bound[0]; ++n) {
        for (int m = -bound[1]; m <= bound[1]; ++m) {
            for (int l = -bound[2]; l <= bound[2]; ++l) {
                const Vec3 c = recip.cartesian({n, m, l});
                const double g2 = norm2(c);
                if (g2 <= limit) {
                    found.push_back({GVector{{n, m, l}, c, recip.shell_of(g2)}, g2});
                }
            }
        }
    }

    std::sort(found.begin(), found.end(), [](const Entry& x, const Entry& y) {
        if (x.g.shell != y.g.shell) return x.g.shell < y.g.shell;
        if (std::abs(x.g2 - y.g2) > 1e-10 * std::max(x.g2, y.g2)) return x.g2 < y.g2;
        return x.g.coeff < y.g.coeff;
    });

    std::vector<GVector> out;
    out.reserve(found.size());
    for (auto& e : found) out.push_back(e.g);
    return out;
}

std::map<std::string, Vec3> fcc_symmetry_points(double a) {
    const double u = kTwoPi / a;
    return {
        {"Γ", Vec3{0, 0, 0}},
        {"X", Vec3{1, 0, 0} * u},
        {"L", Vec3{0.5, 0.5, 0.5} * u},
        {"W", Vec3{1, 0.5, 0} * u},
        {"K", Vec3{0.75, 0.75, 0} * u},
        {"U", Vec3{1, 0.25, 0.25} * u},
    };
}

KPath make_kpath(std::span<const PathVertex> vertices, int samples_per_segment) {
    if (vertices.size() < 2) throw std::invalid_argument("k-path needs at least two points");
    if (samples_per_segment < 2) {
        throw std::invalid_argument("samples_per_segment must be at least 2");
    }
    if (vertices.front().break_before) {
        throw std::invalid_argument("k-path cannot start with a break");
    }
    for (const auto& v : vertices) {
        if (!is_finite(v.k)) throw std::invalid_argument("k-path vertex is not finite");
    }

    std::vector<PathSegment> segments;
    std::vector<PathPoint> points;
    double arc = 0.0;
    points.push_back({vertices[0].k, 0.0, vertices[0].label, false});

    for (std::size_t i = 1; i < vertices.size(); ++i) {
        const auto& from = vertices[i - 1];
        const auto& to = vertices[i];
        if (to.break_before) {
            points.push_back({to.k, arc, to.label, true});
            continue;
        }
        segments.push_back({from.label, to.label, from.k, to.k});
        const Vec3 delta = to.k - from.k;
        const double length = norm(delta);
        const int last = samples_per_segment - 1;
        for (int s = 1; s <= last; ++s) {
            const double t = static_cast<double>(s) / last;
            PathPoint p;
            p.kappa = s == last ? to.k : from.k + delta * t;
            p.arc_distance = arc + length * t;
            if (s == last) p.label = to.label;
            points.push_back(std::move(p));
        }
        arc += length;
        points.back().arc_distance = arc;
    }
    if (segments.empty()) throw std::invalid_argument("k-path has no segments");
    return KPath(std::move(segments), samples_per_segment, std::move(points));
}

std::vector<PathVertex> default_fcc_tour(double a) {
    const auto sp = fcc_symmetry_points(a);
    std::vector<PathVertex> tour;
    for (const char* label : {"L", "Γ", "X", "U", "Γ"}) tour.push_back({label, sp.at(label), false});
    return tour;
}

}  // namespace pwbands
