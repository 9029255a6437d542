// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "pwbands/bands.hpp"
#include "pwbands/commands.hpp"
#include "pwbands/config.hpp"
#include "pwbands/eigen.hpp"
#include "pwbands/hamiltonian.hpp"

using namespace pwbands;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = PWBANDS_CONFIG_DIR;
constexpr double kA = 5.431;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

const char* const kPresets[] = {"free", "z025", "z05", "z20", "si_empirical"};

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

double pi_a2(double units) {
    const double u = std::numbers::pi / kA;
    return units * u * u;
}

struct Preset {
    RunConfig cfg;
    RealLattice lattice;
    ReciprocalLattice recip;
    KPath path;
    PotentialModel model;
    double g2_max;

    explicit Preset(const std::string& name)
        : cfg(load_config(kConfigs / (name + ".json"))),
          lattice(make_lattice(cfg)),
          recip(reciprocal_of(lattice)),
          path(make_path(cfg)),
          model(make_model(cfg)),
          g2_max(absolute_g2_max(cfg, cfg.g2_max)) {}

    BandStructure run() const {
        return sweep(path, model, lattice, recip, g2_max, cfg.output.num_bands);
    }
};

// 1. reciprocal duality for every lattice kind; FCC reciprocal is a BCC set
Outcome duality() {
    Outcome o;
    for (auto kind : {LatticeKind::SC, LatticeKind::BCC, LatticeKind::FCC, LatticeKind::Diamond}) {
        const RealLattice real = make_cubic(kind, kA);
        const ReciprocalLattice recip = reciprocal_of(real);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double want = i == j ? kTwoPi : 0.0;
                worst = std::max(worst, std::abs(dot(recip.g(i), real.a(j)) - want));
            }
        }
        o.require(worst < 1e-12 * kTwoPi, fmt::format("{} duality error {:.3e}", to_string(kind), worst));
    }
    // BCC with cube edge 4π/a has primitive vectors (2π/a)(±1, ±1, ±1).
    const ReciprocalLattice fcc = reciprocal_of(make_cubic(LatticeKind::FCC, kA));
    const RealLattice bcc = make_cubic(LatticeKind::BCC, 2.0 * kTwoPi / kA);
    for (int i = 0; i < 3; ++i) {
        bool found = false;
        for (int j = 0; j < 3; ++j) found |= norm(fcc.g(i) - bcc.a(j)) < 1e-12 * kTwoPi / kA;
        o.require(found, fmt::format("g{} is not a BCC primitive vector", i + 1));
    }
    return o;
}

// 2. free-electron sweep against the analytic reference; parabola along Γ→X
Outcome free_electron() {
    Outcome o;
    const Preset p("free");
    const BandStructure bs = p.run();
    const BandStructure ref = free_electron_reference(p.path, p.recip, p.g2_max, 8);
    double worst = 0.0;
    for (std::size_t k = 0; k < bs.energies.size(); ++k) {
        for (std::size_t n = 0; n < 8; ++n) {
            worst = std::max(worst, std::abs(bs.energies[k][n] - ref.energies[k][n]));
        }
    }
    o.require(bs.path.size() == 197, fmt::format("path has {} points", bs.path.size()));
    o.require(worst <= 1e-9, fmt::format("max deviation {:.3e} eV", worst));

    // Γ→X is the second segment; fit E = c0 + c1 s + c2 s² over its samples.
    std::vector<double> s, e;
    const auto& pts = bs.path.points();
    const auto gamma = std::find_if(pts.begin(), pts.end(), [](const PathPoint& q) { return q.label == "Γ"; });
    const std::size_t g0 = static_cast<std::size_t>(gamma - pts.begin());
    o.require(g0 < pts.size() && std::abs(bs.energies[g0][0]) <= 1e-12, "lowest band at Γ is not 0");
    for (std::size_t k = g0; k < std::min(g0 + 50, pts.size()); ++k) {
        s.push_back(pts[k].arc_distance);
        e.push_back(bs.energies[k][0]);
    }
    // normal equations, 3×3, Cramer's rule
    const double s0 = s.front();
    double m[3][3] = {}, r[3] = {};
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double x = s[k] - s0;
        const double v[3] = {1.0, x, x * x};
        for (int i = 0; i < 3; ++i) {
            r[i] += v[i] * e[k];
            for (int j = 0; j < 3; ++j) m[i][j] += v[i] * v[j];
        }
    }
    auto det = [](const double a[3][3]) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    const double d = det(m);
    double c[3];
    for (int col = 0; col < 3; ++col) {
        double t[3][3];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) t[i][j] = j == col ? r[i] : m[i][j];
        }
        c[col] = det(t) / d;
    }
    double resid = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double x = s[k] - s0;
        resid = std::max(resid, std::abs(c[0] + c[1] * x + c[2] * x * x - e[k]));
        scale = std::max(scale, std::abs(e[k]));
    }
    o.require(s.size() == 50, fmt::format("Γ→X has {} samples", s.size()));
    o.require(resid <= 1e-9 * scale, fmt::format("parabola residual {:.3e} relative", resid / scale));
    o.require(std::abs(c[2] - constants::kHbar2Over2m) <= 1e-9 * constants::kHbar2Over2m,
              fmt::format("curvature {} differs from ħ²/2m", c[2]));
    return o;
}

// 3. Γ multiplicities 1 then 8
Outcome degeneracy() {
    Outcome o;
    const ReciprocalLattice recip = reciprocal_of(make_cubic(LatticeKind::FCC, kA));
    // Direct norm computation over the enumerated vectors.
    std::vector<double> levels;
    for (const auto& g : enumerate_g(recip, pi_a2(76))) {
        levels.push_back(constants::kHbar2Over2m * norm2(g.cart));
    }
    std::sort(levels.begin(), levels.end());
    std::vector<int> mult;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i == 0 || levels[i] - levels[i - 1] > 1e-9) {
            mult.push_back(1);
        } else {
            ++mult.back();
        }
    }
    o.require(mult.size() >= 2 && mult[0] == 1 && mult[1] == 8,
              fmt::format("oracle multiplicities start {}, {}", mult.at(0), mult.at(1)));

    // The solver on the zero-potential matrix must reproduce the same clustering.
    const RealLattice lattice = make_cubic(LatticeKind::FCC, kA);
    const PlaneWaveBasis basis(recip, pi_a2(76));
    const auto values = eigh(build(Vec3{}, basis, Coulomb{0.0}, lattice, recip).h).values;
    int first = 1, second = 0;
    while (first < static_cast<int>(values.size()) && values[first] - values[0] <= 1e-9) ++first;
    for (std::size_t i = first; i < values.size() && values[i] - values[first] <= 1e-9; ++i) ++second;
    o.require(first == 1 && second == 8, fmt::format("solver multiplicities {}, {}", first, second));
    o.require(std::abs(values[1] - levels[1]) <= 1e-9, "second level differs from the oracle");
    return o;
}

// 4. structure-factor zeros on the 16 (π/a)² shell and their absence from H
Outcome structure_zeros() {
    Outcome o;
    const RealLattice lattice = make_cubic(LatticeKind::Diamond, kA);
    const ReciprocalLattice recip = reciprocal_of(lattice);
    int shell16 = 0;
    for (const auto& g : enumerate_g(recip, pi_a2(16))) {
        if (g.shell != 16) continue;
        ++shell16;
        const double s = std::abs(structure_factor(lattice.basis_offsets(), g.cart));
        o.require(s < 1e-12, fmt::format("|S| = {:.3e} at {},{},{}", s, g.coeff[0], g.coeff[1], g.coeff[2]));
    }
    o.require(shell16 == 6, fmt::format("shell 16 has {} vectors", shell16));

    const PlaneWaveBasis basis(recip, pi_a2(76));
    const auto& gl = basis.g_list();
    for (const char* name : {"z20", "si_empirical"}) {
        const Preset p(name);
        const auto m = build(Vec3{0.13, 0.07, -0.21}, basis, p.model, lattice, recip);
        int coupled = 0;
        for (std::size_t i = 0; i < gl.size(); ++i) {
            for (std::size_t j = 0; j < gl.size(); ++j) {
                const GVector dg = recip.make_gvector({gl[i].coeff[0] - gl[j].coeff[0],
                                                       gl[i].coeff[1] - gl[j].coeff[1],
                                                       gl[i].coeff[2] - gl[j].coeff[2]});
                if (dg.shell == 16 && m.h(i, j) != Complex{}) ++coupled;
            }
        }
        o.require(coupled == 0, fmt::format("{}: {} nonzero shell-16 couplings", name, coupled));
    }
    return o;
}

// 5. Hermiticity of every assembled matrix and the solver contract on every solve
Outcome solver_contract() {
    Outcome o;
    double worst_herm = 0.0, worst_res = 0.0, worst_orth = 0.0, worst_trace = 0.0;
    int solves = 0;
    for (const char* name : kPresets) {
        const Preset p(name);
        const PlaneWaveBasis basis(p.recip, p.g2_max);
        const ComplexMatrix v = potential_matrix(basis, p.model, p.lattice, p.recip);
        for (const auto& pt : p.path.points()) {
            const BlochMatrix bm = build(pt.kappa, basis, v);
            const ComplexMatrix& h = bm.h;
            const std::size_t n = h.dim();
            worst_herm = std::max(worst_herm, hermiticity_defect(h));
            const EigenResult r = eigh(h);
            ++solves;

            double fro = 0.0, trace = 0.0;
            for (const auto& x : h.data()) fro += std::norm(x);
            fro = std::sqrt(fro);
            for (std::size_t i = 0; i < n; ++i) trace += h(i, i).real();
            const double sum = std::accumulate(r.values.begin(), r.values.end(), 0.0);
            worst_trace = std::max(worst_trace, std::abs(trace - sum) / fro);

            for (std::size_t c = 0; c < n; ++c) {
                double res = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    Complex s{};
                    for (std::size_t k = 0; k < n; ++k) s += h(i, k) * r.vectors(k, c);
                    res += std::norm(s - r.values[c] * r.vectors(i, c));
                }
                worst_res = std::max(worst_res, std::sqrt(res) / fro);
                for (std::size_t d = c; d < n; ++d) {
                    Complex s{};
                    for (std::size_t k = 0; k < n; ++k) s += std::conj(r.vectors(k, c)) * r.vectors(k, d);
                    worst_orth = std::max(worst_orth, std::abs(s - (c == d ? 1.0 : 0.0)));
                }
            }
        }
    }
    o.require(worst_herm <= kHermitianTolerance, fmt::format("hermiticity defect {:.3e}", worst_herm));
    o.require(worst_res <= 1e-8, fmt::format("residual {:.3e}·‖H‖", worst_res));
    o.require(worst_orth <= 1e-8, fmt::format("orthonormality {:.3e}", worst_orth));
    o.require(worst_trace <= 1e-8, fmt::format("trace {:.3e}·‖H‖", worst_trace));
    o.detail += fmt::format("{}{} solves; max residual {:.1e}, orth {:.1e}, trace {:.1e}",
                            o.detail.empty() ? "" : "; ", solves, worst_res, worst_orth, worst_trace);
    return o;
}

double band_width(const BandStructure& bs, std::size_t band) {
    double lo = 1e300, hi = -1e300;
    for (const auto& e : bs.energies) {
        lo = std::min(lo, e[band]);
        hi = std::max(hi, e[band]);
    }
    return hi - lo;
}

std::size_t index_of(const KPath& path, const std::string& label) {
    const auto& pts = path.points();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (pts[k].label == label) return k;
    }
    return pts.size();
}

// 6. the Coulomb sequence 0, 0.25, 0.5, 2.0
Outcome coulomb_sequence() {
    Outcome o;
    std::vector<double> split, width;
    std::vector<std::size_t> gaps;
    for (const char* name : {"free", "z025", "z05", "z20"}) {
        const Preset p(name);
        const BandStructure bs = p.run();
        const std::size_t l = index_of(bs.path, "L");
        split.push_back(bs.energies.at(l)[1] - bs.energies.at(l)[0]);
        width.push_back(band_width(bs, 0));
        const GapReport report = detect_gaps(bs);
        gaps.push_back(report.size());
        if (std::string(name) == "z20") {
            const bool positive = std::any_of(report.begin(), report.end(),
                                              [](const Gap& g) { return g.width > 0.0; });
            o.require(positive, "no positive gap at z_eff = 2.0");
        }
    }
    o.require(gaps[0] == 0, fmt::format("{} gaps at z_eff = 0", gaps[0]));
    for (std::size_t i = 1; i < split.size(); ++i) {
        o.require(split[i] >= split[i - 1], fmt::format("L splitting decreases at step {}", i));
    }
    o.require(width[3] < width[2], "band-1 width not narrower at 2.0 than at 0.5");
    o.detail += fmt::format("{}L split {:.4f} {:.4f} {:.4f} {:.4f} eV; band-1 width {:.4f} -> {:.4f} eV",
                            o.detail.empty() ? "" : "; ", split[0], split[1], split[2], split[3],
                            width[2], width[3]);
    return o;
}

// 7. empirical table: gap between bands 4 and 5 with the valence maximum at Γ
Outcome empirical_gap() {
    Outcome o;
    constexpr double kPinnedGap = 0.1315434403717512;  // eV, first verified run
    const Preset p("si_empirical");
    const BandStructure bs = p.run();
    double top4 = -1e300, bottom5 = 1e300;
    std::size_t at = 0;
    for (std::size_t k = 0; k < bs.energies.size(); ++k) {
        if (bs.energies[k][3] > top4) {
            top4 = bs.energies[k][3];
            at = k;
        }
        bottom5 = std::min(bottom5, bs.energies[k][4]);
    }
    const double gap = bottom5 - top4;
    const GapReport report = detect_gaps(bs);
    const bool reported = std::any_of(report.begin(), report.end(), [&](const Gap& g) {
        return g.below_band == 4 && std::abs(g.width - gap) < 1e-12;
    });
    o.require(gap > 0.0, fmt::format("gap {:.6f} eV not positive", gap));
    o.require(reported, "gap missing from the report");
    o.require(bs.path.points()[at].label == "Γ",
              fmt::format("band-4 maximum at point {} ({})", at, bs.path.points()[at].label));
    o.require(std::abs(gap - kPinnedGap) <= 1e-9, fmt::format("gap {:.12f} eV differs from pin", gap));
    o.detail += fmt::format("{}gap {:.6f} eV, band-4 max at {}", o.detail.empty() ? "" : "; ", gap,
                            bs.path.points()[at].label);
    return o;
}

// 8. convergence at Γ for Coulomb 0.5
Outcome convergence() {
    Outcome o;
    const RealLattice lattice = make_cubic(LatticeKind::Diamond, kA);
    const ReciprocalLattice recip = reciprocal_of(lattice);
    const auto rows =
        convergence_study(Vec3{}, Coulomb{0.5}, lattice, recip, {pi_a2(44), pi_a2(76), pi_a2(108)}, 8);
    const std::vector<std::vector<double>> pinned{
        {-0.501087136229, 11.841707419846, 13.860589991888, 15.426641307178, 15.426641307178,
         15.426641307178, 15.638414494121, 15.638414494121},
        {-0.522341589841, 11.610696256297, 13.792326177748, 15.402604014839, 15.402604014839,
         15.402604014839, 15.626185481881, 15.626185481881},
        {-0.541043222729, 11.464644742332, 13.739696783279, 15.396354959383, 15.396354959383,
         15.396354959383, 15.623292015428, 15.623292015428}};
    for (std::size_t n = 0; n < 8; ++n) {
        const double d1 = std::abs(rows[1].values[n] - rows[0].values[n]);
        const double d2 = std::abs(rows[2].values[n] - rows[1].values[n]);
        o.require(d2 < d1, fmt::format("E{} delta {:.3e} >= {:.3e}", n + 1, d2, d1));
    }
    double worst = 0.0;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t n = 0; n < 8; ++n) worst = std::max(worst, std::abs(rows[r].values[n] - pinned[r][n]));
    }
    o.require(worst <= 1e-9, fmt::format("baseline deviation {:.3e} eV", worst));
    return o;
}

std::string slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 9. byte-identical artifacts over two runs of every preset
Outcome determinism() {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "pwbands_acceptance";
    fs::remove_all(root);
    for (const char* name : kPresets) {
        for (const char* run : {"a", "b"}) {
            std::ostringstream out, err;
            const int code = run_command(Command::Bands, kConfigs / (std::string(name) + ".json"),
                                         root / name / run, out, err);
            o.require(code == kExitOk, fmt::format("{} run {} exited {}: {}", name, run, code, err.str()));
        }
        for (const char* file : {"bands.csv", "bands.json", "bands.svg"}) {
            const std::string a = slurp(root / name / "a" / file);
            const std::string b = slurp(root / name / "b" / file);
            o.require(!a.empty() && a == b, fmt::format("{}/{} differs", name, file));
        }
    }
    fs::remove_all(root);
    return o;
}

struct Criterion {
    int id;
    const char* title;
    double limit_s;  // 0 means no runtime limit
    std::function<Outcome()> check;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "reciprocal duality; FCC reciprocal is BCC", 1.0, duality},
        {2, "free-electron oracle and Γ→X parabola", 10.0, free_electron},
        {3, "Γ multiplicities 1 then 8", 0.0, degeneracy},
        {4, "diamond structure-factor zeros on the 16 shell", 0.0, structure_zeros},
        {5, "Hermiticity and solver contract", 0.0, solver_contract},
        {6, "Coulomb sequence phenomenology", 60.0, coulomb_sequence},
        {7, "empirical table gap between bands 4 and 5", 0.0, empirical_gap},
        {8, "cutoff convergence at Γ", 0.0, convergence},
        {9, "deterministic artifacts", 0.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0.0) o.require(secs < c.limit_s, fmt::format("runtime over {} s", c.limit_s));
        if (!o.ok) ++failed;
        std::cout << fmt::format("{} criterion {}: {} [{:.2f} s]{}{}\n", o.ok ? "PASS" : "FAIL", c.id,
                                 c.title, secs, o.detail.empty() ? "" : " ", o.detail);
    }
    std::cout << fmt::format("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
