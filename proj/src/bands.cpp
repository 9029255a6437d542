#include "pwbands/bands.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <optional>

#include "pwbands/eigen.hpp"

namespace pwbands {

namespace {

void check_band_count(int num_bands, std::size_t dim) {
    if (num_bands < 1 || static_cast<std::size_t>(num_bands) > dim) {
        throw std::invalid_argument("num_bands must lie in [1, " + std::to_string(dim) + "]");
    }
}

std::string describe(const Vec3& k) {
    return "(" + std::to_string(k.x) + ", " + std::to_string(k.y) + ", " + std::to_string(k.z) +
           ")";
}

}  // namespace

SweepError::SweepError(std::size_t point_index, const Vec3& kappa, const std::string& what)
    : std::runtime_error("solver failed at path point " + std::to_string(point_index) +
                         ", kappa = " + describe(kappa) + " 1/Å: " + what),
      index_(point_index), kappa_(kappa) {}

BandStructure sweep(const KPath& path, const PotentialModel& model, const RealLattice& lattice,
                    const ReciprocalLattice& recip, double g2_max, int num_bands,
                    Execution exec) {
    const PlaneWaveBasis basis(recip, g2_max);
    check_band_count(num_bands, basis.dim());
    const ComplexMatrix potential = potential_matrix(basis, model, lattice, recip, exec);

    const auto& points = path.points();
    const auto count = static_cast<std::ptrdiff_t>(points.size());
    std::vector<std::vector<double>> energies(points.size());

    // Exceptions may not leave an OpenMP region; keep the first failure by index.
    std::optional<SweepError> failure;

#pragma omp parallel for schedule(dynamic) if (exec == Execution::Parallel)
    for (std::ptrdiff_t p = 0; p < count; ++p) {
        const auto idx = static_cast<std::size_t>(p);
        try {
            const BlochMatrix m = build(points[idx].kappa, basis, potential);
            EigenResult r = eigh(m.h);
            r.values.resize(static_cast<std::size_t>(num_bands));
            energies[idx] = std::move(r.values);
        } catch (const EigenError& e) {
#pragma omp critical(pwbands_sweep_failure)
            {
                if (!failure || failure->point_index() > idx) {
                    failure.emplace(idx, points[idx].kappa, e.what());
                }
            }
        }
    }
    if (failure) throw *failure;

    return BandStructure{path, num_bands, std::move(energies)};
}

BandStructure free_electron_reference(const KPath& path, const ReciprocalLattice& recip,
                                      double g2_max, int num_bands) {
    const auto g = enumerate_g(recip, g2_max);
    check_band_count(num_bands, g.size());
    const auto bands = static_cast<std::size_t>(num_bands);

    BandStructure bs{path, num_bands, {}};
    bs.energies.reserve(path.size());
    std::vector<double> level(g.size());
    for (const auto& point : path.points()) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            level[i] = constants::kHbar2Over2m * norm2(point.kappa + g[i].cart);
        }
        std::partial_sort(level.begin(), level.begin() + static_cast<std::ptrdiff_t>(bands),
                          level.end());
        bs.energies.emplace_back(level.begin(), level.begin() + static_cast<std::ptrdiff_t>(bands));
    }
    return bs;
}

GapReport detect_gaps(const BandStructure& bs) {
    GapReport report;
    if (bs.energies.empty()) return report;
    const auto bands = static_cast<std::size_t>(bs.num_bands);
    for (std::size_t n = 0; n + 1 < bands; ++n) {
        double bottom = -std::numeric_limits<double>::infinity();
        double top = std::numeric_limits<double>::infinity();
        for (const auto& e : bs.energies) {
            bottom = std::max(bottom, e[n]);
            top = std::min(top, e[n + 1]);
        }
        if (top > bottom) report.push_back({static_cast<int>(n) + 1, bottom, top, top - bottom});
    }
    return report;
}

std::vector<ConvergenceRow> convergence_study(const Vec3& kappa, const PotentialModel& model,
                                              const RealLattice& lattice,
                                              const ReciprocalLattice& recip,
                                              const std::vector<double>& cutoffs, int num_bands) {
    if (!std::is_sorted(cutoffs.begin(), cutoffs.end())) {
        throw std::invalid_argument("cutoffs must be ascending");
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(cutoffs.size());
    for (const double g2_max : cutoffs) {
        const PlaneWaveBasis basis(recip, g2_max);
        check_band_count(num_bands, basis.dim());
        const BlochMatrix m = build(kappa, basis, model, lattice, recip);
        EigenResult r;
        try {
            r = eigh(m.h);
        } catch (const EigenError& e) {
            throw SweepError(rows.size(), kappa, e.what());
        }
        r.values.resize(static_cast<std::size_t>(num_bands));
        rows.push_back({g2_max, basis.dim(), std::move(r.values)});
    }
    return rows;
}

}  // namespace pwbands
