#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pwbands/hamiltonian.hpp"
#include "pwbands/lattice.hpp"
#include "pwbands/potential.hpp"

namespace pwbands {

/// Lowest num_bands eigenvalues (eV, ascending) at every point of a k-path.
struct BandStructure {
    KPath path;
    int num_bands = 0;
    std::vector<std::vector<double>> energies;
};

/// Path gap above band `below_band` (1-based, matching column E<n> of the CSV).
struct Gap {
    int below_band = 0;
    double gap_bottom = 0.0;
    double gap_top = 0.0;
    double width = 0.0;
};

using GapReport = std::vector<Gap>;

/// Solver failure during a sweep, tagged with the offending path point.
class SweepError : public std::runtime_error {
public:
    SweepError(std::size_t point_index, const Vec3& kappa, const std::string& what);

    std::size_t point_index() const { return index_; }
    const Vec3& kappa() const { return kappa_; }

private:
    std::size_t index_;
    Vec3 kappa_;
};

/**
 * @brief Solve the Bloch Hamiltonian at every path point.
 *
 * Points are distributed over OpenMP threads under Execution::Parallel; results
 * are stored by path index, so output does not depend on the thread count.
 * Throws std::invalid_argument if num_bands is outside [1, basis dimension].
 */
BandStructure sweep(const KPath& path, const PotentialModel& model, const RealLattice& lattice,
                    const ReciprocalLattice& recip, double g2_max, int num_bands,
                    Execution exec = Execution::Parallel);

/// Sorted ħ²|κ+G|²/2m over the same basis, without matrix assembly.
BandStructure free_electron_reference(const KPath& path, const ReciprocalLattice& recip,
                                      double g2_max, int num_bands);

/// Gaps between adjacent bands over the sampled path (not the whole zone).
GapReport detect_gaps(const BandStructure& bs);

struct ConvergenceRow {
    double g2_max = 0.0;  ///< Å⁻²
    std::size_t dim = 0;
    std::vector<double> values;
};

/// One spectrum per cutoff at a fixed κ. Cutoffs must be ascending.
std::vector<ConvergenceRow> convergence_study(const Vec3& kappa, const PotentialModel& model,
                                              const RealLattice& lattice,
                                              const ReciprocalLattice& recip,
                                              const std::vector<double>& cutoffs, int num_bands);

}  // namespace pwbands
