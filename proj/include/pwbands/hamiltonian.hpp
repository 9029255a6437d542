#pragma once

#include <vector>

#include "pwbands/lattice.hpp"
#include "pwbands/matrix.hpp"
#include "pwbands/potential.hpp"

namespace pwbands {

/// Selects the OpenMP kernel or the single-threaded reference loop.
enum class Execution { Serial, Parallel };

/// Plane waves |κ+G⟩ for all G with |G|² <= g2_max, in canonical enumeration order.
class PlaneWaveBasis {
public:
    PlaneWaveBasis(const ReciprocalLattice& recip, double g2_max);
    /// Takes an explicit list; throws std::invalid_argument if it is empty or lacks G = 0.
    PlaneWaveBasis(std::vector<GVector> g_list, double g2_max);

    const std::vector<GVector>& g_list() const { return g_; }
    double g2_max() const { return g2_max_; }
    std::size_t dim() const { return g_.size(); }

private:
    std::vector<GVector> g_;
    double g2_max_;
};

struct BlochMatrix {
    Vec3 kappa;
    ComplexMatrix h;  ///< eV

    std::size_t dim() const { return h.dim(); }
};

/// κ-independent part V[i][j] = matrix_element(G_i - G_j).
ComplexMatrix potential_matrix(const PlaneWaveBasis& basis, const PotentialModel& model,
                               const RealLattice& lattice, const ReciprocalLattice& recip,
                               Execution exec = Execution::Parallel);

/// Adds ħ²|κ+G_i|²/2m to the diagonal of a precomputed potential matrix.
BlochMatrix build(const Vec3& kappa, const PlaneWaveBasis& basis, const ComplexMatrix& potential);

/// Full Bloch Hamiltonian at κ. Throws InvalidMatrixError if the result fails the
/// Hermiticity check.
BlochMatrix build(const Vec3& kappa, const PlaneWaveBasis& basis, const PotentialModel& model,
                  const RealLattice& lattice, const ReciprocalLattice& recip);

}  // namespace pwbands
