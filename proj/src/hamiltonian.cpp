#include "pwbands/hamiltonian.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pwbands/eigen.hpp"

namespace pwbands {

namespace {

bool has_origin(const std::vector<GVector>& g) {
    return std::any_of(g.begin(), g.end(), [](const GVector& v) {
        return v.coeff == std::array<int, 3>{0, 0, 0};
    });
}

}  // namespace

PlaneWaveBasis::PlaneWaveBasis(const ReciprocalLattice& recip, double g2_max)
    : PlaneWaveBasis(enumerate_g(recip, g2_max), g2_max) {}

PlaneWaveBasis::PlaneWaveBasis(std::vector<GVector> g_list, double g2_max)
    : g_(std::move(g_list)), g2_max_(g2_max) {
    if (g_.empty() || !has_origin(g_)) {
        throw std::invalid_argument("plane-wave basis must contain G = 0");
    }
}

ComplexMatrix potential_matrix(const PlaneWaveBasis& basis, const PotentialModel& model,
                               const RealLattice& lattice, const ReciprocalLattice& recip,
                               Execution exec) {
    const auto& g = basis.g_list();
    const auto n = static_cast<std::ptrdiff_t>(g.size());
    ComplexMatrix v(g.size());

    // Lower triangle plus diagonal; the upper triangle is filled by conjugation.
#pragma omp parallel for schedule(dynamic, 4) if (exec == Execution::Parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& gi = g[static_cast<std::size_t>(i)].coeff;
        for (std::ptrdiff_t j = 0; j <= i; ++j) {
            const auto& gj = g[static_cast<std::size_t>(j)].coeff;
            const GVector dg = recip.make_gvector({gi[0] - gj[0], gi[1] - gj[1], gi[2] - gj[2]});
            v(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                matrix_element(model, lattice, recip, dg);
        }
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) v(j, i) = std::conj(v(i, j));
    }
    return v;
}

BlochMatrix build(const Vec3& kappa, const PlaneWaveBasis& basis, const ComplexMatrix& potential) {
    if (!is_finite(kappa)) throw std::invalid_argument("Bloch vector is not finite");
    if (potential.dim() != basis.dim()) {
        throw std::invalid_argument("potential matrix does not match basis dimension");
    }
    BlochMatrix m{kappa, potential};
    const auto& g = basis.g_list();
    for (std::size_t i = 0; i < g.size(); ++i) {
        m.h(i, i) += constants::kHbar2Over2m * norm2(kappa + g[i].cart);
    }
    return m;
}

BlochMatrix build(const Vec3& kappa, const PlaneWaveBasis& basis, const PotentialModel& model,
                  const RealLattice& lattice, const ReciprocalLattice& recip) {
    BlochMatrix m = build(kappa, basis, potential_matrix(basis, model, lattice, recip));
    if (const double defect = hermiticity_defect(m.h); defect > kHermitianTolerance) {
        throw InvalidMatrixError("assembled Bloch matrix is not Hermitian (relative defect " +
                                 std::to_string(defect) + ")");
    }
    return m;
}

}  // namespace pwbands
