#pragma once

#include <complex>
#include <map>
#include <span>
#include <variant>

#include "pwbands/lattice.hpp"
#include "pwbands/vec3.hpp"

namespace pwbands {

using Complex = std::complex<double>;

namespace constants {
/// ħ²/2m for the electron, eV·Å².
inline constexpr double kHbar2Over2m = 3.80998212;
/// Coulomb coupling e²/4πε₀, eV·Å.
inline constexpr double kCoulomb = 14.39964;
}  // namespace constants

/// -Z e²/r with the G = 0 divergence dropped.
struct Coulomb {
    double z_eff = 0.0;
};

/// -Z e² exp(-mu r)/r.
struct Yukawa {
    double z_eff = 0.0;
    double mu = 0.0;  ///< screening wavenumber, Å⁻¹
};

/// How a tabulated per-shell value enters the Hamiltonian.
enum class OverrideMode {
    /// Value is the final matrix element; applied wherever S(G) != 0, zero elsewhere.
    Element,
    /// Value is a symmetric form factor, scaled by S(G)/N_atoms.
    FormFactor,
};

/// Base model with per-shell replacements keyed by n² = |G|²/(π/a)².
struct Empirical {
    std::variant<Coulomb, Yukawa> base;
    std::map<int, double> overrides;  ///< eV
    OverrideMode mode = OverrideMode::Element;
};

using PotentialModel = std::variant<Coulomb, Yukawa, Empirical>;

/// Throws std::invalid_argument when z_eff or mu is negative or not finite.
void validate(const PotentialModel& model);

/// Fourier transform of the single-ion potential at |G|² = g2, eV·Å³.
double ion_ft(const PotentialModel& model, double g2);

/// Σ_j exp(-i G·τ_j) over the atomic basis.
Complex structure_factor(std::span<const Vec3> basis_offsets, const Vec3& g);

/// Coupling between plane waves differing by dG, eV. dG = 0 yields the n² = 0
/// override if one is configured, else 0.
Complex matrix_element(const PotentialModel& model, const RealLattice& lattice,
                       const ReciprocalLattice& recip, const GVector& dg);

}  // namespace pwbands
