#include "pwbands/potential.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwbands {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_charge(double z_eff) {
    if (!(z_eff >= 0.0) || !std::isfinite(z_eff)) {
        throw std::invalid_argument("z_eff must be finite and non-negative");
    }
}

void validate_base(const std::variant<Coulomb, Yukawa>& base) {
    std::visit(overloaded{
                   [](const Coulomb& c) { check_charge(c.z_eff); },
                   [](const Yukawa& y) {
                       check_charge(y.z_eff);
                       if (!(y.mu >= 0.0) || !std::isfinite(y.mu)) {
                           throw std::invalid_argument("mu must be finite and non-negative");
                       }
                   },
               },
               base);
}

double base_ft(const std::variant<Coulomb, Yukawa>& base, double g2) {
    return std::visit(overloaded{
                          [g2](const Coulomb& c) {
                              if (g2 == 0.0) return 0.0;
                              return -kFourPi * c.z_eff * constants::kCoulomb / g2;
                          },
                          [g2](const Yukawa& y) {
                              const double denom = g2 + y.mu * y.mu;
                              if (denom == 0.0) return 0.0;
                              return -kFourPi * y.z_eff * constants::kCoulomb / denom;
                          },
                      },
                      base);
}

bool is_zero(const GVector& g) { return g.coeff == std::array<int, 3>{0, 0, 0}; }

}  // namespace

void validate(const PotentialModel& model) {
    std::visit(overloaded{
                   [](const Coulomb& c) { validate_base(c); },
                   [](const Yukawa& y) { validate_base(y); },
                   [](const Empirical& e) {
                       validate_base(e.base);
                       for (const auto& [shell, value] : e.overrides) {
                           if (shell < 0 || !std::isfinite(value)) {
                               throw std::invalid_argument("invalid empirical override");
                           }
                       }
                   },
               },
               model);
}

double ion_ft(const PotentialModel& model, double g2) {
    if (!(g2 >= 0.0)) throw std::invalid_argument("g2 must be non-negative");
    return std::visit(overloaded{
                          [g2](const Coulomb& c) { return base_ft(c, g2); },
                          [g2](const Yukawa& y) { return base_ft(y, g2); },
                          [g2](const Empirical& e) { return base_ft(e.base, g2); },
                      },
                      model);
}

Complex structure_factor(std::span<const Vec3> basis_offsets, const Vec3& g) {
    Complex sum{0.0, 0.0};
    for (const auto& tau : basis_offsets) {
        const double phase = dot(g, tau);
        sum += Complex{std::cos(phase), -std::sin(phase)};
    }
    return sum;
}

Complex matrix_element(const PotentialModel& model, const RealLattice& lattice,
                       const ReciprocalLattice& recip, const GVector& dg) {
    const auto& basis = lattice.basis_offsets();
    const auto* emp = std::get_if<Empirical>(&model);
    const auto it = emp ? emp->overrides.find(dg.shell) : std::map<int, double>::const_iterator{};
    const bool overridden = emp && it != emp->overrides.end();

    if (is_zero(dg)) return overridden ? Complex{it->second, 0.0} : Complex{};

    // Structure-factor zeros are exact; rounding in the phase sum must not leak a coupling.
    const Complex s = structure_factor(basis, dg.cart);
    const double atoms = static_cast<double>(basis.size());
    if (std::abs(s) <= 1e-12 * atoms) return {};

    if (overridden) {
        if (emp->mode == OverrideMode::FormFactor) return it->second * s / atoms;
        return {it->second, 0.0};
    }
    return ion_ft(model, norm2(dg.cart)) / recip.omega() * s;
}

}  // namespace pwbands
