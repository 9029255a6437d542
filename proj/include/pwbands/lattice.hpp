#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pwbands/vec3.hpp"

namespace pwbands {

enum class LatticeKind { SC, BCC, FCC, Diamond };

std::string to_string(LatticeKind kind);
std::optional<LatticeKind> lattice_kind_from_string(const std::string& name);

/**
 * @brief Real-space Bravais lattice with an atomic basis.
 *
 * Basis offsets are reduced into the centered cell, i.e. their fractional
 * coordinates along a1, a2, a3 lie in [-1/2, 1/2).
 */
class RealLattice {
public:
    /// Throws std::invalid_argument if the primitive vectors are linearly dependent,
    /// non-finite, or the lattice constant is not positive.
    RealLattice(const Vec3& a1, const Vec3& a2, const Vec3& a3, std::vector<Vec3> basis_offsets,
                double lattice_constant, std::optional<LatticeKind> kind = std::nullopt);

    const Vec3& a1() const { return a_[0]; }
    const Vec3& a2() const { return a_[1]; }
    const Vec3& a3() const { return a_[2]; }
    const Vec3& a(int i) const { return a_[static_cast<std::size_t>(i)]; }
    const std::vector<Vec3>& basis_offsets() const { return basis_; }
    double lattice_constant() const { return lattice_constant_; }
    std::optional<LatticeKind> kind() const { return kind_; }

    /// Signed triple product a1·(a2×a3), Å³.
    double triple_product() const;

private:
    std::array<Vec3, 3> a_;
    std::vector<Vec3> basis_;
    double lattice_constant_;
    std::optional<LatticeKind> kind_;
};

/// Catalog cubic lattices. Throws std::invalid_argument for a <= 0.
RealLattice make_cubic(LatticeKind kind, double a);

/// Reciprocal lattice vector G = n g1 + m g2 + l g3.
struct GVector {
    std::array<int, 3> coeff{0, 0, 0};
    Vec3 cart;
    /// |G|² in units of (π/a)², rounded; exact for cubic lattices.
    int shell = 0;
};

class ReciprocalLattice {
public:
    ReciprocalLattice(const Vec3& g1, const Vec3& g2, const Vec3& g3, double omega,
                      double lattice_constant);

    const Vec3& g1() const { return g_[0]; }
    const Vec3& g2() const { return g_[1]; }
    const Vec3& g3() const { return g_[2]; }
    const Vec3& g(int i) const { return g_[static_cast<std::size_t>(i)]; }
    /// Real-space cell volume Ω, Å³.
    double omega() const { return omega_; }
    double lattice_constant() const { return lattice_constant_; }

    Vec3 cartesian(const std::array<int, 3>& coeff) const;
    GVector make_gvector(const std::array<int, 3>& coeff) const;
    /// Shell index n² = |G|² / (π/a)², rounded to the nearest integer.
    int shell_of(double g2) const;

private:
    std::array<Vec3, 3> g_;
    double omega_;
    double lattice_constant_;
};

/// g_i = 2π × columns of [a1ᵀ; a2ᵀ; a3ᵀ]⁻¹, Ω = |det|. Throws std::invalid_argument when singular.
ReciprocalLattice reciprocal_of(const RealLattice& real);

/**
 * @brief All G with |G|² <= g2_max (Å⁻²).
 *
 * Sorted ascending by |G|² with ties broken lexicographically by (n, m, l).
 * The cutoff is inclusive up to a relative slack of 1e-10 so that shells lying
 * exactly on the cutoff are kept.
 */
std::vector<GVector> enumerate_g(const ReciprocalLattice& recip, double g2_max);

/// High-symmetry points of the FCC Brillouin zone, keyed by "Γ", "X", "L", "W", "K", "U".
std::map<std::string, Vec3> fcc_symmetry_points(double a);

struct PathVertex {
    std::string label;
    Vec3 k;
    /// Start a new leg here: no segment joins the previous vertex to this one.
    bool break_before = false;
};

struct PathSegment {
    std::string start_label;
    std::string end_label;
    Vec3 start;
    Vec3 end;
};

struct PathPoint {
    Vec3 kappa;
    double arc_distance = 0.0;
    /// Vertex label, empty for interior samples.
    std::string label;
    /// True for the first sample of a leg that follows a path break.
    bool leg_start = false;
};

class KPath {
public:
    KPath(std::vector<PathSegment> segments, int samples_per_segment,
          std::vector<PathPoint> points)
        : segments_(std::move(segments)),
          samples_per_segment_(samples_per_segment),
          points_(std::move(points)) {}

    const std::vector<PathSegment>& segments() const { return segments_; }
    int samples_per_segment() const { return samples_per_segment_; }
    const std::vector<PathPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

private:
    std::vector<PathSegment> segments_;
    int samples_per_segment_;
    std::vector<PathPoint> points_;
};

/**
 * @brief Piecewise-linear tour through labeled vertices.
 *
 * Each segment is sampled at samples_per_segment points including both
 * endpoints; a vertex shared by two segments appears once. A vertex flagged
 * break_before starts a new leg at the same arc distance.
 */
KPath make_kpath(std::span<const PathVertex> vertices, int samples_per_segment);

/// L → Γ → X → U → Γ through the FCC zone.
std::vector<PathVertex> default_fcc_tour(double a);

}  // namespace pwbands
