#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pwbands/lattice.hpp"
#include "pwbands/potential.hpp"

namespace pwbands {

/// Malformed or out-of-range configuration; key() names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const { return key_; }

private:
    std::string key_;
};

enum class OutputFormat { Csv, Json, Svg };

struct RunConfig {
    struct Lattice {
        LatticeKind kind = LatticeKind::Diamond;
        double a = 0.0;  ///< Å
    } lattice;

    struct Potential {
        std::string model = "coulomb";  ///< coulomb | yukawa | empirical
        std::string base_model = "coulomb";
        double z_eff = 0.0;
        double mu = 0.0;  ///< Å⁻¹
        std::map<int, double> overrides;
        OverrideMode override_mode = OverrideMode::Element;
    } potential;

    /// Basis cutoff in units of (π/a)².
    double g2_max = 76.0;

    struct Path {
        /// Labels in tour order; "U|K" jumps from U to K without a segment.
        std::vector<std::string> points;
        /// Extra or overriding label coordinates, in units of 2π/a.
        std::map<std::string, Vec3> coordinates;
        int samples_per_segment = 50;
    } path;

    struct Output {
        int num_bands = 8;
        std::vector<OutputFormat> formats{OutputFormat::Csv, OutputFormat::Json, OutputFormat::Svg};
        std::filesystem::path directory = ".";
    } output;

    struct Converge {
        std::vector<double> cutoffs;  ///< units of (π/a)²
        std::string kpoint = "Γ";
    } converge;

    /// The parsed document, echoed into JSON artifacts.
    nlohmann::json source;
};

/// Throws ConfigError naming the offending key.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& file);

bool wants(const RunConfig& cfg, OutputFormat format);

RealLattice make_lattice(const RunConfig& cfg);
PotentialModel make_model(const RunConfig& cfg);
/// Cutoff in Å⁻².
double absolute_g2_max(const RunConfig& cfg, double units_of_pi_over_a2);
/// Resolves a label from path.coordinates, then the FCC table ("G" and "Gamma" alias "Γ").
std::optional<PathVertex> resolve_label(const RunConfig& cfg, const std::string& label);
KPath make_path(const RunConfig& cfg);

}  // namespace pwbands
