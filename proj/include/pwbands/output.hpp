#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pwbands/bands.hpp"

namespace pwbands {

/// Fixed six-decimal rendering with "-0.000000" folded to "0.000000".
std::string fixed6(double x);

/// Header `k_index,arc_distance,label,E1..En`, one row per path point.
void write_bands_csv(std::ostream& out, const BandStructure& bs);

struct BandTable {
    std::vector<int> k_index;
    std::vector<double> arc_distance;
    std::vector<std::string> label;
    std::vector<std::vector<double>> energies;
};

/// Throws std::runtime_error on a malformed table.
BandTable read_bands_csv(std::istream& in);

nlohmann::json gaps_to_json(const GapReport& gaps);
GapReport gaps_from_json(const nlohmann::json& j);

/// Band data, gap report and the echoed configuration.
nlohmann::json bands_to_json(const BandStructure& bs, const GapReport& gaps,
                             const nlohmann::json& config_echo);
BandStructure bands_from_json(const nlohmann::json& j);

/// Plain-text gap table, one row per gap.
void write_gap_table(std::ostream& out, const GapReport& gaps);

/**
 * @brief Band diagram as a 900×600 SVG.
 *
 * Gray rectangles cover each path gap across the plot width; vertex labels sit
 * at their arc distance. Numbers are printed at fixed precision so output is
 * byte-stable for identical input.
 */
void write_bands_svg(std::ostream& out, const BandStructure& bs, const GapReport& gaps);

/// Cutoffs are reported in units of (π/a)², hence the lattice constant.
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows, double a);
nlohmann::json convergence_to_json(const std::vector<ConvergenceRow>& rows, double a);
void write_convergence_table(std::ostream& out, const std::vector<ConvergenceRow>& rows, double a);

}  // namespace pwbands
