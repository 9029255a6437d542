#include "pwbands/output.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "pwbands/potential.hpp"

namespace pwbands {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::runtime_error("bad number in CSV: " + s);
    return x;
}

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

double pi_over_a_squared(double a) {
    const double u = std::numbers::pi / a;
    return u * u;
}

}  // namespace

std::string fixed6(double x) {
    std::string s = fmt::format("{:.6f}", x);
    if (s == "-0.000000") s.erase(0, 1);
    return s;
}

void write_bands_csv(std::ostream& out, const BandStructure& bs) {
    out << "k_index,arc_distance,label";
    for (int n = 1; n <= bs.num_bands; ++n) out << ",E" << n;
    out << '\n';
    const auto& pts = bs.path.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out << i << ',' << fixed6(pts[i].arc_distance) << ',' << pts[i].label;
        for (const double e : bs.energies[i]) out << ',' << fixed6(e);
        out << '\n';
    }
}

BandTable read_bands_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
    const auto header = split_csv_line(line);
    if (header.size() < 4 || header[0] != "k_index" || header[1] != "arc_distance" ||
        header[2] != "label") {
        throw std::runtime_error("unexpected CSV header");
    }
    const std::size_t bands = header.size() - 3;
    for (std::size_t n = 0; n < bands; ++n) {
        if (header[n + 3] != "E" + std::to_string(n + 1)) {
            throw std::runtime_error("unexpected CSV band column " + header[n + 3]);
        }
    }

    BandTable t;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) throw std::runtime_error("ragged CSV row");
        t.k_index.push_back(std::stoi(cells[0]));
        t.arc_distance.push_back(parse_double(cells[1]));
        t.label.push_back(cells[2]);
        std::vector<double> e(bands);
        for (std::size_t n = 0; n < bands; ++n) e[n] = parse_double(cells[n + 3]);
        t.energies.push_back(std::move(e));
    }
    return t;
}

json gaps_to_json(const GapReport& gaps) {
    json arr = json::array();
    for (const auto& g : gaps) {
        arr.push_back({{"below_band", g.below_band},
                       {"gap_bottom", g.gap_bottom},
                       {"gap_top", g.gap_top},
                       {"width", g.width}});
    }
    return arr;
}

GapReport gaps_from_json(const json& j) {
    GapReport gaps;
    for (const auto& g : j) {
        gaps.push_back({g.at("below_band").get<int>(), g.at("gap_bottom").get<double>(),
                        g.at("gap_top").get<double>(), g.at("width").get<double>()});
    }
    return gaps;
}

json bands_to_json(const BandStructure& bs, const GapReport& gaps, const json& config_echo) {
    json segments = json::array();
    for (const auto& s : bs.path.segments()) {
        segments.push_back({{"start_label", s.start_label},
                            {"end_label", s.end_label},
                            {"start", vec_to_json(s.start)},
                            {"end", vec_to_json(s.end)}});
    }
    json points = json::array();
    const auto& pts = bs.path.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        points.push_back({{"k_index", i},
                          {"kappa", vec_to_json(pts[i].kappa)},
                          {"arc_distance", pts[i].arc_distance},
                          {"label", pts[i].label},
                          {"leg_start", pts[i].leg_start},
                          {"energies", bs.energies[i]}});
    }
    return {{"config", config_echo},
            {"num_bands", bs.num_bands},
            {"samples_per_segment", bs.path.samples_per_segment()},
            {"segments", std::move(segments)},
            {"points", std::move(points)},
            {"gaps", gaps_to_json(gaps)}};
}

BandStructure bands_from_json(const json& j) {
    std::vector<PathSegment> segments;
    for (const auto& s : j.at("segments")) {
        segments.push_back({s.at("start_label").get<std::string>(),
                            s.at("end_label").get<std::string>(), vec_from_json(s.at("start")),
                            vec_from_json(s.at("end"))});
    }
    std::vector<PathPoint> points;
    std::vector<std::vector<double>> energies;
    for (const auto& p : j.at("points")) {
        points.push_back({vec_from_json(p.at("kappa")), p.at("arc_distance").get<double>(),
                          p.at("label").get<std::string>(), p.at("leg_start").get<bool>()});
        energies.push_back(p.at("energies").get<std::vector<double>>());
    }
    return BandStructure{
        KPath(std::move(segments), j.at("samples_per_segment").get<int>(), std::move(points)),
        j.at("num_bands").get<int>(), std::move(energies)};
}

void write_gap_table(std::ostream& out, const GapReport& gaps) {
    fmt::print(out, "{:>10} {:>14} {:>14} {:>12}\n", "below_band", "gap_bottom_eV", "gap_top_eV",
               "width_eV");
    for (const auto& g : gaps) {
        fmt::print(out, "{:>10} {:>14} {:>14} {:>12}\n", g.below_band, fixed6(g.gap_bottom),
                   fixed6(g.gap_top), fixed6(g.width));
    }
}

void write_bands_svg(std::ostream& out, const BandStructure& bs, const GapReport& gaps) {
    constexpr double kWidth = 900.0;
    constexpr double kHeight = 600.0;
    constexpr double kLeft = 80.0;
    constexpr double kRight = 20.0;
    constexpr double kTop = 20.0;
    constexpr double kBottom = 50.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    const auto& pts = bs.path.points();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& e : bs.energies) {
        for (const double x : e) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    const double arc_max = pts.empty() ? 1.0 : std::max(pts.back().arc_distance, 1e-300);

    const auto xs = [&](double arc) { return kLeft + plot_w * arc / arc_max; };
    const auto ys = [&](double e) { return kTop + plot_h * (hi - e) / (hi - lo); };

    fmt::print(out,
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"600\" "
               "viewBox=\"0 0 900 600\">\n");
    fmt::print(out, "<rect x=\"0\" y=\"0\" width=\"900\" height=\"600\" fill=\"white\"/>\n");

    for (const auto& g : gaps) {
        fmt::print(out,
                   "<rect class=\"gap\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" "
                   "height=\"{:.2f}\" fill=\"#c8c8c8\"/>\n",
                   kLeft, ys(g.gap_top), plot_w, ys(g.gap_bottom) - ys(g.gap_top));
    }

    // Vertex markers; labels sharing an arc distance (path breaks) are joined with '|'.
    std::vector<std::pair<double, std::string>> ticks;
    for (const auto& p : pts) {
        if (p.label.empty()) continue;
        if (!ticks.empty() && ticks.back().first == p.arc_distance) {
            if (ticks.back().second != p.label) ticks.back().second += "|" + p.label;
        } else {
            ticks.emplace_back(p.arc_distance, p.label);
        }
    }
    for (const auto& [arc, label] : ticks) {
        const double x = xs(arc);
        fmt::print(out,
                   "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                   "stroke=\"#808080\" stroke-width=\"0.5\"/>\n",
                   x, kTop, x, kTop + plot_h);
        fmt::print(out,
                   "<text class=\"vertex\" x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"16\" "
                   "text-anchor=\"middle\">{}</text>\n",
                   x, kTop + plot_h + 22.0, label);
    }

    for (int n = 0; n < bs.num_bands; ++n) {
        std::string poly;
        const auto flush = [&]() {
            if (!poly.empty()) {
                fmt::print(out,
                           "<polyline class=\"band\" fill=\"none\" stroke=\"#1f3a93\" "
                           "stroke-width=\"1.5\" points=\"{}\"/>\n",
                           poly);
            }
            poly.clear();
        };
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i].leg_start) flush();
            if (!poly.empty()) poly += ' ';
            poly += fmt::format("{:.2f},{:.2f}", xs(pts[i].arc_distance),
                                ys(bs.energies[i][static_cast<std::size_t>(n)]));
        }
        flush();
    }

    fmt::print(out,
               "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
               "stroke=\"black\"/>\n",
               kLeft, kTop, plot_w, plot_h);
    constexpr int kTicks = 6;
    for (int t = 0; t < kTicks; ++t) {
        const double e = lo + (hi - lo) * t / (kTicks - 1);
        const double y = ys(e);
        fmt::print(out,
                   "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                   "stroke=\"black\"/>\n",
                   kLeft - 5.0, y, kLeft, y);
        fmt::print(out,
                   "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" "
                   "text-anchor=\"end\">{:.2f}</text>\n",
                   kLeft - 8.0, y + 4.0, e);
    }
    fmt::print(out,
               "<text x=\"20\" y=\"{:.2f}\" font-size=\"14\" text-anchor=\"middle\" "
               "transform=\"rotate(-90 20 {:.2f})\">Energy (eV)</text>\n",
               kTop + plot_h / 2, kTop + plot_h / 2);
    fmt::print(out, "</svg>\n");
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows, double a) {
    const std::size_t bands = rows.empty() ? 0 : rows.front().values.size();
    out << "g2_max,dim";
    for (std::size_t n = 1; n <= bands; ++n) out << ",E" << n;
    out << '\n';
    for (const auto& r : rows) {
        out << fixed6(r.g2_max / pi_over_a_squared(a)) << ',' << r.dim;
        for (const double e : r.values) out << ',' << fixed6(e);
        out << '\n';
    }
}

json convergence_to_json(const std::vector<ConvergenceRow>& rows, double a) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"g2_max", r.g2_max / pi_over_a_squared(a)},
                       {"dim", r.dim},
                       {"values", r.values}});
    }
    return {{"g2_max_units", "(pi/a)^2"}, {"rows", std::move(arr)}};
}

void write_convergence_table(std::ostream& out, const std::vector<ConvergenceRow>& rows, double a) {
    fmt::print(out, "{:>10} {:>6}  {}\n", "g2_max", "dim", "lowest eigenvalues (eV)");
    for (const auto& r : rows) {
        fmt::print(out, "{:>10.3f} {:>6} ", r.g2_max / pi_over_a_squared(a), r.dim);
        for (const double e : r.values) fmt::print(out, " {:>12}", fixed6(e));
        fmt::print(out, "\n");
    }
}

}  // namespace pwbands
