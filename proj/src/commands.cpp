#include "pwbands/commands.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "pwbands/bands.hpp"
#include "pwbands/config.hpp"
#include "pwbands/eigen.hpp"
#include "pwbands/output.hpp"

namespace pwbands {

namespace {

namespace fs = std::filesystem;

class OutputDir {
public:
    explicit OutputDir(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    template <class Writer>
    void write(const char* name, Writer&& writer) const {
        const fs::path file = dir_ / name;
        std::ofstream os(file, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + file.string());
        writer(os);
    }

private:
    fs::path dir_;
};

void print_vec(std::ostream& out, const char* name, const Vec3& v) {
    fmt::print(out, "  {} = ({:.6f}, {:.6f}, {:.6f})\n", name, v.x, v.y, v.z);
}

int cmd_bands(const RunConfig& cfg, const OutputDir& dir, std::ostream& out) {
    const RealLattice lattice = make_lattice(cfg);
    const ReciprocalLattice recip = reciprocal_of(lattice);
    const KPath path = make_path(cfg);
    const BandStructure bs = sweep(path, make_model(cfg), lattice, recip,
                                   absolute_g2_max(cfg, cfg.g2_max), cfg.output.num_bands);
    const GapReport gaps = detect_gaps(bs);

    if (wants(cfg, OutputFormat::Csv)) {
        dir.write("bands.csv", [&](std::ostream& os) { write_bands_csv(os, bs); });
    }
    if (wants(cfg, OutputFormat::Json)) {
        dir.write("bands.json",
                  [&](std::ostream& os) { os << bands_to_json(bs, gaps, cfg.source).dump(2) << '\n'; });
    }
    if (wants(cfg, OutputFormat::Svg)) {
        dir.write("bands.svg", [&](std::ostream& os) { write_bands_svg(os, bs, gaps); });
    }
    fmt::print(out, "{} path points, {} bands, {} path gap(s)\n", bs.path.size(), bs.num_bands,
               gaps.size());
    return kExitOk;
}

int cmd_gaps(const RunConfig& cfg, const OutputDir& dir, std::ostream& out) {
    const RealLattice lattice = make_lattice(cfg);
    const ReciprocalLattice recip = reciprocal_of(lattice);
    const BandStructure bs = sweep(make_path(cfg), make_model(cfg), lattice, recip,
                                   absolute_g2_max(cfg, cfg.g2_max), cfg.output.num_bands);
    const GapReport gaps = detect_gaps(bs);
    write_gap_table(out, gaps);
    dir.write("gaps.json", [&](std::ostream& os) {
        const nlohmann::json doc = {{"config", cfg.source}, {"gaps", gaps_to_json(gaps)}};
        os << doc.dump(2) << '\n';
    });
    return kExitOk;
}

int cmd_converge(const RunConfig& cfg, const OutputDir& dir, std::ostream& out) {
    if (cfg.converge.cutoffs.empty()) throw ConfigError("converge.cutoffs", "missing or empty");
    const RealLattice lattice = make_lattice(cfg);
    const ReciprocalLattice recip = reciprocal_of(lattice);
    std::vector<double> cutoffs;
    for (const double c : cfg.converge.cutoffs) cutoffs.push_back(absolute_g2_max(cfg, c));
    const Vec3 kappa = resolve_label(cfg, cfg.converge.kpoint)->k;

    const auto rows = convergence_study(kappa, make_model(cfg), lattice, recip, cutoffs,
                                        cfg.output.num_bands);
    const double a = cfg.lattice.a;
    write_convergence_table(out, rows, a);
    if (wants(cfg, OutputFormat::Csv)) {
        dir.write("converge.csv", [&](std::ostream& os) { write_convergence_csv(os, rows, a); });
    }
    if (wants(cfg, OutputFormat::Json)) {
        dir.write("converge.json", [&](std::ostream& os) {
            nlohmann::json doc = convergence_to_json(rows, a);
            doc["config"] = cfg.source;
            os << doc.dump(2) << '\n';
        });
    }
    return kExitOk;
}

int cmd_info(const RunConfig& cfg, std::ostream& out) {
    const RealLattice lattice = make_lattice(cfg);
    const ReciprocalLattice recip = reciprocal_of(lattice);
    const double g2_max = absolute_g2_max(cfg, cfg.g2_max);
    const auto basis = enumerate_g(recip, g2_max);

    fmt::print(out, "lattice {} a = {:.6f} Å\n", to_string(cfg.lattice.kind), cfg.lattice.a);
    fmt::print(out, "primitive vectors (Å):\n");
    print_vec(out, "a1", lattice.a1());
    print_vec(out, "a2", lattice.a2());
    print_vec(out, "a3", lattice.a3());
    fmt::print(out, "basis offsets (Å):\n");
    for (std::size_t i = 0; i < lattice.basis_offsets().size(); ++i) {
        print_vec(out, fmt::format("tau{}", i + 1).c_str(), lattice.basis_offsets()[i]);
    }
    fmt::print(out, "reciprocal vectors (1/Å):\n");
    print_vec(out, "g1", recip.g1());
    print_vec(out, "g2", recip.g2());
    print_vec(out, "g3", recip.g3());
    fmt::print(out, "omega = {:.6f} Å^3\n", recip.omega());
    fmt::print(out, "basis size = {} plane waves at g2_max = {} (pi/a)^2\n", basis.size(),
               cfg.g2_max);
    return kExitOk;
}

}  // namespace

int run_command(Command cmd, const fs::path& config_file, const std::optional<fs::path>& out_dir,
                std::ostream& out, std::ostream& err) {
    try {
        RunConfig cfg = load_config(config_file);
        if (out_dir) cfg.output.directory = *out_dir;
        if (cmd == Command::Info) return cmd_info(cfg, out);
        const OutputDir dir(cfg.output.directory);
        switch (cmd) {
            case Command::Bands: return cmd_bands(cfg, dir, out);
            case Command::Gaps: return cmd_gaps(cfg, dir, out);
            case Command::Converge: return cmd_converge(cfg, dir, out);
            case Command::Info: break;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        fmt::print(err, "config error: {}\n", e.what());
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        fmt::print(err, "config error: {}\n", e.what());
        return kExitConfigError;
    } catch (const SweepError& e) {
        fmt::print(err, "numerical failure: {}\n", e.what());
        return kExitNumericalError;
    } catch (const EigenError& e) {
        fmt::print(err, "numerical failure: {}\n", e.what());
        return kExitNumericalError;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitNumericalError;
    }
}

}  // namespace pwbands
