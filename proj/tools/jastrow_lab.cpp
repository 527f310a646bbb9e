// jastrow-lab: build, verify and sample 1D near-neighbor models with
// Jastrow-like ground states. Subcommands:
//   verify --config cfg.json   eigenfunction residual + symmetry + gate report
//   grid   --config cfg.json   V/psi surfaces and V2/chi profiles as CSV
//   sample --config cfg.json   Metropolis sampling + spacing statistics
// Exit codes: 0 success, 1 check/gate failure, 2 usage or config parse error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jastrow/gridscan.hpp"
#include "jastrow/sampler.hpp"
#include "jastrow/serialize.hpp"
#include "jastrow/tolerances.hpp"
#include "jastrow/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace jastrow;

namespace {

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "json";
    std::optional<std::uint64_t> seed;
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_config(const Options& opt, const char* command) {
    std::ifstream in(opt.config_path);
    if (!in) throw config_error("cannot open config file: " + opt.config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    int blocks = 0;
    for (const char* name : {"verify", "grid", "sample"})
        if (cfg.contains(name)) ++blocks;
    if (blocks != 1)
        throw config_error("config must contain exactly one command block (verify|grid|sample)");
    if (!cfg.contains(command))
        throw config_error(std::string("config has no \"") + command +
                           "\" block matching the subcommand");
    if (!cfg.contains("model")) throw config_error("config has no \"model\" object");
    return cfg;
}

std::string csv_row(const std::vector<double>& vals) {
    std::string row;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) row += ',';
        row += io::format_double(vals[i]);
    }
    row += '\n';
    return row;
}

int cmd_verify(const Options& opt) {
    const json cfg = load_config(opt, "verify");
    const ModelSpec spec = io::model_from_json(cfg.at("model"));
    const json& block = cfg.at("verify");
    const int n_points = block.value("n_points", 20);
    const double h = block.value("h", tol::fd_step);
    const std::uint64_t seed = opt.seed.value_or(block.value("seed", std::uint64_t{1234}));
    const int grid_size = block.value("grid_size", 64);

    const auto residual = verify::residual_energy(spec, n_points, seed, h);
    const auto symmetry = verify::check_symmetries(spec, grid_size, seed + 1);

    bool residual_ok = residual.spread < tol::residual_spread;
    if (residual.closed_form_energy) {
        const double e = *residual.closed_form_energy;
        residual_ok = residual_ok &&
                      std::abs(residual.mean_energy - e) <= tol::residual_mean_rel * (1.0 + std::abs(e));
    }

    json report;
    report["model"] = io::model_to_json(spec);
    report["residual"] = io::to_json(residual);
    report["symmetries"] = io::to_json(symmetry);
    bool gate_ok = true;
    if (spec.geometry == Geometry::Line) {
        const auto gate = verify::check_normalizability(spec);
        report["normalizability"] = io::to_json(gate);
        gate_ok = gate.pass;
    } else {
        report["normalizability"] = "not applicable (circle models are normalizable)";
    }
    const bool pass = residual_ok && symmetry.all_pass && gate_ok;
    report["pass"] = pass;

    const fs::path out = fs::path(opt.out_dir) / "verify_report.json";
    io::write_text_atomic(out, report.dump(2) + "\n");
    if (opt.format == "csv") {
        std::string csv = "check,value,pass\n";
        csv += "residual_spread," + io::format_double(residual.spread) + "," +
               (residual_ok ? "1" : "0") + "\n";
        for (const auto& c : symmetry.checks)
            csv += c.name + "," + io::format_double(c.max_violation) + "," + (c.pass ? "1" : "0") +
                   "\n";
        csv += std::string("normalizability,,") + (gate_ok ? "1" : "0") + "\n";
        io::write_text_atomic(fs::path(opt.out_dir) / "verify_report.csv", csv);
    }

    std::printf("residual: spread %.3e mean %.12g%s -> %s\n", residual.spread,
                residual.mean_energy,
                residual.closed_form_energy
                    ? (" (closed form " + io::format_double(*residual.closed_form_energy) + ")").c_str()
                    : "",
                residual_ok ? "ok" : "FAIL");
    for (const auto& c : symmetry.checks)
        std::printf("symmetry %-14s max violation %.3e -> %s\n", c.name.c_str(), c.max_violation,
                    c.pass ? "ok" : "FAIL");
    std::printf("normalizability gate -> %s\n", gate_ok ? "ok" : "FAIL");
    std::printf("report: %s\n", out.string().c_str());
    return pass ? 0 : 1;
}

int cmd_grid(const Options& opt) {
    const json cfg = load_config(opt, "grid");
    const ModelSpec spec = io::model_from_json(cfg.at("model"));
    const json& block = cfg.at("grid");
    const std::string mode = block.value("mode", "surface");
    const bool circle = spec.geometry == Geometry::Circle;
    const double l = spec.circumference;

    if (mode == "surface") {
        if (spec.n != 3) throw config_error("grid surface mode requires n = 3");
        const double lo = block.value("u_min", circle ? 0.02 * l : 0.05);
        const double hi = block.value("u_max", circle ? 0.90 * l : 3.0);
        const double vlo = block.value("v_min", lo), vhi = block.value("v_max", hi);
        const int points = block.value("points", 80);
        const auto surf = relative_surface(spec, lo, hi, points, vlo, vhi, points);
        std::string csv = "u,v,V,psi\n";
        for (const auto& p : surf) csv += csv_row({p.u, p.v, p.potential, p.psi});
        const fs::path out = fs::path(opt.out_dir) / "grid_surface.csv";
        io::write_text_atomic(out, csv);
        std::printf("wrote %zu surface points to %s\n", surf.size(), out.string().c_str());
        return 0;
    }
    if (mode == "profile") {
        const double lo = block.value("x_min", circle ? 0.02 * l : 0.1);
        const double hi = block.value("x_max", circle ? 0.50 * l : 3.0);
        const int points = block.value("points", 200);
        const auto prof = pair_profile(spec, lo, hi, points);
        std::string csv = "x,V2,chi\n";
        for (const auto& p : prof) csv += csv_row({p.x, p.v2, p.chi});
        const fs::path out = fs::path(opt.out_dir) / "grid_profile.csv";
        io::write_text_atomic(out, csv);
        std::printf("wrote %d profile points to %s\n", points, out.string().c_str());
        return 0;
    }
    throw config_error("grid mode must be \"surface\" or \"profile\"");
}

int cmd_sample(const Options& opt) {
    const json cfg = load_config(opt, "sample");
    const ModelSpec spec = io::model_from_json(cfg.at("model"));
    const json& block = cfg.at("sample");
    const long n_samples = block.at("n_samples").get<long>();
    const std::uint64_t seed = opt.seed.value_or(block.value("seed", std::uint64_t{2024}));

    mc::ChainParams params = mc::default_chain_params(spec, n_samples, seed);
    if (block.contains("thinning")) params.thinning = block.at("thinning").get<int>();
    if (block.contains("step_scale")) params.step_scale = block.at("step_scale").get<double>();
    if (block.contains("burn_in")) params.burn_in = block.at("burn_in").get<long>();
    params.n_steps = params.burn_in + n_samples * params.thinning;
    if (params.burn_in < params.n_steps / 10)
        std::fprintf(stderr, "warning: burn-in (%ld) is below 10%% of the run (%ld sweeps)\n",
                     params.burn_in, params.n_steps);

    const auto result = mc::sample(spec, params);
    const int n_bins = block.value("n_bins", 32);
    const auto hist = mc::spacing_histogram(spec, result.samples, n_bins);

    std::string samples_csv;
    for (int i = 0; i < spec.n; ++i)
        samples_csv += std::string(i ? "," : "") + "x" + std::to_string(i + 1);
    samples_csv += '\n';
    for (const auto& s : result.samples) samples_csv += csv_row(s.x);
    io::write_text_atomic(fs::path(opt.out_dir) / "samples.csv", samples_csv);

    std::string hist_csv = "bin_left,bin_right,density,wigner_1,wigner_2,wigner_4,poisson\n";
    for (std::size_t i = 0; i < hist.densities.size(); ++i) {
        const double mid = 0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1]);
        const std::vector<double> grid{mid};
        hist_csv += csv_row({hist.bin_edges[i], hist.bin_edges[i + 1], hist.densities[i],
                             mc::reference_curve(mc::ReferenceKind::WignerSurmise, 1, grid)[0],
                             mc::reference_curve(mc::ReferenceKind::WignerSurmise, 2, grid)[0],
                             mc::reference_curve(mc::ReferenceKind::WignerSurmise, 4, grid)[0],
                             mc::reference_curve(mc::ReferenceKind::Poisson, 0, grid)[0]});
    }
    io::write_text_atomic(fs::path(opt.out_dir) / "spacings.csv", hist_csv);

    json summary;
    summary["model"] = io::model_to_json(spec);
    summary["seed"] = params.seed;
    summary["n_steps"] = params.n_steps;
    summary["burn_in"] = params.burn_in;
    summary["thinning"] = params.thinning;
    summary["step_scale"] = params.step_scale;
    summary["n_samples"] = result.samples.size();
    summary["acceptance_rate"] = result.acceptance_rate;
    summary["spacings"] = {{"n", hist.n_samples},
                           {"mean_raw", hist.mean_spacing_raw},
                           {"l1_wigner_1", mc::l1_distance(hist, mc::ReferenceKind::WignerSurmise, 1)},
                           {"l1_wigner_2", mc::l1_distance(hist, mc::ReferenceKind::WignerSurmise, 2)},
                           {"l1_wigner_4", mc::l1_distance(hist, mc::ReferenceKind::WignerSurmise, 4)},
                           {"l1_poisson", mc::l1_distance(hist, mc::ReferenceKind::Poisson)}};
    io::write_text_atomic(fs::path(opt.out_dir) / "summary.json", summary.dump(2) + "\n");

    std::printf("%zu samples, acceptance %.3f; outputs in %s\n", result.samples.size(),
                result.acceptance_rate, opt.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"jastrow-lab: near-neighbor models with Jastrow-like ground states"};
    app.require_subcommand(1);

    Options opt;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON run configuration")->required();
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--format", opt.format, "report format: json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        std::uint64_t s;
        sub->add_option_function<std::uint64_t>(
            "--seed", [&opt](const std::uint64_t& v) { opt.seed = v; }, "seed override");
        (void)s;
    };
    auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    auto* grid_cmd = app.add_subcommand("grid", "export potential/wavefunction grids");
    auto* sample_cmd = app.add_subcommand("sample", "run the Metropolis sampler");
    add_common(verify_cmd);
    add_common(grid_cmd);
    add_common(sample_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify_cmd->parsed()) return cmd_verify(opt);
        if (grid_cmd->parsed()) return cmd_grid(opt);
        return cmd_sample(opt);
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
