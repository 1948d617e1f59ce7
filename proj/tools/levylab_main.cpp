#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "levylab/errors.hpp"
#include "levylab/experiments.hpp"
#include "levylab/levy_json.hpp"

namespace {

using levylab::ExperimentReport;
using levylab::RunContext;
using nlohmann::json;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::string out_dir = ".";
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "JSON experiment configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", args.seed, "override the config base seed");
    sub->add_option("--threads", args.threads, "worker threads (never affects results)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", args.out_dir, "output directory");
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    json j;
    in >> j;
    if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
    return j;
}

void require_known_keys(const json& cfg, std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : cfg.items()) {
        bool known = false;
        for (const char* k : keys) {
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known) throw std::invalid_argument("config: unknown key \"" + key + "\"");
    }
}

RunContext make_context(const json& cfg, const CommonArgs& args) {
    RunContext ctx;
    ctx.base_seed = args.seed ? *args.seed : cfg.value("base_seed", std::uint64_t{12345});
    ctx.threads = args.threads;
    ctx.out_dir = args.out_dir;
    std::filesystem::create_directories(ctx.out_dir);
    return ctx;
}

int run_and_write(const std::string& name, const json& cfg, const CommonArgs& args,
                  const std::function<ExperimentReport(const RunContext&)>& runner) {
    const RunContext ctx = make_context(cfg, args);
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report = runner(ctx);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json echo = cfg;
    echo["base_seed"] = ctx.base_seed;
    report.experiment = name;
    report.config_echo = echo.dump();

    std::ofstream out(ctx.out_dir + "/report.json", std::ios::binary);
    out << levylab::report_to_json(report, wall);
    std::cout << "wrote " << ctx.out_dir << "/report.json (" << name << ", "
              << report.estimates.size() << " estimates)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo and closed-form cross-checks for Levy exponential "
                 "functionals, Riccati/Lyapunov curves and Brownian winding statistics"};
    app.require_subcommand(1);

    CommonArgs spitzer_args, sectors_args, dufresne_args, riccati_args, lyapunov_args,
        moments_args, deficit_args;
    auto* spitzer = app.add_subcommand("spitzer", "winding-angle law of planar Brownian motion");
    add_common(spitzer, spitzer_args);
    auto* sectors = app.add_subcommand("sectors", "winding-sector areas of the Brownian bridge");
    add_common(sectors, sectors_args);
    auto* dufresne = app.add_subcommand("dufresne", "exponential functional of drifted Brownian motion");
    add_common(dufresne, dufresne_args);
    auto* riccati = app.add_subcommand("riccati-density", "stationary Riccati law vs closed form");
    add_common(riccati, riccati_args);
    auto* lyapunov = app.add_subcommand("lyapunov-curve", "Lyapunov exponent: three-way comparison");
    add_common(lyapunov, lyapunov_args);
    auto* moments = app.add_subcommand("moments-check", "exponentially killed moments vs recursion");
    add_common(moments, moments_args);
    auto* deficit = app.add_subcommand("deficit", "partition-function deficit partial sums");
    add_common(deficit, deficit_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (spitzer->parsed()) {
            const json cfg = load_config(spitzer_args.config_path);
            require_known_keys(cfg, {"t_values", "replicas", "r0", "eps", "r_star_values",
                                     "floor_radius", "hill_k_frac", "base_seed"});
            levylab::SpitzerConfig c;
            c.t_values = cfg.value("t_values", c.t_values);
            c.replicas = cfg.value("replicas", c.replicas);
            c.r0 = cfg.value("r0", c.r0);
            c.eps = cfg.value("eps", c.eps);
            c.r_star_values = cfg.value("r_star_values", c.r_star_values);
            c.floor_radius = cfg.value("floor_radius", c.floor_radius);
            c.hill_k_frac = cfg.value("hill_k_frac", c.hill_k_frac);
            return run_and_write("spitzer", cfg, spitzer_args,
                                 [&](const RunContext& ctx) { return run_spitzer(c, ctx); });
        }
        if (sectors->parsed()) {
            const json cfg = load_config(sectors_args.config_path);
            require_known_keys(cfg, {"t", "n_steps", "resolution", "replicas", "n_max",
                                     "dump_fields", "base_seed"});
            levylab::SectorsConfig c;
            c.t = cfg.value("t", c.t);
            c.n_steps = cfg.value("n_steps", c.n_steps);
            c.resolution = cfg.value("resolution", c.resolution);
            c.replicas = cfg.value("replicas", c.replicas);
            c.n_max = cfg.value("n_max", c.n_max);
            c.dump_fields = cfg.value("dump_fields", c.dump_fields);
            return run_and_write("sectors", cfg, sectors_args,
                                 [&](const RunContext& ctx) { return run_sectors(c, ctx); });
        }
        if (dufresne->parsed()) {
            const json cfg = load_config(dufresne_args.config_path);
            require_known_keys(cfg, {"mu", "horizon", "dx", "replicas", "bins", "base_seed"});
            levylab::DufresneConfig c;
            c.mu = cfg.value("mu", c.mu);
            c.horizon = cfg.value("horizon", c.horizon);
            c.dx = cfg.value("dx", c.dx);
            c.replicas = cfg.value("replicas", c.replicas);
            c.bins = cfg.value("bins", c.bins);
            return run_and_write("dufresne", cfg, dufresne_args,
                                 [&](const RunContext& ctx) { return run_dufresne(c, ctx); });
        }
        if (riccati->parsed()) {
            const json cfg = load_config(riccati_args.config_path);
            require_known_keys(cfg, {"spec", "k", "burn_in", "dx", "replicas", "bins",
                                     "curve_points", "base_seed"});
            levylab::RiccatiDensityConfig c;
            if (cfg.contains("spec")) c.spec = levylab::spec_from_json(cfg.at("spec"));
            c.k = cfg.value("k", c.k);
            c.burn_in = cfg.value("burn_in", c.burn_in);
            c.dx = cfg.value("dx", c.dx);
            c.replicas = cfg.value("replicas", c.replicas);
            c.bins = cfg.value("bins", c.bins);
            c.curve_points = cfg.value("curve_points", c.curve_points);
            return run_and_write("riccati-density", cfg, riccati_args,
                                 [&](const RunContext& ctx) { return run_riccati_density(c, ctx); });
        }
        if (lyapunov->parsed()) {
            const json cfg = load_config(lyapunov_args.config_path);
            require_known_keys(cfg, {"spec", "k_values", "burn_in", "dx", "replicas", "cf_tol",
                                     "base_seed"});
            levylab::LyapunovCurveConfig c;
            if (cfg.contains("spec")) c.spec = levylab::spec_from_json(cfg.at("spec"));
            c.k_values = cfg.value("k_values", c.k_values);
            c.burn_in = cfg.value("burn_in", c.burn_in);
            c.dx = cfg.value("dx", c.dx);
            c.replicas = cfg.value("replicas", c.replicas);
            c.cf_tol = cfg.value("cf_tol", c.cf_tol);
            return run_and_write("lyapunov-curve", cfg, lyapunov_args,
                                 [&](const RunContext& ctx) { return run_lyapunov_curve(c, ctx); });
        }
        if (moments->parsed()) {
            const json cfg = load_config(moments_args.config_path);
            require_known_keys(cfg, {"spec", "lambda", "s_max", "dx", "replicas", "base_seed"});
            levylab::MomentsCheckConfig c;
            if (cfg.contains("spec")) c.spec = levylab::spec_from_json(cfg.at("spec"));
            c.lambda = cfg.value("lambda", c.lambda);
            c.s_max = cfg.value("s_max", c.s_max);
            c.dx = cfg.value("dx", c.dx);
            c.replicas = cfg.value("replicas", c.replicas);
            return run_and_write("moments-check", cfg, moments_args,
                                 [&](const RunContext& ctx) { return run_moments_check(c, ctx); });
        }
        if (deficit->parsed()) {
            const json cfg = load_config(deficit_args.config_path);
            require_known_keys(cfg, {"alphas", "n_max", "base_seed"});
            levylab::DeficitConfig c;
            c.alphas = cfg.value("alphas", c.alphas);
            c.n_max = cfg.value("n_max", c.n_max);
            return run_and_write("deficit", cfg, deficit_args,
                                 [&](const RunContext& ctx) { return run_deficit(c, ctx); });
        }
    } catch (const levylab::numeric_error& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "numeric"}}.dump() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "config"}}.dump() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "config"}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
        return 1;
    }
    return 0;
}
