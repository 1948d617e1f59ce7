#include "levylab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <json.hpp>

#include "levylab/csv.hpp"
#include "levylab/densities.hpp"
#include "levylab/errors.hpp"
#include "levylab/expfunc.hpp"
#include "levylab/moments.hpp"
#include "levylab/parallel.hpp"
#include "levylab/winding.hpp"

namespace levylab {

using nlohmann::json;

#ifndef LEVYLAB_GIT_REV
#define LEVYLAB_GIT_REV "unknown"
#endif

const char* version_string() { return "levylab 0.1.0+g" LEVYLAB_GIT_REV; }

namespace {

std::string out_path(const RunContext& ctx, const std::string& name) {
    return ctx.out_dir + "/" + name;
}

void write_histogram_csv(const RunContext& ctx, const std::string& name, const Histogram& hist,
                         const std::function<double(double)>& cdf) {
    if (ctx.out_dir.empty()) return;
    CsvWriter csv(out_path(ctx, name), {"bin_lo", "bin_hi", "count", "model_mass"});
    double f_prev = cdf(hist.lo);
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        const double f = cdf(hist.edge(i + 1));
        csv.row({format_double(hist.edge(i)), format_double(hist.edge(i + 1)),
                 std::to_string(hist.counts[i]), format_double(f - f_prev)});
        f_prev = f;
    }
}

// Closed-form stationary density matched to a spec, or an explanation of
// why none exists.
StationaryDensity density_for_spec(const LevySpec& spec, double k) {
    if (spec.sigma2() > 0.0 && !spec.jumps())
        return StationaryDensity::example1(spec.a(), spec.sigma2(), k);
    if (spec.sigma2() == 0.0 && spec.jumps())
        return StationaryDensity::example2(spec.drift(), spec.jumps()->p, spec.jumps()->q, k);
    throw std::invalid_argument(
        "no closed-form stationary density for this spec (need pure Brownian or pure jump)");
}

} // namespace

ExperimentReport run_dufresne(const DufresneConfig& cfg, const RunContext& ctx) {
    if (!(cfg.mu > 0.0)) throw std::invalid_argument("dufresne: mu must be > 0");
    if (cfg.replicas < 2) throw std::invalid_argument("dufresne: replicas must be >= 2");
    if (!(cfg.dx > 0.0)) throw std::invalid_argument("dufresne: dx must be > 0");
    const double horizon = cfg.horizon > 0.0 ? cfg.horizon : dufresne_default_horizon(cfg.mu);

    std::vector<double> samples(cfg.replicas);
    parallel_for(cfg.replicas, ctx.threads, [&](std::uint64_t i) {
        samples[i] = sample_dufresne(cfg.mu, horizon, cfg.dx, derive_stream_seed(ctx.base_seed, i));
    });

    const MeanSe ms = mean_with_se(samples);
    const auto cdf = [&](double x) { return gamma_reciprocal_cdf(cfg.mu, x); };
    const double ks = ks_statistic(samples, cdf);

    // histogram out to the 0.9995 reference quantile
    double hi = 1.0;
    while (cdf(hi) < 0.9995) hi *= 2.0;
    const Histogram hist = make_histogram(samples, cfg.bins, 0.0, hi);

    ExperimentReport report;
    report.experiment = "dufresne";
    report.base_seed = ctx.base_seed;
    report.replicas = cfg.replicas;
    report.estimates["mean"] = {ms.mean, ms.se, cfg.replicas};
    const double c1 = c_function(LevySpec::make(cfg.mu, 1.0), 1.0); // mu - 1/2
    if (c1 > 0.0) {
        report.estimates["mean_recursion"] = {1.0 / c1, 0.0, 0};
    } else {
        report.notes.push_back("first moment of the limit law diverges (mu <= 1/2)");
    }
    report.gof["ks_vs_2_over_gamma"] = ks;
    report.gof["l1_hist"] = l1_density_distance(hist, cdf);

    write_histogram_csv(ctx, "dufresne_hist.csv", hist, cdf);
    return report;
}

ExperimentReport run_riccati_density(const RiccatiDensityConfig& cfg, const RunContext& ctx) {
    if (!(cfg.k >= 0.0)) throw std::invalid_argument("riccati-density: k must be >= 0");
    if (cfg.replicas < 2) throw std::invalid_argument("riccati-density: replicas must be >= 2");
    const StationaryDensity density = density_for_spec(cfg.spec, cfg.k);
    const double burn_in = cfg.burn_in > 0.0 ? cfg.burn_in : default_burn_in(cfg.spec, cfg.k);

    std::vector<double> samples(cfg.replicas);
    parallel_for(cfg.replicas, ctx.threads, [&](std::uint64_t i) {
        samples[i] = sample_stationary_riccati(cfg.spec, cfg.k, burn_in, cfg.dx,
                                               derive_stream_seed(ctx.base_seed, i))
                         .value;
    });

    const MeanSe ms = mean_with_se(samples);
    const auto cdf = [&](double z) { return density.cdf(z); };
    const double ks = ks_statistic(samples, cdf);

    double z_hi = density.support_max();
    if (!std::isfinite(z_hi)) {
        z_hi = 1.0;
        while (density.cdf(z_hi) < 0.9995) z_hi *= 2.0;
    }
    const Histogram hist = make_histogram(samples, cfg.bins, 0.0, z_hi);
    const double l1 = l1_density_distance(hist, cdf);

    double in_support = 0.0;
    for (double z : samples) {
        if (z > 0.0 && z <= density.support_max()) in_support += 1.0;
    }

    ExperimentReport report;
    report.experiment = "riccati-density";
    report.base_seed = ctx.base_seed;
    report.replicas = cfg.replicas;
    report.estimates["mean_mc"] = {ms.mean, ms.se, cfg.replicas};
    report.estimates["mean_quadrature"] = {density.mean(), 0.0, 0};
    report.estimates["in_support_fraction"] = {in_support / static_cast<double>(cfg.replicas), 0.0,
                                               cfg.replicas};
    report.gof["l1_hist"] = l1;
    report.gof["ks_vs_closed_form"] = ks;

    if (!ctx.out_dir.empty()) {
        write_histogram_csv(ctx, "riccati_hist.csv", hist, cdf);
        CsvWriter curve(out_path(ctx, "density_curve.csv"), {"z", "pdf", "cdf"});
        for (int i = 1; i <= cfg.curve_points; ++i) {
            const double z = z_hi * i / (cfg.curve_points + 1);
            curve.row({format_double(z), format_double(density.pdf(z)),
                       format_double(density.cdf(z))});
        }
    }
    return report;
}

ExperimentReport run_lyapunov_curve(const LyapunovCurveConfig& cfg, const RunContext& ctx) {
    if (!is_subordinator(cfg.spec))
        throw std::invalid_argument("lyapunov-curve: spec must be a subordinator");
    if (cfg.k_values.empty()) throw std::invalid_argument("lyapunov-curve: empty k grid");
    for (double k : cfg.k_values)
        if (!(k > 0.0)) throw std::invalid_argument("lyapunov-curve: k values must be > 0");

    ExperimentReport report;
    report.experiment = "lyapunov-curve";
    report.base_seed = ctx.base_seed;
    report.replicas = cfg.replicas;

    std::optional<CsvWriter> csv;
    if (!ctx.out_dir.empty())
        csv.emplace(out_path(ctx, "lyapunov_curve.csv"),
                    std::vector<std::string>{"E", "omega_cf", "omega_quadrature", "omega_mc", "mc_se"});

    double max_cf_quad_gap = 0.0;
    std::uint64_t seed_block = 0;
    for (double k : cfg.k_values) {
        const LyapunovResult cf = continued_fraction_omega(cfg.spec, k, cfg.cf_tol);
        const StationaryDensity density = density_for_spec(cfg.spec, k);
        const LyapunovResult quad =
            omega_from_mean(cfg.spec, k, density.mean(), LyapunovMethod::quadrature);

        const double burn_in = cfg.burn_in > 0.0 ? cfg.burn_in : default_burn_in(cfg.spec, k);
        std::vector<double> z(cfg.replicas);
        const std::uint64_t block = seed_block;
        parallel_for(cfg.replicas, ctx.threads, [&](std::uint64_t i) {
            z[i] = sample_stationary_riccati(cfg.spec, k, burn_in, cfg.dx,
                                             derive_stream_seed(ctx.base_seed, block + i))
                       .value;
        });
        seed_block += cfg.replicas;
        const MeanSe ms = mean_with_se(z);
        const LyapunovResult mc = omega_from_mean(cfg.spec, k, ms.mean, LyapunovMethod::monte_carlo);
        const double mc_se = k * k * ms.se;

        max_cf_quad_gap = std::max(max_cf_quad_gap, std::fabs(cf.omega - quad.omega));
        const std::string tag = "[k=" + format_double(k) + "]";
        report.estimates["omega_cf" + tag] = {cf.omega, 0.0, 0};
        report.estimates["omega_quadrature" + tag] = {quad.omega, 0.0, 0};
        report.estimates["omega_mc" + tag] = {mc.omega, mc_se, cfg.replicas};
        if (csv)
            csv->row({format_double(-k * k), format_double(cf.omega), format_double(quad.omega),
                      format_double(mc.omega), format_double(mc_se)});
    }
    report.gof["max_abs_cf_minus_quadrature"] = max_cf_quad_gap;
    return report;
}

ExperimentReport run_moments_check(const MomentsCheckConfig& cfg, const RunContext& ctx) {
    if (!is_subordinator(cfg.spec))
        throw std::invalid_argument("moments-check: spec must be a subordinator");
    if (!(cfg.lambda > 0.0)) throw std::invalid_argument("moments-check: lambda must be > 0");
    if (cfg.s_max < 1 || cfg.s_max > 16)
        throw std::invalid_argument("moments-check: s_max must lie in 1..16");

    const int s_max = cfg.s_max;
    std::vector<std::vector<double>> powers(static_cast<std::size_t>(s_max));
    for (auto& v : powers) v.resize(cfg.replicas);
    parallel_for(cfg.replicas, ctx.threads, [&](std::uint64_t i) {
        const std::uint64_t si = derive_stream_seed(ctx.base_seed, i);
        Rng rng(si);
        const double T = rng.exponential(cfg.lambda);
        const PathRecord path = sample_path(cfg.spec, T, cfg.dx, derive_stream_seed(si, 1));
        const double I = exp_functional(path);
        double acc = 1.0;
        for (int s = 1; s <= s_max; ++s) {
            acc *= I;
            powers[static_cast<std::size_t>(s - 1)][i] = acc;
        }
    });

    ExperimentReport report;
    report.experiment = "moments-check";
    report.base_seed = ctx.base_seed;
    report.replicas = cfg.replicas;

    std::optional<CsvWriter> csv;
    if (!ctx.out_dir.empty())
        csv.emplace(out_path(ctx, "moments.csv"),
                    std::vector<std::string>{"s", "recursion", "mc", "mc_se"});
    for (int s = 1; s <= s_max; ++s) {
        const double rec = bertoin_yor_moment(cfg.spec, cfg.lambda, s);
        const MeanSe ms = mean_with_se(powers[static_cast<std::size_t>(s - 1)]);
        report.estimates["m" + std::to_string(s) + "_recursion"] = {rec, 0.0, 0};
        report.estimates["m" + std::to_string(s) + "_mc"] = {ms.mean, ms.se, cfg.replicas};
        if (csv)
            csv->row({std::to_string(s), format_double(rec), format_double(ms.mean),
                      format_double(ms.se)});
    }
    return report;
}

ExperimentReport run_spitzer(const SpitzerConfig& cfg, const RunContext& ctx) {
    if (cfg.t_values.empty()) throw std::invalid_argument("spitzer: empty t grid");
    if (cfg.replicas < 10) throw std::invalid_argument("spitzer: replicas must be >= 10");
    if (cfg.r_star_values.empty()) throw std::invalid_argument("spitzer: empty r_star grid");

    ExperimentReport report;
    report.experiment = "spitzer";
    report.base_seed = ctx.base_seed;
    report.replicas = cfg.replicas;

    std::optional<CsvWriter> csv;
    if (!ctx.out_dir.empty())
        csv.emplace(out_path(ctx, "spitzer_summary.csv"),
                    std::vector<std::string>{"t", "r_star", "ks_cauchy", "median_abs",
                                             "hill_index", "m4_plus", "m4_full"});

    const bool multi_split = cfg.r_star_values.size() > 1;
    std::uint64_t seed_block = 0;
    for (double t : cfg.t_values) {
        const double scale = 2.0 / std::log(t);
        std::vector<double> stat(cfg.replicas);
        std::vector<std::vector<double>> plus(cfg.r_star_values.size());
        for (auto& v : plus) v.resize(cfg.replicas);

        const std::uint64_t block = seed_block;
        parallel_for(cfg.replicas, ctx.threads, [&](std::uint64_t i) {
            WindingParams params;
            params.eps = cfg.eps;
            params.r_star = cfg.r_star_values.front();
            params.floor_radius = cfg.floor_radius;
            const std::uint64_t seed = derive_stream_seed(ctx.base_seed, block + i);
            if (!multi_split) {
                const WindingTrace tr = sample_winding_angle(t, cfg.r0, params, seed);
                stat[i] = scale * tr.total_angle;
                plus[0][i] = scale * tr.big_angle;
            } else {
                std::vector<AngularIncrement> rec;
                const WindingTrace tr = sample_winding_angle(t, cfg.r0, params, seed, &rec);
                stat[i] = scale * tr.total_angle;
                for (std::size_t rs = 0; rs < cfg.r_star_values.size(); ++rs) {
                    const auto [big, small] = split_windings(rec, cfg.r_star_values[rs]);
                    plus[rs][i] = scale * big;
                }
            }
        });
        seed_block += cfg.replicas;

        const double ks = ks_statistic(stat, cauchy_cdf);
        std::vector<double> abs_stat(stat);
        for (auto& x : abs_stat) x = std::fabs(x);
        std::nth_element(abs_stat.begin(), abs_stat.begin() + abs_stat.size() / 2, abs_stat.end());
        const double median_abs = abs_stat[abs_stat.size() / 2];
        const double hill = hill_tail_index(stat, cfg.hill_k_frac);

        const auto m4 = [](const std::vector<double>& xs) {
            double s = 0.0;
            for (double x : xs) s += x * x * x * x;
            return s / static_cast<double>(xs.size());
        };
        const double m4_full = m4(stat);

        const std::string tt = "[t=" + format_double(t) + "]";
        report.gof["ks_cauchy" + tt] = ks;
        report.estimates["median_abs" + tt] = {median_abs, 0.0, cfg.replicas};
        report.estimates["hill_index" + tt] = {hill, 0.0, cfg.replicas};
        report.estimates["m4_full" + tt] = {m4_full, 0.0, cfg.replicas};
        for (std::size_t rs = 0; rs < cfg.r_star_values.size(); ++rs) {
            const double m4p = m4(plus[rs]);
            report.estimates["m4_plus" + tt + "[r_star=" + format_double(cfg.r_star_values[rs]) +
                             "]"] = {m4p, 0.0, cfg.replicas};
            if (csv)
                csv->row({format_double(t), format_double(cfg.r_star_values[rs]),
                          format_double(ks), format_double(median_abs), format_double(hill),
                          format_double(m4p), format_double(m4_full)});
        }
    }
    return report;
}

ExperimentReport run_sectors(const SectorsConfig& cfg, const RunContext& ctx) {
    if (cfg.replicas < 2) throw std::invalid_argument("sectors: replicas must be >= 2");
    if (cfg.n_steps < 3) throw std::invalid_argument("sectors: n_steps must be >= 3");
    if (cfg.resolution < 16) throw std::invalid_argument("sectors: resolution must be >= 16");

    std::vector<WindingField> fields(cfg.replicas);
    std::vector<double> shoelace(cfg.replicas);
    std::mutex dump_mutex;
    parallel_for(cfg.replicas, ctx.threads, [&](std::uint64_t i) {
        const auto polygon =
            sample_bridge(cfg.t, cfg.n_steps, derive_stream_seed(ctx.base_seed, i));
        const Box box = bounding_square(polygon);
        WindingField f = winding_field(polygon, box, cfg.resolution);
        shoelace[i] = polygon_signed_area(polygon);
        if (!ctx.out_dir.empty() && i < static_cast<std::uint64_t>(cfg.dump_fields)) {
            const std::lock_guard<std::mutex> lock(dump_mutex);
            CsvWriter csv(out_path(ctx, "field_" + std::to_string(i) + ".csv"),
                          {"row", "col", "winding_index", "boundary"});
            for (int r = 0; r < f.resolution; ++r) {
                for (int c = 0; c < f.resolution; ++c) {
                    const std::size_t idx =
                        static_cast<std::size_t>(r) * f.resolution + c;
                    csv.row({std::to_string(r), std::to_string(c),
                             std::to_string(f.grid[idx]), std::to_string(int(f.boundary[idx]))});
                }
            }
        }
        // keep only the sector summaries; the grids are large
        f.grid.clear();
        f.grid.shrink_to_fit();
        f.boundary.clear();
        f.boundary.shrink_to_fit();
        fields[i] = std::move(f);
    });

    ExperimentReport report = sector_statistics(fields, cfg.n_max);
    report.base_seed = ctx.base_seed;
    report.replicas = cfg.replicas;
    const MeanSe sl = mean_with_se(shoelace);
    report.estimates["shoelace_area"] = {sl.mean, sl.se, cfg.replicas};
    report.estimates["expected_A1"] = {cfg.t / (2.0 * std::numbers::pi), 0.0, 0};
    report.estimates["expected_arithmetic"] = {std::numbers::pi * cfg.t / 5.0, 0.0, 0};
    report.estimates["expected_A0_inside"] = {std::numbers::pi * cfg.t / 30.0, 0.0, 0};

    if (!ctx.out_dir.empty()) {
        CsvWriter csv(out_path(ctx, "sectors.csv"), {"n", "mean_area", "se", "expected"});
        for (int n = -cfg.n_max; n <= cfg.n_max; ++n) {
            if (n == 0) continue;
            const auto& est = report.estimates.at("A_" + std::to_string(n));
            csv.row({std::to_string(n), format_double(est.value), format_double(est.se),
                     format_double(cfg.t / (2.0 * std::numbers::pi * n * n))});
        }
    }
    return report;
}

ExperimentReport run_deficit(const DeficitConfig& cfg, const RunContext& ctx) {
    if (cfg.alphas.empty()) throw std::invalid_argument("deficit: empty alpha grid");

    ExperimentReport report;
    report.experiment = "deficit";
    report.base_seed = ctx.base_seed;
    report.replicas = 0;

    std::optional<CsvWriter> csv;
    if (!ctx.out_dir.empty())
        csv.emplace(out_path(ctx, "deficit.csv"),
                    std::vector<std::string>{"alpha", "n_max", "partial_sum", "limit", "abs_error"});
    for (double alpha : cfg.alphas) {
        const double partial = partition_deficit(alpha, cfg.n_max);
        const double limit = partition_deficit_limit(alpha);
        const std::string tag = "[alpha=" + format_double(alpha) + "]";
        report.estimates["partial" + tag] = {partial, 0.0, 0};
        report.estimates["limit" + tag] = {limit, 0.0, 0};
        if (csv)
            csv->row({format_double(alpha), std::to_string(cfg.n_max), format_double(partial),
                      format_double(limit), format_double(std::fabs(partial - limit))});
    }
    return report;
}

std::string report_to_json(const ExperimentReport& report, double wall_seconds) {
    json j;
    j["experiment"] = report.experiment;
    j["version"] = version_string();
    j["config"] = report.config_echo.empty() ? json::object() : json::parse(report.config_echo);
    j["seeds"] = {{"base", report.base_seed}, {"replicas", report.replicas}};
    j["wall_clock_seconds"] = wall_seconds;
    json est = json::object();
    for (const auto& [name, e] : report.estimates) {
        est[name] = {{"value", e.value}, {"se", e.se}, {"n", e.n_samples}};
    }
    j["estimates"] = est;
    j["gof"] = report.gof;
    j["notes"] = report.notes;
    return j.dump(2) + "\n";
}

} // namespace levylab
