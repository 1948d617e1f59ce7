#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levylab/levy.hpp"
#include "levylab/stats.hpp"

namespace levylab {

// Artifact version string embedded in every report.
const char* version_string();

struct RunContext {
    std::uint64_t base_seed = 12345;
    int threads = 1;
    std::string out_dir; // empty: do not write files
};

struct DufresneConfig {
    double mu = 1.0;
    double horizon = -1.0; // < 0: 40/mu
    double dx = 1e-3;
    std::uint64_t replicas = 100000;
    std::size_t bins = 200;
};

struct RiccatiDensityConfig {
    LevySpec spec = LevySpec::make(0.0, 2.0);
    double k = 1.0;
    double burn_in = -1.0; // < 0: default_burn_in
    double dx = 1e-3;
    std::uint64_t replicas = 100000;
    std::size_t bins = 200;
    int curve_points = 512;
};

struct LyapunovCurveConfig {
    LevySpec spec = LevySpec::from_drift(0.0, 0.0, ExpJumps{1.0, 1.0});
    std::vector<double> k_values = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
    double burn_in = -1.0;
    double dx = 1e-3;
    std::uint64_t replicas = 100000;
    double cf_tol = 1e-10;
};

struct MomentsCheckConfig {
    LevySpec spec = LevySpec::from_drift(0.5, 0.0, ExpJumps{1.0, 1.0});
    double lambda = 1.0;
    int s_max = 4;
    double dx = 1e-3;
    std::uint64_t replicas = 200000;
};

struct SpitzerConfig {
    std::vector<double> t_values = {1e2, 1e4, 1e8};
    std::uint64_t replicas = 10000;
    double r0 = 1.0;
    double eps = 1e-3;
    std::vector<double> r_star_values = {1.0};
    double floor_radius = -1.0; // < 0: 1e-3 * r0
    double hill_k_frac = 0.05;
};

struct SectorsConfig {
    double t = 1.0;
    int n_steps = 16384;
    int resolution = 512;
    std::uint64_t replicas = 200;
    int n_max = 6;
    int dump_fields = 0; // export the first N winding fields as CSV
};

struct DeficitConfig {
    std::vector<double> alphas = {0.25, 0.5, 0.75};
    std::int64_t n_max = 1000000;
};

ExperimentReport run_dufresne(const DufresneConfig& cfg, const RunContext& ctx);
ExperimentReport run_riccati_density(const RiccatiDensityConfig& cfg, const RunContext& ctx);
ExperimentReport run_lyapunov_curve(const LyapunovCurveConfig& cfg, const RunContext& ctx);
ExperimentReport run_moments_check(const MomentsCheckConfig& cfg, const RunContext& ctx);
ExperimentReport run_spitzer(const SpitzerConfig& cfg, const RunContext& ctx);
ExperimentReport run_sectors(const SectorsConfig& cfg, const RunContext& ctx);
ExperimentReport run_deficit(const DeficitConfig& cfg, const RunContext& ctx);

// Report serialisation; wall_seconds is recorded alongside the
// deterministic payload.
std::string report_to_json(const ExperimentReport& report, double wall_seconds);

} // namespace levylab
