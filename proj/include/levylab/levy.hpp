#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "levylab/rng.hpp"

namespace levylab {

// Jump measure Pi(dy) = p q exp(-q y) 1_{y>0} dy: compound Poisson with
// intensity p and Exp(q) jump sizes. Everything downstream keys off the
// derived triple (Lambda, mu, c), so further families plug in by providing
// those three.
struct ExpJumps {
    double p{};
    double q{};
};

// Parametric Levy process: linear coefficient a, Gaussian variance sigma2,
// optional positive exponential jumps. The compensator integral
// int y/(1+y^2) Pi(dy) is evaluated once at construction (adaptive
// quadrature, tolerance 1e-12) and cached.
class LevySpec {
public:
    static LevySpec make(double a, double sigma2, std::optional<ExpJumps> jumps = std::nullopt);
    // Same process specified by its drift coefficient mu = a - compensator.
    static LevySpec from_drift(double mu, double sigma2, std::optional<ExpJumps> jumps = std::nullopt);

    double a() const { return a_; }
    double sigma2() const { return sigma2_; }
    const std::optional<ExpJumps>& jumps() const { return jumps_; }
    double compensator() const { return compensator_; }
    double drift() const { return a_ - compensator_; }
    // Total jump intensity Pi(R), 0 when no jumps.
    double jump_intensity() const { return jumps_ ? jumps_->p : 0.0; }

private:
    LevySpec(double a, double sigma2, std::optional<ExpJumps> jumps, double compensator)
        : a_(a), sigma2_(sigma2), jumps_(jumps), compensator_(compensator) {}

    double a_;
    double sigma2_;
    std::optional<ExpJumps> jumps_;
    double compensator_;
};

// Levy exponent Lambda(theta) of the spec; entire in theta for the families
// here, so a complex argument is accepted (needed for Lambda(i s)).
std::complex<double> levy_exponent(const LevySpec& spec, std::complex<double> theta);

// Drift coefficient mu = a - int y/(1+y^2) Pi(dy).
double drift_coefficient(const LevySpec& spec);

// c(s) = -Lambda(i s)/s for s > 0, extended by continuity at s = 0.
double c_function(const LevySpec& spec, double s);

// Non-decreasing process: sigma = 0, positive jumps, mu >= 0.
bool is_subordinator(const LevySpec& spec);

struct PathEvent {
    double pos{};
    double jump{};
};

struct GridStep {
    double pos{}; // right endpoint of the cell
    double inc{}; // Brownian contribution sigma * dB over the cell
};

// A sampled path of W on [0, horizon], started at zero. Jump processes are
// event-exact; a Brownian component is carried as exact Gaussian increments
// on the dx grid (with event positions inserted as breakpoints).
struct PathRecord {
    double horizon{};
    double mu{}; // linear drift rate
    std::vector<PathEvent> events;
    std::vector<GridStep> grid;
    double terminal_value{};

    // W at the right end of grid cell i (after any jump at that breakpoint),
    // only meaningful for grid paths; helper for evaluation loops.
    bool has_grid() const { return !grid.empty(); }
};

// Event-exact jump sampling, exact Gaussian increments on the dx grid;
// deterministic function of the seed.
PathRecord sample_path(const LevySpec& spec, double horizon, double dx, std::uint64_t seed);

} // namespace levylab
