#pragma once

#include <cstdint>

#include "levylab/levy.hpp"

namespace levylab {

// One draw of the stationary Riccati variable Z_infinity at energy E = -k^2.
struct RiccatiSample {
    double value{};
    double energy{};
    double burn_in{};
};

// I_t = int_0^t exp(-W(s)) ds. Exact closed-form segment integrals for
// piecewise-linear-between-jumps paths; trapezoidal on a Brownian grid.
double exp_functional(const PathRecord& path);

// One draw of int_0^horizon exp(-mu t - B_t) dt, a truncation of the
// infinite-horizon functional for drift mu > 0.
double sample_dufresne(double mu, double horizon, double dx, std::uint64_t seed);

// Default truncation horizon (truncation bias at the e^{-40} scale).
inline double dufresne_default_horizon(double mu) { return 40.0 / mu; }

// Exact solution at length dx of Z' = 1 - k^2 Z^2 - mu Z with constant
// coefficients; the k = 0 case reduces to the integrating-factor solution.
double riccati_flow_segment(double z0, double k, double mu, double dx);

// Jump rule Z -> Z exp(-dW).
double riccati_jump(double z, double dW);

// Upper fixed point z_+ = (-mu + sqrt(mu^2 + 4k^2)) / (2k^2) of the flow
// (1/mu for k = 0).
double riccati_fixed_point(double k, double mu);

// Terminal Z(horizon) along a sampled path, starting from z0: exact flow
// between jumps for event paths, Stratonovich-consistent Heun stepping on
// Brownian grids.
double riccati_terminal(const PathRecord& path, double k, double z0);

// Default burn-in: 30 relaxation lengths. Uses 30/c(0) when c(0) > 0,
// otherwise the deterministic Riccati rate sqrt(mu^2 + 4k^2).
double default_burn_in(const LevySpec& spec, double k);

// One draw of Z_infinity: Z(0) = 0 integrated over burn_in path length.
// Independent samples come from independent replicas (never thinning).
RiccatiSample sample_stationary_riccati(const LevySpec& spec, double k, double burn_in,
                                        double dx, std::uint64_t seed);

} // namespace levylab
