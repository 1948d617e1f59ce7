#pragma once

#include <vector>

#include "levylab/levy.hpp"

namespace levylab {

enum class LyapunovMethod { continued_fraction, monte_carlo, quadrature };

// Complex Lyapunov exponent at energy E <= 0 where Omega is real:
// omega = gamma (inverse localisation length), idos = N(E) = 0 below the
// spectrum.
struct LyapunovResult {
    double energy{};
    double omega{};
    double gamma{};
    double idos{};
    LyapunovMethod method{};
};

// Stationary Mellin moments f(s) = E[Z_infinity^s] on the integer grid
// 0..s_max, with the ratios r_s = f(s)/f(s-1) (ratios[0] unused).
struct MomentTable {
    std::vector<double> values;
    std::vector<double> ratios;
};

// Minimal solution of E f(s+1) - c(s) f(s) + f(s-1) = 0 via the backward
// ratio recursion r_s = 1/(c(s) + k^2 r_{s+1}), seeded with the asymptotic
// tail r_S = z_plus (1 - nu/S) and deepened until f(1) stabilises below tol.
// k > 0 requires a subordinator spec; k = 0 decouples the recursion and is
// accepted whenever every denominator c(1..s_max) stays positive.
MomentTable stationary_moment_ratios(const LevySpec& spec, double k, int s_max, double tol = 1e-10);

// Omega(-k^2) = c(0)/2 + k^2/(c(1) + k^2/(c(2) + ...)), evaluated by the
// same backward recursion.
LyapunovResult continued_fraction_omega(const LevySpec& spec, double k, double tol = 1e-10);

// Zero-seeded evaluation truncated at depth S (for convergence diagnostics).
double continued_fraction_depth(const LevySpec& spec, double k, int depth);

// Omega = c(0)/2 + k^2 * mean_z; the method tag records the mean's source.
LyapunovResult omega_from_mean(const LevySpec& spec, double k, double mean_z,
                               LyapunovMethod method);

// E[I_T^s] for T ~ Exp(lambda) at zero energy, Z(0) = 0:
// m_s = prod_{j=1..s} j / (lambda + j c(j)).
double bertoin_yor_moment(const LevySpec& spec, double lambda, int s);

// gamma = omega and N(E) = 0 for E <= 0 (real Omega below the spectrum).
std::pair<double, double> lyapunov_decompose(double omega, double energy);

} // namespace levylab
