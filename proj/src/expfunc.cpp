#include "levylab/expfunc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace levylab {

namespace {

// int_0^L exp(-mu u) du, stable for small mu.
double drift_segment_integral(double mu, double L) {
    if (L <= 0.0) return 0.0;
    if (std::fabs(mu) * L < 1e-12) return L * (1.0 - 0.5 * mu * L);
    return -std::expm1(-mu * L) / mu;
}

// One Heun (midpoint-predictor) step for the Stratonovich Riccati SDE
// dZ = (1 - k^2 Z^2 - mu Z) dx - Z dG, where dG = sigma dB over the cell.
inline double heun_step(double z, double k2, double mu, double dx, double dG) {
    const double g0 = 1.0 - k2 * z * z - mu * z;
    const double zp = z + g0 * dx - z * dG;
    const double g1 = 1.0 - k2 * zp * zp - mu * zp;
    return z + 0.5 * (g0 + g1) * dx - 0.5 * (z + zp) * dG;
}

} // namespace

double exp_functional(const PathRecord& path) {
    if (!(path.horizon > 0.0)) throw std::invalid_argument("exp_functional: empty path");
    const double mu = path.mu;

    if (!path.has_grid()) {
        // piecewise linear between jumps: exact segment integrals
        double I = 0.0;
        double w = 0.0;
        double x = 0.0;
        for (const auto& e : path.events) {
            I += std::exp(-w) * drift_segment_integral(mu, e.pos - x);
            w += mu * (e.pos - x) + e.jump;
            x = e.pos;
        }
        I += std::exp(-w) * drift_segment_integral(mu, path.horizon - x);
        return I;
    }

    // trapezoid on the grid; events coincide with grid breakpoints
    double I = 0.0;
    double w = 0.0;
    double prev_x = 0.0;
    double f_prev = 1.0; // exp(-W(0))
    std::size_t ev = 0;
    for (const auto& cell : path.grid) {
        const double dx = cell.pos - prev_x;
        w += mu * dx + cell.inc;
        const double f = std::exp(-w);
        I += 0.5 * (f_prev + f) * dx;
        f_prev = f;
        if (ev < path.events.size() && path.events[ev].pos == cell.pos) {
            w += path.events[ev].jump;
            f_prev = std::exp(-w);
            ++ev;
        }
        prev_x = cell.pos;
    }
    return I;
}

double sample_dufresne(double mu, double horizon, double dx, std::uint64_t seed) {
    if (!(mu > 0.0)) throw std::invalid_argument("sample_dufresne: mu must be > 0");
    if (!(horizon > 0.0) || !(dx > 0.0))
        throw std::invalid_argument("sample_dufresne: horizon and dx must be > 0");
    Rng rng(seed);
    double I = 0.0;
    double w = 0.0;
    double f_prev = 1.0;
    double x = 0.0;
    while (x < horizon) {
        const double step = std::min(dx, horizon - x);
        w += mu * step + std::sqrt(step) * rng.normal();
        const double f = std::exp(-w);
        I += 0.5 * (f_prev + f) * step;
        f_prev = f;
        x += step;
    }
    return I;
}

double riccati_fixed_point(double k, double mu) {
    if (k == 0.0) {
        if (!(mu > 0.0))
            throw std::invalid_argument("riccati_fixed_point: needs k > 0 or mu > 0");
        return 1.0 / mu;
    }
    const double k2 = k * k;
    const double kappa = std::sqrt(mu * mu + 4.0 * k2);
    return (kappa - mu) / (2.0 * k2);
}

double riccati_flow_segment(double z0, double k, double mu, double dx) {
    if (!(z0 >= 0.0)) throw std::invalid_argument("riccati_flow_segment: z0 must be >= 0");
    if (!(k >= 0.0)) throw std::invalid_argument("riccati_flow_segment: k must be >= 0");
    if (dx <= 0.0) return z0;
    if (k == 0.0) {
        // Z' = 1 - mu Z
        if (std::fabs(mu) < 1e-300) return z0 + dx;
        const double e = std::exp(-mu * dx);
        return z0 * e - std::expm1(-mu * dx) / mu;
    }
    const double k2 = k * k;
    const double kappa = std::sqrt(mu * mu + 4.0 * k2);
    const double zp = (kappa - mu) / (2.0 * k2);
    const double zm = (-kappa - mu) / (2.0 * k2);
    const double r0 = (z0 - zp) / (z0 - zm);
    const double u = r0 * std::exp(-kappa * dx);
    return (zp - zm * u) / (1.0 - u);
}

double riccati_jump(double z, double dW) {
    if (!(z > 0.0)) throw std::invalid_argument("riccati_jump: z must be > 0");
    return z * std::exp(-dW);
}

double riccati_terminal(const PathRecord& path, double k, double z0) {
    if (!(z0 >= 0.0)) throw std::invalid_argument("riccati_terminal: z0 must be >= 0");
    const double mu = path.mu;
    double z = z0;

    if (!path.has_grid()) {
        double x = 0.0;
        for (const auto& e : path.events) {
            z = riccati_flow_segment(z, k, mu, e.pos - x);
            z = z * std::exp(-e.jump);
            x = e.pos;
        }
        return riccati_flow_segment(z, k, mu, path.horizon - x);
    }

    const double k2 = k * k;
    double prev_x = 0.0;
    std::size_t ev = 0;
    for (const auto& cell : path.grid) {
        z = heun_step(z, k2, mu, cell.pos - prev_x, cell.inc);
        if (ev < path.events.size() && path.events[ev].pos == cell.pos) {
            z = z * std::exp(-path.events[ev].jump);
            ++ev;
        }
        prev_x = cell.pos;
    }
    return z;
}

double default_burn_in(const LevySpec& spec, double k) {
    const double c0 = c_function(spec, 0.0);
    if (c0 > 0.0) return 30.0 / c0;
    const double mu = spec.drift();
    const double kappa = std::sqrt(mu * mu + 4.0 * k * k);
    if (!(kappa > 0.0))
        throw std::invalid_argument("default_burn_in: no relaxation scale (c(0) <= 0 and k = 0)");
    return 30.0 / kappa;
}

RiccatiSample sample_stationary_riccati(const LevySpec& spec, double k, double burn_in,
                                        double dx, std::uint64_t seed) {
    if (!(k >= 0.0)) throw std::invalid_argument("sample_stationary_riccati: k must be >= 0");
    if (!(burn_in > 0.0)) throw std::invalid_argument("sample_stationary_riccati: burn_in must be > 0");

    Rng rng(seed);
    const double mu = spec.drift();
    double z = 0.0;

    if (spec.sigma2() == 0.0) {
        // event-exact: flow between jumps, multiplicative kick at jumps
        double x = 0.0;
        if (spec.jumps()) {
            const double p = spec.jumps()->p;
            const double q = spec.jumps()->q;
            const std::uint64_t n = rng.poisson(p * burn_in);
            std::vector<double> pos(n);
            for (auto& t : pos) t = burn_in * rng.uniform();
            std::sort(pos.begin(), pos.end());
            for (double t : pos) {
                z = riccati_flow_segment(z, k, mu, t - x);
                z *= std::exp(-rng.exponential(q));
                x = t;
            }
        }
        z = riccati_flow_segment(z, k, mu, burn_in - x);
    } else {
        if (!(dx > 0.0))
            throw std::invalid_argument("sample_stationary_riccati: dx must be > 0 for sigma2 > 0");
        const double sigma = std::sqrt(spec.sigma2());
        const double k2 = k * k;
        std::vector<double> jump_pos;
        if (spec.jumps()) {
            const std::uint64_t n = rng.poisson(spec.jumps()->p * burn_in);
            jump_pos.resize(n);
            for (auto& t : jump_pos) t = burn_in * rng.uniform();
            std::sort(jump_pos.begin(), jump_pos.end());
        }
        double x = 0.0;
        const auto advance_to = [&](double target) {
            while (x < target) {
                const double remaining = target - x;
                if (remaining <= dx) {
                    const double dG = sigma * std::sqrt(remaining) * rng.normal();
                    z = heun_step(z, k2, mu, remaining, dG);
                    x = target;
                } else {
                    const double dG = sigma * std::sqrt(dx) * rng.normal();
                    z = heun_step(z, k2, mu, dx, dG);
                    x += dx;
                }
            }
        };
        for (double t : jump_pos) {
            advance_to(t);
            z *= std::exp(-rng.exponential(spec.jumps()->q));
        }
        advance_to(burn_in);
    }

    return RiccatiSample{z, -k * k, burn_in};
}

} // namespace levylab
