#include "levylab/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "levylab/errors.hpp"
#include "levylab/expfunc.hpp"

namespace levylab {

namespace {

// Backward ratios r_1..r_n. The forward recursion is dominated by the
// growing solution, so only the backward/minimal-solution evaluation is
// numerically meaningful.
std::vector<double> backward_ratios(const LevySpec& spec, double k, int n, double tol) {
    if (n < 1) throw std::invalid_argument("backward_ratios: need at least one ratio");

    if (k == 0.0) {
        std::vector<double> r(static_cast<std::size_t>(n) + 1, 0.0);
        for (int s = 1; s <= n; ++s) {
            const double c = c_function(spec, s);
            if (!(c > 0.0))
                throw numeric_error("moment recursion: c(s) <= 0 at k = 0, moment diverges");
            r[static_cast<std::size_t>(s)] = 1.0 / c;
        }
        return r;
    }

    if (!is_subordinator(spec))
        throw std::invalid_argument("moment recursion: spec must be a subordinator for k > 0");

    const double k2 = k * k;
    const double mu = spec.drift();
    const double p = spec.jump_intensity();
    const double kappa = std::sqrt(mu * mu + 4.0 * k2);
    const double zp = (kappa - mu) / (2.0 * k2);
    const double nu = p / kappa;

    std::vector<double> r(static_cast<std::size_t>(n) + 1, 0.0);
    double prev_f1 = -1.0;
    for (int depth = std::max(64, 2 * n);; depth *= 2) {
        double rs = zp * (1.0 - nu / depth); // asymptotic tail of the minimal solution
        for (int s = depth - 1; s >= 1; --s) {
            rs = 1.0 / (c_function(spec, s) + k2 * rs);
            if (s <= n) r[static_cast<std::size_t>(s)] = rs;
        }
        if (prev_f1 >= 0.0 && std::fabs(r[1] - prev_f1) < tol) break;
        prev_f1 = r[1];
        if (depth > (1 << 24))
            throw numeric_error("moment recursion: backward recursion did not converge");
    }
    return r;
}

} // namespace

MomentTable stationary_moment_ratios(const LevySpec& spec, double k, int s_max, double tol) {
    if (s_max < 1) throw std::invalid_argument("stationary_moment_ratios: s_max must be >= 1");
    const auto r = backward_ratios(spec, k, s_max, tol);

    MomentTable table;
    table.ratios = r;
    table.values.assign(static_cast<std::size_t>(s_max) + 1, 1.0);
    for (int s = 1; s <= s_max; ++s) {
        const double rs = r[static_cast<std::size_t>(s)];
        if (!(rs > 0.0)) throw numeric_error("stationary_moment_ratios: nonpositive ratio");
        table.values[static_cast<std::size_t>(s)] = table.values[static_cast<std::size_t>(s) - 1] * rs;
    }
    return table;
}

LyapunovResult continued_fraction_omega(const LevySpec& spec, double k, double tol) {
    if (!(k >= 0.0)) throw std::invalid_argument("continued_fraction_omega: k must be >= 0");
    const double c0 = c_function(spec, 0.0);
    double omega = 0.5 * c0;
    if (k > 0.0) {
        const auto r = backward_ratios(spec, k, 1, tol);
        omega += k * k * r[1];
    }
    return LyapunovResult{-k * k, omega, omega, 0.0, LyapunovMethod::continued_fraction};
}

double continued_fraction_depth(const LevySpec& spec, double k, int depth) {
    if (depth < 1) throw std::invalid_argument("continued_fraction_depth: depth must be >= 1");
    const double k2 = k * k;
    double rs = 0.0;
    for (int s = depth; s >= 1; --s) rs = 1.0 / (c_function(spec, s) + k2 * rs);
    return 0.5 * c_function(spec, 0.0) + k2 * rs;
}

LyapunovResult omega_from_mean(const LevySpec& spec, double k, double mean_z,
                               LyapunovMethod method) {
    if (!(mean_z >= 0.0)) throw std::invalid_argument("omega_from_mean: mean_z must be >= 0");
    const double omega = 0.5 * c_function(spec, 0.0) + k * k * mean_z;
    return LyapunovResult{-k * k, omega, omega, 0.0, method};
}

double bertoin_yor_moment(const LevySpec& spec, double lambda, int s) {
    if (!(lambda > 0.0)) throw std::invalid_argument("bertoin_yor_moment: lambda must be > 0");
    if (s < 1) throw std::invalid_argument("bertoin_yor_moment: s must be >= 1");
    if (!is_subordinator(spec))
        throw std::invalid_argument("bertoin_yor_moment: spec must be a subordinator");
    double m = 1.0;
    for (int j = 1; j <= s; ++j) {
        m *= static_cast<double>(j) / (lambda + j * c_function(spec, j));
    }
    return m;
}

std::pair<double, double> lyapunov_decompose(double omega, double energy) {
    if (energy > 0.0)
        throw std::invalid_argument("lyapunov_decompose: positive energy is out of scope");
    return {omega, 0.0};
}

} // namespace levylab
