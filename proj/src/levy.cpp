#include "levylab/levy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levylab/quadrature.hpp"

namespace levylab {

namespace {

void validate_params(double a, double sigma2, const std::optional<ExpJumps>& jumps) {
    if (!std::isfinite(a)) throw std::invalid_argument("LevySpec: a must be finite");
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
        throw std::invalid_argument("LevySpec: sigma2 must be >= 0");
    if (jumps) {
        if (!(jumps->p > 0.0) || !(jumps->q > 0.0))
            throw std::invalid_argument("LevySpec: jump parameters p, q must be > 0");
    }
}

double compensator_integral(const std::optional<ExpJumps>& jumps) {
    if (!jumps) return 0.0;
    const double p = jumps->p;
    const double q = jumps->q;
    // int_0^inf y/(1+y^2) p q e^{-qy} dy; integrand decays like e^{-qy}.
    const double upper = 60.0 / q;
    return integrate([p, q](double y) { return p * q * y / (1.0 + y * y) * std::exp(-q * y); },
                     0.0, upper, 1e-12);
}

} // namespace

LevySpec LevySpec::make(double a, double sigma2, std::optional<ExpJumps> jumps) {
    validate_params(a, sigma2, jumps);
    return LevySpec(a, sigma2, jumps, compensator_integral(jumps));
}

LevySpec LevySpec::from_drift(double mu, double sigma2, std::optional<ExpJumps> jumps) {
    validate_params(mu, sigma2, jumps);
    const double comp = compensator_integral(jumps);
    return LevySpec(mu + comp, sigma2, jumps, comp);
}

std::complex<double> levy_exponent(const LevySpec& spec, std::complex<double> theta) {
    const std::complex<double> i(0.0, 1.0);
    std::complex<double> lam = i * spec.a() * theta - 0.5 * spec.sigma2() * theta * theta;
    if (spec.jumps()) {
        const double p = spec.jumps()->p;
        const double q = spec.jumps()->q;
        // int (e^{i theta y} - 1) Pi(dy) = p i theta / (q - i theta),
        // valid while Re(q - i theta) > 0.
        const std::complex<double> denom = q - i * theta;
        if (!(denom.real() > 0.0))
            throw std::invalid_argument("levy_exponent: jump integral diverges at this theta");
        lam += p * i * theta / denom;
        lam -= i * theta * spec.compensator();
    }
    return lam;
}

double drift_coefficient(const LevySpec& spec) { return spec.drift(); }

double c_function(const LevySpec& spec, double s) {
    if (!(s >= 0.0)) throw std::invalid_argument("c_function: s must be >= 0");
    const double mu = spec.drift();
    double c = mu - 0.5 * spec.sigma2() * s;
    if (spec.jumps()) {
        const double p = spec.jumps()->p;
        const double q = spec.jumps()->q;
        if (!(q + s > 0.0)) throw std::invalid_argument("c_function: Lambda(is) diverges");
        c += p / (q + s);
    }
    return c;
}

bool is_subordinator(const LevySpec& spec) {
    return spec.sigma2() == 0.0 && spec.drift() >= 0.0;
}

PathRecord sample_path(const LevySpec& spec, double horizon, double dx, std::uint64_t seed) {
    if (!(horizon > 0.0)) throw std::invalid_argument("sample_path: horizon must be > 0");
    if (spec.sigma2() > 0.0 && !(dx > 0.0))
        throw std::invalid_argument("sample_path: dx must be > 0 when sigma2 > 0");

    Rng rng(seed);
    PathRecord path;
    path.horizon = horizon;
    path.mu = spec.drift();

    double jump_sum = 0.0;
    if (spec.jumps()) {
        const double p = spec.jumps()->p;
        const double q = spec.jumps()->q;
        const std::uint64_t n = rng.poisson(p * horizon);
        std::vector<double> pos(n);
        for (auto& x : pos) x = horizon * rng.uniform();
        std::sort(pos.begin(), pos.end());
        path.events.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double j = rng.exponential(q);
            path.events.push_back({pos[i], j});
            jump_sum += j;
        }
    }

    double inc_sum = 0.0;
    if (spec.sigma2() > 0.0) {
        const double sigma = std::sqrt(spec.sigma2());
        // Breakpoints: multiples of dx together with the event positions.
        std::vector<double> bp;
        bp.reserve(static_cast<std::size_t>(horizon / dx) + path.events.size() + 2);
        for (std::size_t i = 1;; ++i) {
            const double x = static_cast<double>(i) * dx;
            if (x >= horizon * (1.0 - 1e-12)) break;
            bp.push_back(x);
        }
        bp.push_back(horizon);
        for (const auto& e : path.events) bp.push_back(e.pos);
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

        path.grid.reserve(bp.size());
        double prev = 0.0;
        for (double x : bp) {
            const double cell = x - prev;
            const double inc = cell > 0.0 ? sigma * std::sqrt(cell) * rng.normal() : 0.0;
            path.grid.push_back({x, inc});
            inc_sum += inc;
            prev = x;
        }
    }

    path.terminal_value = path.mu * horizon + inc_sum + jump_sum;
    return path;
}

} // namespace levylab
