#include "levylab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "levylab/specfun.hpp"

namespace levylab {

MeanSe mean_with_se(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("mean_with_se: empty sample");
    double mean = 0.0;
    double m2 = 0.0;
    std::uint64_t n = 0;
    for (double x : samples) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    if (n < 2) return {mean, 0.0};
    const double var = m2 / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        // advance both past the smallest value so ties (atoms) move the two
        // empirical CDFs together
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double cauchy_cdf(double x) {
    return 0.5 + std::atan(x) / std::numbers::pi;
}

double gamma_reciprocal_cdf(double mu, double x) {
    if (!(mu > 0.0)) throw std::invalid_argument("gamma_reciprocal_cdf: mu must be > 0");
    if (!(x > 0.0)) return 0.0;
    return 1.0 - specfun::reg_inc_gamma_lower(2.0 * mu, 2.0 / x);
}

double sample_gamma(double shape, Rng& rng) {
    if (!(shape > 0.0)) throw std::invalid_argument("sample_gamma: shape must be > 0");
    if (shape < 1.0) {
        // boost: Gamma(shape) = Gamma(shape+1) * U^{1/shape}
        const double g = sample_gamma(shape + 1.0, rng);
        return g * std::pow(rng.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

Histogram make_histogram(std::span<const double> samples, std::size_t bins, double lo, double hi) {
    if (bins == 0) throw std::invalid_argument("make_histogram: bins must be > 0");
    if (!(hi > lo)) throw std::invalid_argument("make_histogram: need hi > lo");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);
    for (double x : samples) {
        if (x < lo) {
            ++h.under;
        } else if (x >= hi) {
            ++h.over;
        } else {
            auto i = static_cast<std::size_t>((x - lo) / (hi - lo) * static_cast<double>(bins));
            if (i >= bins) i = bins - 1;
            ++h.counts[i];
        }
    }
    h.total = h.under + h.over;
    for (auto c : h.counts) h.total += c;
    return h;
}

double l1_density_distance(const Histogram& hist, const std::function<double(double)>& cdf) {
    if (hist.total == 0) throw std::invalid_argument("l1_density_distance: empty histogram");
    const double n = static_cast<double>(hist.total);
    double l1 = std::fabs(static_cast<double>(hist.under) / n - cdf(hist.lo));
    double f_prev = cdf(hist.lo);
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        const double f = cdf(hist.edge(i + 1));
        l1 += std::fabs(static_cast<double>(hist.counts[i]) / n - (f - f_prev));
        f_prev = f;
    }
    l1 += std::fabs(static_cast<double>(hist.over) / n - (1.0 - f_prev));
    return l1;
}

double hill_tail_index(std::vector<double> samples, double k_frac) {
    if (!(k_frac > 0.0) || !(k_frac < 0.5))
        throw std::invalid_argument("hill_tail_index: k_frac must lie in (0, 0.5)");
    if (samples.empty()) throw std::invalid_argument("hill_tail_index: empty sample");
    for (auto& x : samples) x = std::fabs(x);
    std::sort(samples.begin(), samples.end(), std::greater<>());
    const std::size_t k = std::max<std::size_t>(
        5, static_cast<std::size_t>(k_frac * static_cast<double>(samples.size())));
    if (k >= samples.size())
        throw std::invalid_argument("hill_tail_index: too few samples for k_frac");
    const double xk = samples[k];
    if (!(xk > 0.0)) throw std::invalid_argument("hill_tail_index: nonpositive order statistic");
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += std::log(samples[i] / xk);
    return static_cast<double>(k) / s;
}

} // namespace levylab
