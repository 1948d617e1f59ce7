#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "levylab/rng.hpp"

namespace levylab {

struct MeanSe {
    double mean{};
    double se{};
};

// Sample mean with standard error (Welford).
MeanSe mean_with_se(std::span<const double> samples);

// Kolmogorov-Smirnov sup distance D_N between the empirical CDF of the
// samples and a reference CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Two-sample KS distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Standard Cauchy(1) CDF: 1/2 + arctan(x)/pi.
double cauchy_cdf(double x);

// P(2/Gamma_{2mu} <= x) = 1 - P_reg(2mu, 2/x).
double gamma_reciprocal_cdf(double mu, double x);

// Gamma(shape, 1) draw by Marsaglia-Tsang, with the shape boost for
// shape < 1 so any shape > 0 is valid.
double sample_gamma(double shape, Rng& rng);

struct Histogram {
    double lo{};
    double hi{};
    std::vector<std::uint64_t> counts;
    std::uint64_t under{};
    std::uint64_t over{};
    std::uint64_t total{};

    double edge(std::size_t i) const {
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(counts.size());
    }
};

Histogram make_histogram(std::span<const double> samples, std::size_t bins, double lo, double hi);

// L1 = sum_bins |p_bin - int_bin f| with the reference mass taken from the
// CDF; out-of-range sample mass is compared against the CDF tails.
double l1_density_distance(const Histogram& hist, const std::function<double(double)>& cdf);

// Hill tail-index estimate from the top k_frac order statistics of |samples|.
double hill_tail_index(std::vector<double> samples, double k_frac);

// Named estimates with provenance for one experiment run.
struct Estimate {
    double value{};
    double se{};
    std::uint64_t n_samples{};
};

struct ExperimentReport {
    std::string experiment;
    std::map<std::string, Estimate> estimates;
    std::map<std::string, double> gof;
    std::uint64_t base_seed{};
    std::uint64_t replicas{};
    std::string config_echo; // JSON text of the configuration
    std::vector<std::string> notes;
};

} // namespace levylab
