#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "levylab/rng.hpp"
#include "levylab/specfun.hpp"
#include "levylab/stats.hpp"

using namespace levylab;

TEST_SUITE("stats") {

TEST_CASE("mean_with_se basics") {
    const std::vector<double> constant(50, 3.25);
    const MeanSe c = mean_with_se(constant);
    CHECK(c.mean == doctest::Approx(3.25));
    CHECK(c.se == 0.0);
    const std::vector<double> two = {1.0, 3.0};
    const MeanSe t = mean_with_se(two);
    CHECK(t.mean == doctest::Approx(2.0));
    CHECK(t.se == doctest::Approx(1.0));
    CHECK_THROWS_AS(mean_with_se(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("ks single point against uniform") {
    const double d = ks_statistic({0.5}, [](double x) { return std::clamp(x, 0.0, 1.0); });
    CHECK(d == doctest::Approx(0.5));
}

TEST_CASE("ks of a centred grid against its own cdf is at most 1/N") {
    const std::size_t n = 1000;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = (static_cast<double>(i) + 0.5) / n;
    const double d = ks_statistic(xs, [](double x) { return std::clamp(x, 0.0, 1.0); });
    CHECK(d <= 1.0 / static_cast<double>(n) + 1e-12);
}

TEST_CASE("ks of samples from the reference: sqrt(N) D has the Kolmogorov scale") {
    Rng rng(901);
    const std::size_t n = 2000;
    std::vector<double> stats;
    for (int rep = 0; rep < 31; ++rep) {
        std::vector<double> xs(n);
        for (auto& x : xs) x = rng.uniform();
        stats.push_back(std::sqrt(static_cast<double>(n)) *
                        ks_statistic(xs, [](double x) { return std::clamp(x, 0.0, 1.0); }));
    }
    std::nth_element(stats.begin(), stats.begin() + stats.size() / 2, stats.end());
    const double median = stats[stats.size() / 2];
    CHECK(median > 0.55);
    CHECK(median < 1.1);
}

TEST_CASE("two-sample ks on same-law draws") {
    Rng rng(11);
    std::vector<double> a(4000), b(4000);
    for (auto& x : a) x = sample_gamma(2.0, rng);
    for (auto& x : b) x = sample_gamma(2.0, rng);
    CHECK(ks_two_sample(a, b) < 0.035);
}

TEST_CASE("cauchy cdf values") {
    CHECK(cauchy_cdf(0.0) == doctest::Approx(0.5));
    CHECK(cauchy_cdf(1.0) == doctest::Approx(0.75));
    CHECK(cauchy_cdf(-1.0) == doctest::Approx(0.25));
}

TEST_CASE("gamma sampler matches its moments") {
    Rng rng(42);
    for (double shape : {0.5, 3.0}) {
        const std::size_t n = 200000;
        std::vector<double> xs(n);
        for (auto& x : xs) x = sample_gamma(shape, rng);
        const MeanSe ms = mean_with_se(xs);
        CHECK(std::fabs(ms.mean - shape) < 3.0 * ms.se);
    }
    CHECK_THROWS_AS(sample_gamma(0.0, rng), std::invalid_argument);
}

TEST_CASE("gamma draws match the incomplete-gamma cdf") {
    Rng rng(43);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = sample_gamma(2.5, rng);
    const double d =
        ks_statistic(xs, [](double x) { return specfun::reg_inc_gamma_lower(2.5, x); });
    CHECK(d < 0.015);
}

TEST_CASE("gamma_reciprocal_cdf closed form at mu = 1/2") {
    // P(2/Gamma_1 <= x) = e^{-2/x}
    for (double x : {0.4, 1.0, 3.0, 10.0}) {
        CHECK(gamma_reciprocal_cdf(0.5, x) == doctest::Approx(std::exp(-2.0 / x)).epsilon(1e-12));
    }
    // mu = 1: F(x) = e^{-2/x} (1 + 2/x)
    struct Probe { double x, f; };
    const Probe probes[] = {{0.5, 0.091578194443670901}, {1.0, 0.40600584970983808},
                            {2.0, 0.73575888234288464},  {4.0, 0.90979598956895014},
                            {10.0, 0.98247690369357823}};
    for (const auto& pr : probes) {
        CHECK(gamma_reciprocal_cdf(1.0, pr.x) == doctest::Approx(pr.f).epsilon(1e-10));
    }
    // monotone with limits 0 and 1
    double prev = 0.0;
    for (double x = 0.01; x < 400.0; x *= 1.7) {
        const double f = gamma_reciprocal_cdf(1.0, x);
        CHECK(f >= prev);
        prev = f;
    }
    CHECK(gamma_reciprocal_cdf(1.0, -1.0) == 0.0);
    CHECK(prev > 0.995);
    CHECK_THROWS_AS(gamma_reciprocal_cdf(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("l1 distance of a consistent histogram is small") {
    Rng rng(7);
    std::vector<double> xs(1000000);
    for (auto& x : xs) x = sample_gamma(2.0, rng);
    const Histogram h = make_histogram(xs, 200, 0.0, 14.0);
    const double l1 =
        l1_density_distance(h, [](double x) { return x <= 0 ? 0.0 : specfun::reg_inc_gamma_lower(2.0, x); });
    CHECK(l1 < 0.02);
}

TEST_CASE("hill estimator on synthetic heavy tails") {
    Rng rng(99);
    std::vector<double> pareto(10000), cauchy(10000);
    for (auto& x : pareto) x = 1.0 / rng.uniform();
    for (auto& x : cauchy) x = std::tan(std::numbers::pi * (rng.uniform() - 0.5));
    const double hp = hill_tail_index(pareto, 0.05);
    CHECK(hp > 0.9);
    CHECK(hp < 1.1);
    const double hc = hill_tail_index(cauchy, 0.05);
    CHECK(hc > 0.8);
    CHECK(hc < 1.2);
    CHECK_THROWS_AS(hill_tail_index(std::vector<double>{}, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(hill_tail_index(pareto, 0.7), std::invalid_argument);
}

TEST_CASE("stream derivation decorrelates replicas") {
    // means over distinct streams behave like independent draws
    const std::uint64_t base = 777;
    CHECK(derive_stream_seed(base, 0) != derive_stream_seed(base, 1));
    CHECK(derive_stream_seed(base, 0) != derive_stream_seed(base + 1, 0));
    Rng a(derive_stream_seed(base, 0));
    Rng b(derive_stream_seed(base, 1));
    double corr = 0.0;
    for (int i = 0; i < 20000; ++i) corr += a.normal() * b.normal();
    corr /= 20000.0;
    CHECK(std::fabs(corr) < 0.03);
}

TEST_CASE("rng determinism and poisson law") {
    Rng a(5), b(5);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng rng(17);
    double sum = 0.0, sum2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(rng.poisson(30.0));
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(mean == doctest::Approx(30.0).epsilon(0.01));
    CHECK(var == doctest::Approx(30.0).epsilon(0.05));
}

} // TEST_SUITE
