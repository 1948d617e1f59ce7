#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "levylab/stats.hpp"
#include "levylab/winding.hpp"

using namespace levylab;

namespace {

std::vector<Vec2> circle_polygon(double cx, double cy, double r, int n, bool ccw) {
    std::vector<Vec2> pts(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / n * (ccw ? 1.0 : -1.0);
        pts[static_cast<std::size_t>(i)] = {cx + r * std::cos(phi), cy + r * std::sin(phi)};
    }
    pts.back() = pts.front();
    return pts;
}

// two opposite lobes traced through the origin: left lobe CCW, right lobe CW
std::vector<Vec2> figure_eight(double r, int n_per_lobe) {
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(2 * n_per_lobe) + 1);
    for (int i = 0; i < n_per_lobe; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / n_per_lobe;
        pts.push_back({-r + r * std::cos(phi), r * std::sin(phi)});
    }
    for (int i = 0; i < n_per_lobe; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / n_per_lobe;
        pts.push_back({r - r * std::cos(phi), r * std::sin(phi)});
    }
    pts.push_back(pts.front());
    return pts;
}

int cell_index_at(const WindingField& f, const Box& box, double x, double y) {
    const double cell = box.size / f.resolution;
    const int col = static_cast<int>((x - box.xmin) / cell);
    const int row = static_cast<int>((y - box.ymin) / cell);
    return f.grid[static_cast<std::size_t>(row) * f.resolution + col];
}

} // namespace

TEST_SUITE("winding") {

TEST_CASE("partition deficit endpoints and convergence") {
    CHECK(partition_deficit(0.0, 1000) == doctest::Approx(0.0));
    CHECK(partition_deficit(1.0, 1000) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(partition_deficit_limit(0.5) == doctest::Approx(-0.125));
    for (double alpha : {0.25, 0.5, 0.75}) {
        const double partial = partition_deficit(alpha, 1000000);
        CHECK(std::fabs(partial - partition_deficit_limit(alpha)) < 1e-6);
    }
    // symmetry alpha <-> 1 - alpha
    CHECK(partition_deficit(0.25, 5000) == doctest::Approx(partition_deficit(0.75, 5000)).epsilon(1e-14));
    CHECK_THROWS_AS(partition_deficit(1.5, 10), std::invalid_argument);
    CHECK_THROWS_AS(partition_deficit(0.5, 0), std::invalid_argument);
}

TEST_CASE("bridge endpoints, determinism and covariance") {
    const auto b1 = sample_bridge(2.0, 64, 4242);
    const auto b2 = sample_bridge(2.0, 64, 4242);
    REQUIRE(b1.size() == 65);
    CHECK(b1.front().x == 0.0);
    CHECK(b1.front().y == 0.0);
    CHECK(b1.back().x == b1.front().x);
    CHECK(b1.back().y == b1.front().y);
    for (std::size_t i = 0; i < b1.size(); ++i) {
        CHECK(b1[i].x == b2[i].x);
        CHECK(b1[i].y == b2[i].y);
    }

    // var of a coordinate at time s is s(1 - s/t)
    const double t = 2.0;
    const int n = 64;
    const int reps = 4000;
    std::vector<double> at_quarter(reps);
    for (int r = 0; r < reps; ++r) {
        const auto b = sample_bridge(t, n, derive_stream_seed(17, r));
        at_quarter[static_cast<std::size_t>(r)] = b[n / 4].x;
    }
    const double s = t * (n / 4) / n;
    const double expected = s * (1.0 - s / t);
    double var = 0.0;
    for (double x : at_quarter) var += x * x;
    var /= reps;
    // SE of a variance estimate ~ var * sqrt(2/n)
    CHECK(std::fabs(var - expected) < 3.0 * expected * std::sqrt(2.0 / reps));
}

TEST_CASE("winding field of a circle") {
    const auto poly = circle_polygon(0.0, 0.0, 1.0, 1024, true);
    const Box box{-1.5, -1.5, 3.0};
    const WindingField f = winding_field(poly, box, 512);
    CHECK(cell_index_at(f, box, 0.0, 0.0) == 1);
    CHECK(cell_index_at(f, box, 1.3, 1.3) == 0);
    CHECK(f.sector_areas.at(1) == doctest::Approx(std::numbers::pi).epsilon(0.02));
    const double shoelace = polygon_signed_area(poly);
    CHECK(f.algebraic_area == doctest::Approx(shoelace).epsilon(0.02));
    CHECK(f.grid_signed_area == doctest::Approx(shoelace).epsilon(0.01));
    // algebraic area is definitionally the weighted sector sum
    double sum = 0.0;
    for (const auto& [n, area] : f.sector_areas) sum += n * area;
    CHECK(f.algebraic_area == doctest::Approx(sum).epsilon(1e-12));
    // clockwise circle winds -1
    const WindingField g = winding_field(circle_polygon(0.0, 0.0, 1.0, 1024, false), box, 512);
    CHECK(cell_index_at(g, box, 0.0, 0.0) == -1);
    CHECK(g.algebraic_area == doctest::Approx(-std::numbers::pi).epsilon(0.02));
}

TEST_CASE("winding field of a figure eight") {
    const double r = 0.8;
    const auto poly = figure_eight(r, 1024);
    const Box box = bounding_square(poly);
    const WindingField f = winding_field(poly, box, 512);
    const double lobe = std::numbers::pi * r * r;
    CHECK(f.sector_areas.at(1) == doctest::Approx(lobe).epsilon(0.05));
    CHECK(f.sector_areas.at(-1) == doctest::Approx(lobe).epsilon(0.05));
    CHECK(std::fabs(f.algebraic_area) < 0.02 * f.arithmetic_area);
    CHECK(f.arithmetic_area == doctest::Approx(2.0 * lobe).epsilon(0.05));
}

TEST_CASE("winding field rejects bad input") {
    auto poly = circle_polygon(0.0, 0.0, 1.0, 64, true);
    CHECK_THROWS_AS(winding_field(poly, Box{-0.5, -0.5, 1.0}, 64), std::invalid_argument);
    poly.back().x += 0.1; // not closed
    CHECK_THROWS_AS(winding_field(poly, Box{-2.0, -2.0, 4.0}, 64), std::invalid_argument);
}

TEST_CASE("zero sector inside and enclosed area of a plain circle") {
    // a disk has no interior zero pockets beyond the half-weighted rim, and
    // the enclosed area is the disk itself
    const auto poly = circle_polygon(0.0, 0.0, 1.0, 2048, true);
    const WindingField f = winding_field(poly, Box{-1.5, -1.5, 3.0}, 512);
    CHECK(f.zero_sector_inside < 0.03);
    CHECK(f.arithmetic_area == doctest::Approx(std::numbers::pi).epsilon(0.02));
}

TEST_CASE("trace decomposition is an exact partition") {
    WindingParams params;
    std::vector<AngularIncrement> rec;
    const WindingTrace tr = sample_winding_angle(50.0, 1.0, params, 99, &rec);
    CHECK(tr.total_angle == tr.big_angle + tr.small_angle);
    const auto [big, small] = split_windings(rec, params.r_star);
    CHECK(big == doctest::Approx(tr.big_angle).epsilon(1e-12));
    CHECK(small == doctest::Approx(tr.small_angle).epsilon(1e-12));
    CHECK(tr.steps == rec.size());
    // a different threshold still partitions exactly
    const auto [b2, s2] = split_windings(rec, 2.5);
    CHECK(b2 + s2 == doctest::Approx(tr.total_angle).epsilon(1e-12));
}

TEST_CASE("winding sampler determinism") {
    WindingParams params;
    const WindingTrace a = sample_winding_angle(100.0, 1.0, params, 2718);
    const WindingTrace b = sample_winding_angle(100.0, 1.0, params, 2718);
    CHECK(a.total_angle == b.total_angle);
    CHECK(a.steps == b.steps);
}

TEST_CASE("winding law is symmetric about zero") {
    WindingParams params;
    const int n = 3000;
    int positive = 0;
    for (int i = 0; i < n; ++i) {
        const WindingTrace tr = sample_winding_angle(100.0, 1.0, params, derive_stream_seed(5150, i));
        if (tr.total_angle > 0.0) ++positive;
    }
    const double frac = static_cast<double>(positive) / n;
    CHECK(std::fabs(frac - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("brownian scaling leaves the winding law invariant") {
    WindingParams p1; // r0 = 1, t = 100
    WindingParams p2;
    const int n = 6000;
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        a[static_cast<std::size_t>(i)] =
            sample_winding_angle(100.0, 1.0, p1, derive_stream_seed(61, i)).total_angle;
    }
    p2.r_star = 3.0;            // thresholds scale with c
    p2.floor_radius = 3e-3;
    for (int i = 0; i < n; ++i) {
        b[static_cast<std::size_t>(i)] =
            sample_winding_angle(900.0, 3.0, p2, derive_stream_seed(62, i)).total_angle;
    }
    CHECK(ks_two_sample(a, b) < 0.03);
}

TEST_CASE("spitzer statistic approaches cauchy along a small t ladder") {
    WindingParams params;
    const int n = 4000;
    double prev_ks = 1.0;
    for (double t : {1e2, 1e4}) {
        std::vector<double> stat(n);
        for (int i = 0; i < n; ++i) {
            const auto tr = sample_winding_angle(t, 1.0, params, derive_stream_seed(777, i));
            stat[static_cast<std::size_t>(i)] = 2.0 * tr.total_angle / std::log(t);
        }
        const double ks = ks_statistic(stat, cauchy_cdf);
        CHECK(ks < prev_ks);
        prev_ks = ks;
        if (t == 1e4) {
            std::vector<double> abs_stat(stat);
            for (auto& x : abs_stat) x = std::fabs(x);
            std::sort(abs_stat.begin(), abs_stat.end());
            CHECK(std::fabs(abs_stat[n / 2] - 1.0) < 0.15);
        }
    }
}

TEST_CASE("big windings keep bounded fourth moments while the full statistic blows up") {
    WindingParams params;
    const int n = 4000;
    std::vector<double> m4p, m4f;
    for (double t : {1e2, 1e4}) {
        double sp = 0.0, sf = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto tr = sample_winding_angle(t, 1.0, params, derive_stream_seed(88, i));
            const double scale = 2.0 / std::log(t);
            const double xp = scale * tr.big_angle;
            const double xf = scale * tr.total_angle;
            sp += xp * xp * xp * xp;
            sf += xf * xf * xf * xf;
        }
        m4p.push_back(sp / n);
        m4f.push_back(sf / n);
    }
    CHECK(m4p[1] < 5.0 * m4p[0]);
    CHECK(m4p[0] < 5.0 * m4p[1]);
    CHECK(m4f[0] > 50.0 * m4p[0]);
    CHECK(m4f[1] > 50.0 * m4p[1]);
}

TEST_CASE("sector statistics aggregates fields") {
    std::vector<WindingField> fields;
    for (int i = 0; i < 4; ++i) {
        const auto poly = sample_bridge(1.0, 512, derive_stream_seed(9000, i));
        fields.push_back(winding_field(poly, bounding_square(poly), 128));
    }
    const ExperimentReport rep = sector_statistics(fields, 3);
    CHECK(rep.estimates.count("A_1") == 1);
    CHECK(rep.estimates.count("A_-3") == 1);
    CHECK(rep.estimates.count("arithmetic_area") == 1);
    CHECK(rep.estimates.at("A_1").n_samples == 4);
    CHECK(rep.estimates.at("A_1").value >= 0.0);
    CHECK_THROWS_AS(sector_statistics({fields[0]}, 3), std::invalid_argument);
}

TEST_CASE("winding parameter validation") {
    WindingParams params;
    CHECK_THROWS_AS(sample_winding_angle(0.0, 1.0, params, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_winding_angle(1.0, 0.0, params, 1), std::invalid_argument);
    params.floor_radius = 0.9; // too close to r_star
    CHECK_THROWS_AS(sample_winding_angle(1.0, 1.0, params, 1), std::invalid_argument);
}

} // TEST_SUITE
