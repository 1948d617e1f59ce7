#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "levylab/stats.hpp"

namespace levylab {

struct Vec2 {
    double x{};
    double y{};
};

// One angular step of the planar walk: signed turn and the radius at which
// it happened (midpoint of the step endpoints' radii).
struct AngularIncrement {
    double dtheta{};
    double mid_radius{};
};

struct WindingTrace {
    double total_angle{};
    double big_angle{};
    double small_angle{};
    double horizon{};
    double start_radius{};
    std::uint64_t steps{};
};

struct WindingParams {
    double eps = 1e-3;          // adaptive step constant: dt = eps |Z|^2
    double r_star = 1.0;        // big/small decomposition threshold
    double floor_radius = -1.0; // < 0 means 1e-3 * r0
};

// Winding angle theta_t of planar Brownian motion started at (r0, 0).
// Above floor_radius the walk takes exact Gaussian increments with adaptive
// step dt = eps |Z|^2 (the final partial step lands exactly on t) and the
// angle accumulates as atan2-based increments. Excursions below floor_radius
// are resolved by the skew-product: the angular clock spent below is the
// exact first-passage time of the log-radial motion back to the floor, and
// the angle swept is a centred Gaussian with that variance. Those turns are
// all assigned to the small-winding component.
WindingTrace sample_winding_angle(double t, double r0, const WindingParams& params,
                                  std::uint64_t seed,
                                  std::vector<AngularIncrement>* record = nullptr);

// Assign each increment to (big, small) by mid_radius >= r_star; the pair
// sums to the total angle exactly.
std::pair<double, double> split_windings(std::span<const AngularIncrement> increments,
                                         double r_star);

// Planar Brownian bridge over [0, t] sampled at n_steps uniform times,
// closed polygon (first point repeated last).
std::vector<Vec2> sample_bridge(double t, int n_steps, std::uint64_t seed);

struct Box {
    double xmin{};
    double ymin{};
    double size{};
};

// Smallest padded square box containing the polygon.
Box bounding_square(const std::vector<Vec2>& polygon, double pad_fraction = 0.05);

// Winding-number field of a closed polygon on a resolution^2 grid over a
// square box. Cells the curve passes through (exact supercover traversal)
// are flagged boundary; the sector boundary runs through them, so they enter
// the sector-area sums at half weight. A_n is the (weighted) area of the
// index-n cells and algebraic_area = sum n A_n. zero_sector_inside is the
// zero-index area not connected to the box border by a 4-neighbour flood
// through unflagged zero cells. arithmetic_area is the area enclosed by the
// curve: everything the flood cannot reach. grid_signed_area is the plain
// Riemann sum of the index field (all cells, full weight), which tracks the
// shoelace area of the polygon.
struct WindingField {
    int resolution{};
    double cell_area{};
    std::vector<std::int32_t> grid;    // winding index per cell, row-major
    std::vector<std::uint8_t> boundary;
    std::map<int, double> sector_areas;
    double algebraic_area{};
    double arithmetic_area{};
    double zero_sector_inside{};
    double grid_signed_area{};
};

WindingField winding_field(const std::vector<Vec2>& polygon, const Box& box, int resolution);

// Shoelace signed area of a closed polygon.
double polygon_signed_area(const std::vector<Vec2>& polygon);

// Means and standard errors of A_n (|n| <= n_max), the arithmetic and
// algebraic areas and the inside zero sector, over replica fields.
ExperimentReport sector_statistics(const std::vector<WindingField>& fields, int n_max);

// Partial sum of the partition-function deficit
//   (1/(2 pi t)) sum_{0<|n|<=n_max} (e^{-2 pi i alpha n} - 1) E(A_n)
// with E(A_n) = t/(2 pi n^2); real by symmetry and independent of t.
double partition_deficit(double alpha, std::int64_t n_max);

// n_max -> infinity limit: -alpha(1-alpha)/2.
double partition_deficit_limit(double alpha);

} // namespace levylab
