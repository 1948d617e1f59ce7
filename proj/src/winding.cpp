#include "levylab/winding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levylab {

WindingTrace sample_winding_angle(double t, double r0, const WindingParams& params,
                                  std::uint64_t seed,
                                  std::vector<AngularIncrement>* record) {
    if (!(t > 0.0)) throw std::invalid_argument("sample_winding_angle: t must be > 0");
    if (!(r0 > 0.0)) throw std::invalid_argument("sample_winding_angle: r0 must be > 0");
    if (!(params.eps > 0.0)) throw std::invalid_argument("sample_winding_angle: eps must be > 0");
    if (!(params.r_star > 0.0))
        throw std::invalid_argument("sample_winding_angle: r_star must be > 0");
    const double r_floor = params.floor_radius > 0.0 ? params.floor_radius : 1e-3 * r0;
    if (!(r_floor <= 0.5 * params.r_star))
        throw std::invalid_argument("sample_winding_angle: floor_radius must sit below r_star");

    Rng rng(seed);
    double x = r0, y = 0.0;
    double r_prev = r0;
    double elapsed = 0.0;
    double big = 0.0, small = 0.0;
    std::uint64_t steps = 0;
    const double floor2 = r_floor * r_floor;

    while (elapsed < t) {
        const double r2 = x * x + y * y;
        if (r2 < floor2) {
            // Skew-product fast-forward of the sub-floor excursion: the
            // angular clock until first return to the floor is the exact
            // first-passage time d^2/N^2 of the log-radius, and the swept
            // angle is N(0, clock). Real time spent below is at most
            // floor2 * clock and is accounted with a factor 1/2.
            const double d = std::log(r_floor / std::sqrt(std::max(r2, 1e-300)));
            double n;
            do { n = rng.normal(); } while (n == 0.0);
            const double clock = (d / n) * (d / n);
            const double dtheta = std::sqrt(clock) * rng.normal();
            small += dtheta;
            elapsed += std::min(0.5 * floor2 * clock, t - elapsed);
            const double ang = std::atan2(y, x) + dtheta;
            x = r_floor * std::cos(ang);
            y = r_floor * std::sin(ang);
            r_prev = r_floor;
            if (record) record->push_back({dtheta, 0.5 * (std::sqrt(r2) + r_floor)});
            ++steps;
            continue;
        }
        const double dt = std::min(params.eps * r2, t - elapsed);
        const double s = std::sqrt(dt);
        const double x2 = x + s * rng.normal();
        const double y2 = y + s * rng.normal();
        const double dtheta = std::atan2(x * y2 - y * x2, x * x2 + y * y2);
        const double r_new = std::sqrt(x2 * x2 + y2 * y2);
        const double mid_r = 0.5 * (r_prev + r_new);
        if (mid_r >= params.r_star) big += dtheta; else small += dtheta;
        if (record) record->push_back({dtheta, mid_r});
        elapsed += dt;
        x = x2;
        y = y2;
        r_prev = r_new;
        ++steps;
    }

    WindingTrace trace;
    trace.big_angle = big;
    trace.small_angle = small;
    trace.total_angle = big + small;
    trace.horizon = t;
    trace.start_radius = r0;
    trace.steps = steps;
    return trace;
}

std::pair<double, double> split_windings(std::span<const AngularIncrement> increments,
                                         double r_star) {
    if (!(r_star > 0.0)) throw std::invalid_argument("split_windings: r_star must be > 0");
    double big = 0.0, small = 0.0;
    for (const auto& inc : increments) {
        if (inc.mid_radius >= r_star) big += inc.dtheta; else small += inc.dtheta;
    }
    return {big, small};
}

std::vector<Vec2> sample_bridge(double t, int n_steps, std::uint64_t seed) {
    if (!(t > 0.0)) throw std::invalid_argument("sample_bridge: t must be > 0");
    if (n_steps < 3) throw std::invalid_argument("sample_bridge: n_steps must be >= 3");
    Rng rng(seed);
    const double sd = std::sqrt(t / n_steps);
    std::vector<Vec2> pts(static_cast<std::size_t>(n_steps) + 1);
    pts[0] = {0.0, 0.0};
    double bx = 0.0, by = 0.0;
    for (int i = 1; i <= n_steps; ++i) {
        bx += sd * rng.normal();
        by += sd * rng.normal();
        pts[static_cast<std::size_t>(i)] = {bx, by};
    }
    for (int i = 1; i < n_steps; ++i) {
        const double f = static_cast<double>(i) / n_steps;
        pts[static_cast<std::size_t>(i)].x -= f * bx;
        pts[static_cast<std::size_t>(i)].y -= f * by;
    }
    pts.back() = pts.front();
    return pts;
}

Box bounding_square(const std::vector<Vec2>& polygon, double pad_fraction) {
    if (polygon.size() < 4) throw std::invalid_argument("bounding_square: degenerate polygon");
    double xmin = polygon[0].x, xmax = polygon[0].x;
    double ymin = polygon[0].y, ymax = polygon[0].y;
    for (const auto& p : polygon) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double side = std::max(xmax - xmin, ymax - ymin) * (1.0 + 2.0 * pad_fraction);
    const double cx = 0.5 * (xmin + xmax);
    const double cy = 0.5 * (ymin + ymax);
    return Box{cx - 0.5 * side, cy - 0.5 * side, side};
}

namespace {

// Supercover traversal (Amanatides-Woo): flag every cell the segment passes
// through.
void raster_segment(std::vector<std::uint8_t>& flags, int res, const Box& box, const Vec2& a,
                    const Vec2& b) {
    const double cell = box.size / res;
    const auto cell_of = [&](double x, double y, int& c, int& r) {
        c = std::clamp(static_cast<int>(std::floor((x - box.xmin) / cell)), 0, res - 1);
        r = std::clamp(static_cast<int>(std::floor((y - box.ymin) / cell)), 0, res - 1);
    };
    int c0, r0, c1, r1;
    cell_of(a.x, a.y, c0, r0);
    cell_of(b.x, b.y, c1, r1);
    const double dx = b.x - a.x, dy = b.y - a.y;
    int c = c0, r = r0;
    flags[static_cast<std::size_t>(r) * res + c] = 1;
    const int step_c = dx > 0 ? 1 : -1;
    const int step_r = dy > 0 ? 1 : -1;
    double t_max_x = dx != 0.0 ? ((box.xmin + (c + (dx > 0 ? 1 : 0)) * cell) - a.x) / dx : 1e300;
    double t_max_y = dy != 0.0 ? ((box.ymin + (r + (dy > 0 ? 1 : 0)) * cell) - a.y) / dy : 1e300;
    const double t_dx = dx != 0.0 ? std::fabs(cell / dx) : 1e300;
    const double t_dy = dy != 0.0 ? std::fabs(cell / dy) : 1e300;
    while (c != c1 || r != r1) {
        if (t_max_x < t_max_y) {
            c += step_c;
            t_max_x += t_dx;
        } else {
            r += step_r;
            t_max_y += t_dy;
        }
        if (c < 0 || c >= res || r < 0 || r >= res) break;
        flags[static_cast<std::size_t>(r) * res + c] = 1;
    }
}

} // namespace

WindingField winding_field(const std::vector<Vec2>& polygon, const Box& box, int resolution) {
    if (polygon.size() < 4) throw std::invalid_argument("winding_field: degenerate polygon");
    if (polygon.front().x != polygon.back().x || polygon.front().y != polygon.back().y)
        throw std::invalid_argument("winding_field: polygon must be closed");
    if (resolution < 2) throw std::invalid_argument("winding_field: resolution must be >= 2");
    for (const auto& p : polygon) {
        if (p.x < box.xmin || p.x > box.xmin + box.size || p.y < box.ymin ||
            p.y > box.ymin + box.size)
            throw std::invalid_argument("winding_field: box must contain the polygon");
    }

    const int res = resolution;
    const double cell = box.size / res;
    WindingField field;
    field.resolution = res;
    field.cell_area = cell * cell;
    field.grid.assign(static_cast<std::size_t>(res) * res, 0);
    field.boundary.assign(static_cast<std::size_t>(res) * res, 0);

    const std::size_t n_edges = polygon.size() - 1;

    // Edge buckets per row of cell centres: y_c(row) = ymin + (row + 1/2) cell.
    std::vector<std::vector<std::uint32_t>> row_edges(static_cast<std::size_t>(res));
    for (std::size_t e = 0; e < n_edges; ++e) {
        const double y1 = polygon[e].y, y2 = polygon[e + 1].y;
        const double ylo = std::min(y1, y2), yhi = std::max(y1, y2);
        // rows whose centre lies in [ylo, yhi)
        int r_lo = static_cast<int>(std::ceil((ylo - box.ymin) / cell - 0.5));
        int r_hi = static_cast<int>(std::floor((yhi - box.ymin) / cell - 0.5));
        r_lo = std::max(r_lo, 0);
        r_hi = std::min(r_hi, res - 1);
        for (int r = r_lo; r <= r_hi; ++r) {
            const double yc = box.ymin + (r + 0.5) * cell;
            const bool up = y1 <= yc && yc < y2;
            const bool down = y2 <= yc && yc < y1;
            if (up || down) row_edges[static_cast<std::size_t>(r)].push_back(static_cast<std::uint32_t>(e));
        }
    }

    // Scanline winding numbers: crossing at x_cross with direction +-1;
    // w(x) = sum over crossings right of x, so walking left to right the
    // index drops by the crossing direction.
    std::vector<std::pair<double, int>> crossings;
    for (int r = 0; r < res; ++r) {
        const double yc = box.ymin + (r + 0.5) * cell;
        crossings.clear();
        for (auto e : row_edges[static_cast<std::size_t>(r)]) {
            const Vec2& a = polygon[e];
            const Vec2& b = polygon[e + 1];
            const int dir = a.y <= yc ? 1 : -1; // upward edge: +1
            const double xc = a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y);
            crossings.emplace_back(xc, dir);
        }
        std::sort(crossings.begin(), crossings.end());
        int w = 0;
        for (const auto& c : crossings) w += c.second;
        std::size_t ci = 0;
        std::int32_t* row_ptr = field.grid.data() + static_cast<std::size_t>(r) * res;
        for (int col = 0; col < res; ++col) {
            const double xc_cell = box.xmin + (col + 0.5) * cell;
            while (ci < crossings.size() && crossings[ci].first <= xc_cell) {
                w -= crossings[ci].second;
                ++ci;
            }
            row_ptr[col] = w;
        }
    }

    // Boundary flags: cells the curve passes through.
    for (std::size_t e = 0; e < n_edges; ++e)
        raster_segment(field.boundary, res, box, polygon[e], polygon[e + 1]);

    // Flood fill from the box border through unflagged zero-index cells;
    // whatever it cannot reach is enclosed by the curve.
    std::vector<std::uint8_t> reached(field.grid.size(), 0);
    std::vector<std::uint32_t> stack;
    const auto try_push = [&](int r, int c) {
        if (r < 0 || r >= res || c < 0 || c >= res) return;
        const std::size_t idx = static_cast<std::size_t>(r) * res + c;
        if (reached[idx] || field.boundary[idx] || field.grid[idx] != 0) return;
        reached[idx] = 1;
        stack.push_back(static_cast<std::uint32_t>(idx));
    };
    for (int r = 0; r < res; ++r) {
        try_push(r, 0);
        try_push(r, res - 1);
    }
    for (int c = 0; c < res; ++c) {
        try_push(0, c);
        try_push(res - 1, c);
    }
    while (!stack.empty()) {
        const std::uint32_t idx = stack.back();
        stack.pop_back();
        const int r = static_cast<int>(idx) / res;
        const int c = static_cast<int>(idx) % res;
        try_push(r + 1, c);
        try_push(r - 1, c);
        try_push(r, c + 1);
        try_push(r, c - 1);
    }

    // Sector areas: boundary cells straddle the curve, so they count at half
    // weight. The zero-sector inside part takes unreached zero cells only.
    double inside_zero = 0.0;
    double enclosed = 0.0;
    double signed_sum = 0.0;
    for (std::size_t i = 0; i < field.grid.size(); ++i) {
        const int w = field.grid[i];
        const double weight = field.boundary[i] ? 0.5 : 1.0;
        if (w != 0) field.sector_areas[w] += weight * field.cell_area;
        signed_sum += w * field.cell_area;
        if (w == 0 && !reached[i]) inside_zero += weight * field.cell_area;
        if (!reached[i]) enclosed += field.cell_area;
    }
    field.algebraic_area = 0.0;
    for (const auto& [n, area] : field.sector_areas) field.algebraic_area += n * area;
    field.zero_sector_inside = inside_zero;
    field.arithmetic_area = enclosed;
    field.grid_signed_area = signed_sum;
    return field;
}

double polygon_signed_area(const std::vector<Vec2>& polygon) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < polygon.size(); ++i)
        s += polygon[i].x * polygon[i + 1].y - polygon[i + 1].x * polygon[i].y;
    return 0.5 * s;
}

ExperimentReport sector_statistics(const std::vector<WindingField>& fields, int n_max) {
    if (fields.size() < 2) throw std::invalid_argument("sector_statistics: need >= 2 fields");
    if (n_max < 1) throw std::invalid_argument("sector_statistics: n_max must be >= 1");
    ExperimentReport report;
    report.experiment = "sectors";
    report.replicas = fields.size();

    const auto add = [&report](const std::string& name, const std::vector<double>& xs) {
        const MeanSe ms = mean_with_se(xs);
        report.estimates[name] = Estimate{ms.mean, ms.se, xs.size()};
    };

    std::vector<double> buf(fields.size());
    for (int n = -n_max; n <= n_max; ++n) {
        if (n == 0) continue;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const auto it = fields[i].sector_areas.find(n);
            buf[i] = it == fields[i].sector_areas.end() ? 0.0 : it->second;
        }
        add("A_" + std::to_string(n), buf);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) buf[i] = fields[i].arithmetic_area;
    add("arithmetic_area", buf);
    for (std::size_t i = 0; i < fields.size(); ++i) buf[i] = fields[i].algebraic_area;
    add("algebraic_area", buf);
    for (std::size_t i = 0; i < fields.size(); ++i) buf[i] = fields[i].zero_sector_inside;
    add("A0_inside", buf);
    return report;
}

double partition_deficit(double alpha, std::int64_t n_max) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("partition_deficit: alpha must lie in [0,1]");
    if (n_max < 1) throw std::invalid_argument("partition_deficit: n_max must be >= 1");
    const double w = 2.0 * std::numbers::pi * alpha;
    double s = 0.0;
    for (std::int64_t n = n_max; n >= 1; --n) {
        const double dn = static_cast<double>(n);
        s += (std::cos(w * dn) - 1.0) / (dn * dn);
    }
    return s / (2.0 * std::numbers::pi * std::numbers::pi);
}

double partition_deficit_limit(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("partition_deficit_limit: alpha must lie in [0,1]");
    return -0.5 * alpha * (1.0 - alpha);
}

} // namespace levylab
