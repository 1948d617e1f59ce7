#include "levylab/densities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "levylab/errors.hpp"
#include "levylab/quadrature.hpp"

namespace levylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kCdfPanels = 2048;

// Peak of a concave function by ternary search.
double find_peak(const std::function<double(double)>& f, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2)) lo = m1; else hi = m2;
    }
    return 0.5 * (lo + hi);
}

// Abscissa where f drops below f(peak) - drop, searching from peak toward end.
double find_cutoff(const std::function<double(double)>& f, double peak, double end,
                   double threshold) {
    if (f(end) > threshold) return end;
    double a = peak, b = end;
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        if (f(m) > threshold) a = m; else b = m;
    }
    return b;
}

} // namespace

double StationaryDensity::unnormalized_log(double z) const {
    if (family_ == DensityFamily::example1) {
        if (!(z > 0.0)) return -kInf;
        return (-2.0 * a_ / sigma2_ - 1.0) * std::log(z)
               - (2.0 / sigma2_) * (k_ * k_ * z + 1.0 / z);
    }
    if (!(z > 0.0) || z >= zp_) return -kInf;
    return q_ * std::log(z) - (nu_param_ + 1.0) * std::log(z - zm_)
           + (nu_param_ - 1.0) * std::log(zp_ - z);
}

StationaryDensity StationaryDensity::example1(double a, double sigma2, double k) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("example1: sigma2 must be > 0");
    if (!(k >= 0.0)) throw std::invalid_argument("example1: k must be >= 0");
    if (k == 0.0 && !(a > 0.0))
        throw std::invalid_argument("example1: non-integrable at infinity (k = 0 needs a > 0)");
    StationaryDensity d;
    d.family_ = DensityFamily::example1;
    d.a_ = a;
    d.sigma2_ = sigma2;
    d.k_ = k;
    d.build_tables();
    return d;
}

StationaryDensity StationaryDensity::example2(double mu, double p, double q, double k) {
    if (!(mu >= 0.0)) throw std::invalid_argument("example2: mu must be >= 0");
    if (!(p > 0.0) || !(q > 0.0) || !(k > 0.0))
        throw std::invalid_argument("example2: p, q, k must be > 0");
    StationaryDensity d;
    d.family_ = DensityFamily::example2;
    d.mu_ = mu;
    d.p_ = p;
    d.q_ = q;
    d.k_ = k;
    const double kappa = std::sqrt(4.0 * k * k + mu * mu);
    d.nu_param_ = p / kappa;
    d.zp_ = (kappa - mu) / (2.0 * k * k);
    d.zm_ = (-kappa - mu) / (2.0 * k * k);
    d.build_tables();
    return d;
}

void StationaryDensity::build_tables() {
    if (family_ == DensityFamily::example1) {
        // mass integrand in u = log z: g(u) = f(e^u) e^u
        const auto llog = [this](double u) {
            return (-2.0 * a_ / sigma2_) * u - (2.0 / sigma2_) * (k_ * k_ * std::exp(u) + std::exp(-u));
        };
        // upper search range: for k = 0 the decay is only linear, slope 2a/sigma2
        const double hi_end = k_ > 0.0 ? 760.0
                                       : std::max(760.0, 900.0 * sigma2_ / (2.0 * a_));
        const double u_peak = find_peak(llog, -750.0, hi_end);
        peak_log_ = llog(u_peak);
        const double thr = peak_log_ - 745.0;
        const double u_lo = find_cutoff(llog, u_peak, -760.0, thr);
        const double u_hi = find_cutoff(llog, u_peak, hi_end, thr);
        const auto g = [&, this](double u) { return std::exp(llog(u) - peak_log_); };

        const double norm = integrate(g, u_lo, u_hi, 1e-13 * (u_hi - u_lo));
        log_norm_ = -(std::log(norm) + peak_log_);

        // first moment: tilt by e^u; finite for k > 0, or k = 0 with 2a/sigma2 > 1
        if (k_ > 0.0 || 2.0 * a_ / sigma2_ > 1.0) {
            const auto lhog = [&](double u) { return llog(u) + u; };
            const double m_end = k_ > 0.0 ? 760.0
                                          : std::max(760.0, 900.0 * sigma2_ / (2.0 * a_ - sigma2_));
            const double v_peak = find_peak(lhog, -750.0, m_end);
            const double mpk = lhog(v_peak);
            const double v_lo = find_cutoff(lhog, v_peak, -760.0, mpk - 745.0);
            const double v_hi = find_cutoff(lhog, v_peak, m_end, mpk - 745.0);
            const double m = integrate([&](double u) { return std::exp(lhog(u) - mpk); },
                                       v_lo, v_hi, 1e-13 * (v_hi - v_lo));
            mean_ = m * std::exp(mpk - peak_log_) / norm;
        } else {
            mean_ = std::numeric_limits<double>::quiet_NaN();
        }

        u_nodes_.resize(kCdfPanels + 1);
        cum_.assign(kCdfPanels + 1, 0.0);
        for (int i = 0; i <= kCdfPanels; ++i)
            u_nodes_[i] = u_lo + (u_hi - u_lo) * i / kCdfPanels;
        for (int i = 1; i <= kCdfPanels; ++i)
            cum_[i] = cum_[i - 1] + gk15_panel(g, u_nodes_[i - 1], u_nodes_[i]);
        total_ = cum_.back();
        return;
    }

    // example2: u = (z_plus - z)^nu maps (0, z_plus) to (0, z_plus^nu) and
    // absorbs the (z_plus - z)^{nu-1} endpoint factor exactly:
    //   f dz = (1/nu) z^q (z - z_minus)^{-nu-1} du
    const double nu = nu_param_;
    const auto z_of_u = [this, nu](double u) { return zp_ - std::pow(u, 1.0 / nu); };
    const auto g = [this, nu, z_of_u](double u) {
        const double z = z_of_u(u);
        if (!(z > 0.0)) return 0.0;
        return std::pow(z, q_) * std::pow(z - zm_, -nu - 1.0) / nu;
    };
    const double u_max = std::pow(zp_, nu);
    peak_log_ = 0.0;

    const double scale = std::pow(zp_, q_) * std::pow(-zm_, -nu - 1.0) / nu;
    const double norm = integrate(g, 0.0, u_max, 1e-13 * scale * u_max);
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw numeric_error("example2: normalisation integral failed");
    log_norm_ = -std::log(norm);
    mean_ = integrate([&](double u) { return z_of_u(u) * g(u); }, 0.0, u_max,
                      1e-13 * scale * u_max * zp_) / norm;

    u_nodes_.resize(kCdfPanels + 1);
    cum_.assign(kCdfPanels + 1, 0.0);
    for (int i = 0; i <= kCdfPanels; ++i)
        u_nodes_[i] = u_max * i / kCdfPanels;
    for (int i = 1; i <= kCdfPanels; ++i)
        cum_[i] = cum_[i - 1] + gk15_panel(g, u_nodes_[i - 1], u_nodes_[i]);
    total_ = cum_.back();
}

double StationaryDensity::log_pdf(double z) const {
    const double l = unnormalized_log(z);
    return l == -kInf ? -kInf : log_norm_ + l;
}

double StationaryDensity::pdf(double z) const {
    const double l = log_pdf(z);
    return l == -kInf ? 0.0 : std::exp(l);
}

double StationaryDensity::cdf(double z) const {
    if (family_ == DensityFamily::example1) {
        if (!(z > 0.0)) return 0.0;
        const double u = std::log(z);
        if (u <= u_nodes_.front()) return 0.0;
        if (u >= u_nodes_.back()) return 1.0;
        const auto it = std::upper_bound(u_nodes_.begin(), u_nodes_.end(), u);
        const std::size_t j = static_cast<std::size_t>(it - u_nodes_.begin()) - 1;
        const auto g = [this](double v) { return std::exp(
            (-2.0 * a_ / sigma2_) * v - (2.0 / sigma2_) * (k_ * k_ * std::exp(v) + std::exp(-v))
            - peak_log_); };
        const double c = cum_[j] + gk15_panel(g, u_nodes_[j], u);
        return std::clamp(c / total_, 0.0, 1.0);
    }
    if (!(z > 0.0)) return 0.0;
    if (z >= zp_) return 1.0;
    const double nu = nu_param_;
    const double u = std::pow(zp_ - z, nu);
    if (u >= u_nodes_.back()) return 0.0;
    const auto it = std::upper_bound(u_nodes_.begin(), u_nodes_.end(), u);
    const std::size_t j = static_cast<std::size_t>(it - u_nodes_.begin()) - 1;
    const auto g = [this, nu](double v) {
        const double zz = zp_ - std::pow(v, 1.0 / nu);
        if (!(zz > 0.0)) return 0.0;
        return std::pow(zz, q_) * std::pow(zz - zm_, -nu - 1.0) / nu;
    };
    const double tail = cum_[j] + gk15_panel(g, u_nodes_[j], u);
    return std::clamp(1.0 - tail / total_, 0.0, 1.0);
}

double StationaryDensity::mean() const {
    if (std::isnan(mean_))
        throw numeric_error("StationaryDensity::mean: first moment diverges for these parameters");
    return mean_;
}

double StationaryDensity::support_max() const {
    return family_ == DensityFamily::example2 ? zp_ : kInf;
}

double StationaryDensity::z_plus() const {
    if (family_ != DensityFamily::example2) throw std::logic_error("z_plus: example2 only");
    return zp_;
}

double StationaryDensity::z_minus() const {
    if (family_ != DensityFamily::example2) throw std::logic_error("z_minus: example2 only");
    return zm_;
}

double StationaryDensity::nu() const {
    if (family_ != DensityFamily::example2) throw std::logic_error("nu: example2 only");
    return nu_param_;
}

} // namespace levylab
