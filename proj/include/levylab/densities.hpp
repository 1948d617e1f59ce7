#pragma once

#include <vector>

namespace levylab {

enum class DensityFamily { example1, example2 };

// Closed-form stationary density of Z_infinity at energy E = -k^2:
//   example1 (no jumps, sigma2 > 0):
//     f(z) = C z^{-2a/sigma2 - 1} exp(-(2/sigma2)(k^2 z + 1/z)) on (0, inf)
//   example2 (sigma = 0, exponential jumps):
//     f(z) = C z^q (z - z_minus)^{-nu-1} (z_plus - z)^{nu-1} on (0, z_plus)
// The normalisation is fixed by adaptive quadrature (the closed-form
// Beta/2F1 expression for example2 is a cross-check, not the source of C).
// Densities are immutable after construction and safe to share.
class StationaryDensity {
public:
    static StationaryDensity example1(double a, double sigma2, double k);
    static StationaryDensity example2(double mu, double p, double q, double k);

    DensityFamily family() const { return family_; }

    double log_pdf(double z) const; // -inf outside the support
    double pdf(double z) const;
    double cdf(double z) const;
    // First moment; throws numeric_error for divergent-moment parameters
    // (example1 with k = 0 and 2a/sigma2 <= 1).
    double mean() const;
    double log_norm() const { return log_norm_; } // log C

    double support_min() const { return 0.0; }
    double support_max() const; // z_plus, or +inf for example1

    // example2 only
    double z_plus() const;
    double z_minus() const;
    double nu() const;

private:
    StationaryDensity() = default;
    void build_tables();
    double unnormalized_log(double z) const;

    DensityFamily family_{};
    // example1 params
    double a_{}, sigma2_{};
    // example2 params
    double mu_{}, p_{}, q_{};
    double k_{};
    double zp_{}, zm_{}, nu_param_{};

    double log_norm_{};
    double mean_{};

    // cdf panel table in the transformed coordinate (u = log z for example1,
    // u = (z_plus - z)^nu for example2): nodes and cumulative mass.
    std::vector<double> u_nodes_;
    std::vector<double> cum_;
    double total_{};
    double peak_log_{};
};

} // namespace levylab
