#pragma once

#include <functional>

namespace levylab {

// Adaptive Gauss-Kronrod (G7,K15) quadrature on a finite interval.
// Bisects until the local K-G error estimate is below the share of abs_tol
// allotted to the subinterval. Integrable endpoint behaviour should be
// removed by a substitution before calling; the routine assumes the
// integrand is finite on [a,b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 48);

// Single non-adaptive K15 panel, for precomputed smooth panels.
double gk15_panel(const std::function<double(double)>& f, double a, double b);

} // namespace levylab
