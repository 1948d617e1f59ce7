#pragma once

namespace levylab {
namespace specfun {

// log Gamma(x) for x > 0.
double lgamma_pos(double x);

// Euler Beta B(a,b), a,b > 0, via log-gamma differences.
double beta(double a, double b);

// Regularised lower incomplete gamma P(s,x), s > 0, x >= 0.
// Series for x < s+1, continued fraction otherwise.
double reg_inc_gamma_lower(double s, double x);

// Modified Bessel function of the second kind K_nu(x), x > 0.
// Evaluated from the integral representation
//   K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du
// by trapezoidal summation, which converges double-exponentially here.
// K_{-nu} = K_nu, so the sign of nu is immaterial.
double bessel_k(double nu, double x);

// Gauss hypergeometric 2F1(a,b;c;z) for z < 1 (direct series on [0,1),
// Pfaff transformation for z < 0). c must not be a nonpositive integer.
double gauss_2f1(double a, double b, double c, double z);

} // namespace specfun
} // namespace levylab
