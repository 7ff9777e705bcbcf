#pragma once

// Elementary special functions shared by every formula in the library:
// the truncated-log polynomials P_k, their remainder L_k, Gamma/Beta
// machinery, unit-sphere volumes, and the hyperbolic radial integrals.

namespace orthobound::specfun {

// P_k(x) = sum_{j=1..k} x^j / j, with P_0 = 0.  Horner accumulation.
double p_poly(int k, double x);

// L_k(x) = log|1-x| + P_k(x).  For |x| <= 1/2 the tail series
// -sum_{j>k} x^j/j is used instead of the cancelling log form; both
// branches agree on the overlap.  Throws std::domain_error at x = 1.
double l_fn(int k, double x);

// log Gamma(x) for x > 0.  Throws std::domain_error otherwise.
double log_gamma(double x);

// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), evaluated in log space.
double beta(double a, double b);

// Unnormalized lower incomplete Beta: integral of t^{a-1}(1-t)^{b-1}
// over [0,x], by adaptive quadrature.  Requires 0 <= x <= 1.
double incomplete_beta(double x, double a, double b);

// Volume of the unit n-sphere in R^{n+1}; V_0 = 2 by convention.
double sphere_volume(int n);

// log of sphere_volume, safe for large n where the value underflows.
double log_sphere_volume(int n);

// S_n(x) = integral of cosh^{n-1}(r) over [0,x], n >= 2, by the closed
// reduction recurrence (no quadrature).
double cosh_power_integral(int n, double x);

// integral of sinh^{m-1}(t) over [0,r], m >= 2, closed recurrence.
double sinh_power_integral(int m, double r);

}  // namespace orthobound::specfun
