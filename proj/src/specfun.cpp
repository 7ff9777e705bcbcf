#include "orthobound/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "orthobound/quadrature.hpp"

namespace orthobound::specfun {

double p_poly(int k, double x) {
  if (k < 0) throw std::domain_error("p_poly: k must be >= 0");
  if (k == 0) return 0.0;
  double acc = 1.0 / k;
  for (int j = k - 1; j >= 1; --j) acc = 1.0 / j + x * acc;
  return x * acc;
}

double l_fn(int k, double x) {
  if (k < 0) throw std::domain_error("l_fn: k must be >= 0");
  if (x == 1.0) throw std::domain_error("l_fn: singular at x = 1");
  if (std::fabs(x) <= 0.5) {
    // tail series -sum_{j>k} x^j/j, truncated at 1e-17 relative
    double xp = std::pow(x, k + 1);
    double s = 0.0;
    for (int j = k + 1; j <= k + 400; ++j) {
      double t = xp / j;
      s += t;
      if (std::fabs(t) <= 1e-17 * std::fabs(s)) break;
      xp *= x;
    }
    return -s;
  }
  return std::log(std::fabs(1.0 - x)) + p_poly(k, x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  return std::lgamma(x);
}

double beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta: requires a, b > 0");
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("incomplete_beta: requires a, b > 0");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("incomplete_beta: requires x in [0,1]");
  if (x == 0.0) return 0.0;
  quad::Options opts;
  opts.abs_tol = 0.5e-13 * beta(a, b);
  opts.rel_tol = 1e-12;
  opts.left_singular = a < 1.0;
  opts.right_singular = x == 1.0 && b < 1.0;
  auto f = [a, b, x](double t, double dl, double dr) {
    // dl = t and dr = x - t are measured without cancellation at the
    // endpoints; when x = 1, dr is the accurate 1 - t.
    double ta = a == 1.0 ? 1.0 : std::pow(dl, a - 1.0);
    double omt = x == 1.0 ? dr : 1.0 - t;
    double tb = b == 1.0 ? 1.0 : std::pow(omt, b - 1.0);
    return ta * tb;
  };
  return quad::integrate(f, 0.0, x, opts).value;
}

double sphere_volume(int n) {
  if (n < 0) throw std::domain_error("sphere_volume: n must be >= 0");
  if (n == 0) return 2.0;
  return std::exp(log_sphere_volume(n));
}

double log_sphere_volume(int n) {
  if (n < 0) throw std::domain_error("log_sphere_volume: n must be >= 0");
  constexpr double log_pi = 1.1447298858494002;
  if (n == 0) return 0.69314718055994531;
  return std::log(n + 1.0) + 0.5 * (n + 1) * log_pi - std::lgamma(0.5 * (n + 3));
}

double cosh_power_integral(int n, double x) {
  if (n < 2) throw std::domain_error("cosh_power_integral: n must be >= 2");
  if (x < 0.0) throw std::domain_error("cosh_power_integral: x must be >= 0");
  // I_m = integral of cosh^m over [0,x]; wanted m = n-1.
  // I_m = cosh^{m-1}(x) sinh(x)/m + (m-1)/m I_{m-2}
  const int m = n - 1;
  const double ch = std::cosh(x), sh = std::sinh(x);
  double acc = (m % 2 == 0) ? x : sh;
  for (int j = (m % 2 == 0) ? 2 : 3; j <= m; j += 2)
    acc = std::pow(ch, j - 1) * sh / j + (j - 1.0) / j * acc;
  return acc;
}

double sinh_power_integral(int m, double r) {
  if (m < 2) throw std::domain_error("sinh_power_integral: m must be >= 2");
  if (r < 0.0) throw std::domain_error("sinh_power_integral: r must be >= 0");
  // J_q = integral of sinh^q over [0,r]; wanted q = m-1.
  // J_q = sinh^{q-1}(r) cosh(r)/q - (q-1)/q J_{q-2}
  const int q = m - 1;
  const double ch = std::cosh(r), sh = std::sinh(r);
  double acc = (q % 2 == 0) ? r : (ch - 1.0);
  for (int j = (q % 2 == 0) ? 2 : 3; j <= q; j += 2)
    acc = std::pow(sh, j - 1) * ch / j - (j - 1.0) / j * acc;
  return acc;
}

}  // namespace orthobound::specfun
