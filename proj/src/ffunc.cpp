#include "orthobound/ffunc.hpp"

#include <cmath>
#include <stdexcept>

#include "orthobound/mfunc.hpp"
#include "orthobound/specfun.hpp"

namespace orthobound::ffunc {
namespace {

constexpr double kPi = 3.14159265358979323846;

void check_l(double l) {
  if (!(l > 0.0) || !std::isfinite(l))
    throw std::domain_error("kernel: orthogeodesic length must be positive");
}

double a_prime(int n) {
  return specfun::p_poly(n - 3, 1.0) +
         (1.0 - std::pow(3.0, -(n - 2.0))) *
             (specfun::p_poly(n - 2, 1.0) + std::log(0.75));
}

}  // namespace

double half_log_52() { return 0.5 * std::log(2.5); }

double f3_closed(double l) {
  check_l(l);
  return 2.0 * kPi * (l + 1.0) / std::expm1(2.0 * l);
}

quad::Result fn_integral(int n, double l, const quad::Options& opts) {
  if (n < 3) throw std::domain_error("fn_integral: dimension must be >= 3");
  check_l(l);
  const double e2l = std::expm1(2.0 * l);  // e^(2l) - 1 > 0
  const double prefactor =
      std::exp((n - 1) * std::log(2.0) + specfun::log_sphere_volume(n - 2) +
               specfun::log_sphere_volume(n - 3) -
               specfun::log_sphere_volume(n - 1));
  if (!std::isfinite(e2l)) return {0.0, 0.0, 0, true};  // below double range

  // The substitution b = sqrt((e^{2l}-r^2)/(1-r^2)) = sqrt(1 + e2l/(1-r^2))
  // keeps b-1 well away from rounding: b^2-1 = e2l/(1-r^2) exactly positive.
  // Near r = 1 the integrand decays like sqrt(1-r^2); the kernel argument
  // runs off to infinity there, so the moment switches to its asymptotic
  // shape, fused with the weight in log space to dodge inf*0.
  auto f = [&](double r, double, double dr) {
    const double omr2 = dr * (1.0 + r);
    if (omr2 <= 0.0) return 0.0;
    const double b = std::sqrt(1.0 + e2l / omr2);
    if (mfunc::closed_form_trustworthy(n, b)) {
      return std::pow(r, n - 3.0) * std::pow(omr2, -0.5 * (n - 2.0)) *
             mfunc::mn_closed(n, b);
    }
    const double logb = 0.5 * std::log1p(e2l / omr2);
    return std::exp((n - 3.0) * std::log(r) - 0.5 * (n - 2.0) * std::log(omr2) +
                    std::log(4.0 * logb / (n - 1.0)) - (n - 1.0) * logb);
  };

  quad::Options o = opts;
  o.right_singular = true;
  quad::Result res = quad::integrate(f, 0.0, 1.0, o);
  res.value *= prefactor;
  res.abs_error_estimate *= prefactor;
  return res;
}

KernelConstants kernel_constants(int n) {
  if (n < 3) throw std::domain_error("kernel_constants: dimension must be >= 3");
  const double ap = a_prime(n);
  const double log_kn =
      std::log(ap) + (n - 2) * std::log(2.0) + specfun::log_sphere_volume(n - 2) +
      specfun::log_sphere_volume(n - 3) + 2.0 * specfun::log_gamma(0.5 * n) -
      2.0 * std::log(n - 2.0) - specfun::log_sphere_volume(n - 1) -
      specfun::log_gamma(static_cast<double>(n));
  const double log_floor = 0.5 * (n - 1.0) *
                               (std::log(2.0 * kPi) + 1.0 - std::log(n - 1.0)) +
                           std::log(3.0 * ap) - 1.5 * std::log(2.0) - 2.5 -
                           std::log(n - 2.0);
  return {n, ap, std::exp(log_kn), std::exp(log_floor)};
}

double fn_lower_bound(int n, double l) {
  if (n < 3) throw std::domain_error("fn_lower_bound: dimension must be >= 3");
  if (!(l > 0.0) || !(l <= half_log_52()))
    throw std::domain_error(
        "fn_lower_bound: length must lie in (0, log(5/2)/2]");
  return kernel_constants(n).k_n / std::pow(std::expm1(l), n - 2.0);
}

double bk_identity_sum(int n, const std::vector<double>& spectrum,
                       const quad::Options& opts) {
  if (n < 3) throw std::domain_error("bk_identity_sum: dimension must be >= 3");
  for (double l : spectrum) check_l(l);
  double total = 0.0;
  for (double l : spectrum)
    total += (n == 3) ? f3_closed(l) : fn_integral(n, l, opts).value;
  return total;
}

}  // namespace orthobound::ffunc
