#include "orthobound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "orthobound/specfun.hpp"

namespace orthobound::bounds {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

void check_n3(int n, const char* who) {
  if (n < 3) throw std::domain_error(std::string(who) + ": dimension must be >= 3");
}

void check_positive(double v, const char* who) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::domain_error(std::string(who) + ": input must be positive");
}

double a_prime(int n) {
  return specfun::p_poly(n - 3, 1.0) +
         (1.0 - std::pow(3.0, -(n - 2.0))) *
             (specfun::p_poly(n - 2, 1.0) + std::log(0.75));
}

// sqrt(2 pi e / (n-1)), the Stirling-type factor in both dichotomies
double root_factor(int n) { return std::sqrt(2.0 * kPi * kE / (n - 1.0)); }

}  // namespace

ConstantsBundle constants_bundle(int n) {
  check_n3(n, "constants_bundle");
  const double ap = a_prime(n);
  const double g =
      std::pow(3.0 * std::sqrt(kPi) * ap /
                   (2.0 * (n - 2.0) * std::sqrt(n - 1.0) * kE * kE),
               1.0 / (n - 2.0));
  const double h = std::pow(
      3.0 * ap / (std::pow(2.0, 1.5) * std::pow(kE, 2.5) * (n - 2.0)),
      1.0 / (n - 1.0));
  const double sq = std::sqrt(2.5);
  return {n, g, h, (sq - 1.0) / std::log(sq), 0.5 * std::log(2.5)};
}

BoundReport ortholength_bound(int n, double volume) {
  check_n3(n, "ortholength_bound");
  check_positive(volume, "ortholength_bound");
  ConstantsBundle c = constants_bundle(n);
  const double value = c.g_n * root_factor(n) * std::pow(volume, -1.0 / (n - 2.0));
  return {n, InputKind::volume, volume, Branch::short_ortho, value,
          c.half_log_52, c};
}

double dichotomy_bound(int n) {
  check_n3(n, "dichotomy_bound");
  return std::min(std::sqrt(2.5) - 1.0,
                  constants_bundle(n).g_n * root_factor(n));
}

double bt_volume_bound(int n, double systole) {
  check_n3(n, "bt_volume_bound");
  check_positive(systole, "bt_volume_bound");
  const double base = 0.5 * constants_bundle(n).g_n * root_factor(n) / systole;
  return std::pow(base, n - 2.0);
}

BoundReport volume_vs_boundary(int n, double boundary_volume) {
  check_n3(n, "volume_vs_boundary");
  check_positive(boundary_volume, "volume_vs_boundary");
  ConstantsBundle c = constants_bundle(n);
  const double linear = 0.25 * std::log(2.5) * boundary_volume;
  const double power = (c.h_n / 3.0) * root_factor(n) *
                       std::pow(boundary_volume, (n - 2.0) / (n - 1.0));
  BoundReport r;
  r.n = n;
  r.input_kind = InputKind::boundary_volume;
  r.input_value = boundary_volume;
  r.constants = c;
  if (power <= linear) {
    r.branch = Branch::short_ortho;
    r.bound_value = power;
    r.alternative = linear;
  } else {
    r.branch = Branch::long_ortho;
    r.bound_value = linear;
    r.alternative = power;
  }
  return r;
}

double odd_dim_volume_floor(int n) {
  check_n3(n, "odd_dim_volume_floor");
  if (n % 2 == 0)
    throw std::domain_error("odd_dim_volume_floor: dimension must be odd");
  const double h = constants_bundle(n).h_n;
  return std::min(0.125 * std::log(2.5), h / 6.0) * specfun::sphere_volume(n - 1);
}

double even_dim_volume_floor(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::domain_error("even_dim_volume_floor: dimension must be even, >= 2");
  return 0.5 * specfun::sphere_volume(n);
}

double adeboye_wei_comparator(int n) {
  if (n < 2) throw std::domain_error("adeboye_wei_comparator: dimension must be >= 2");
  return std::pow(2.0 / n, 0.5 * n * n);
}

double miyamoto_kellerhals_floor(int n) {
  check_n3(n, "miyamoto_kellerhals_floor");
  if (n % 2 == 0)
    throw std::domain_error("miyamoto_kellerhals_floor: dimension must be odd");
  // Kellerhals' orthoscheme estimates; the n = 6 value carries upward by
  // monotonicity. Comparator only, not one of the kernel-derived bounds.
  constexpr double rho[4] = {0.29156, 0.43219, 0.54167, 0.64652};
  const double r = n <= 6 ? rho[n - 3] : rho[3];
  return 0.5 * r * specfun::sphere_volume(n - 1);
}

double basmajian_term(int n, double l) {
  check_n3(n, "basmajian_term");
  check_positive(l, "basmajian_term");
  const double radius = -std::log(std::tanh(0.5 * l));
  return specfun::sphere_volume(n - 2) *
         specfun::sinh_power_integral(n - 1, radius);
}

double dim3_short_ortho_bound(double volume) {
  check_positive(volume, "dim3_short_ortho_bound");
  return kPi / volume;
}

const char* branch_name(Branch b) {
  return b == Branch::short_ortho ? "short_ortho" : "long_ortho";
}

const char* input_kind_name(InputKind k) {
  switch (k) {
    case InputKind::volume: return "volume";
    case InputKind::boundary_volume: return "boundary_volume";
    case InputKind::systole: return "systole";
  }
  return "unknown";
}

}  // namespace orthobound::bounds
