#include "orthobound/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "orthobound/ffunc.hpp"
#include "orthobound/specfun.hpp"

namespace orthobound::solver {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Kernel evaluations inside a solve run at tightened quadrature tolerance
// so the root error stays quadrature-dominated.
quad::Options tight_opts() {
  quad::Options o;
  o.abs_tol = 0.0;
  o.rel_tol = 1e-11;
  return o;
}

double kernel_value(int n, double l, const quad::Options& o) {
  return n == 3 ? ffunc::f3_closed(l) : ffunc::fn_integral(n, l, o).value;
}

// All balance functions here are positive at small l and negative at large
// l; expand geometrically from l = 1 until the sign change is enclosed.
void expand_bracket(const std::function<double(double)>& g, double& lo,
                    double& hi) {
  lo = hi = 1.0;
  double gv = g(1.0);
  if (gv == 0.0) return;
  if (gv > 0.0) {
    for (int i = 0; i < 60; ++i) {
      lo = hi;
      hi *= 2.0;
      if (g(hi) <= 0.0) return;
    }
  } else {
    for (int i = 0; i < 60; ++i) {
      hi = lo;
      lo *= 0.5;
      if (g(lo) >= 0.0) return;
    }
  }
  throw std::runtime_error("solver: bracket expansion found no sign change");
}

RootResult solve_balance(const std::function<double(double)>& g, double tol) {
  double lo = 0.0, hi = 0.0;
  expand_bracket(g, lo, hi);
  if (lo == hi) return {lo, 0.0, 0, lo, hi};
  return find_root(g, lo, hi, tol);
}

void check_inputs(int n, double a, const char* who) {
  if (n < 3) throw std::domain_error(std::string(who) + ": dimension must be >= 3");
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error(std::string(who) + ": boundary volume must be positive");
}

}  // namespace

RootResult find_root(const std::function<double(double)>& f, double lo,
                     double hi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_root: tol must be positive");
  if (!(lo < hi)) throw std::invalid_argument("find_root: need lo < hi");
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return {a, 0.0, 0, lo, hi};
  if (fb == 0.0) return {b, 0.0, 0, lo, hi};
  if ((fa > 0.0) == (fb > 0.0))
    throw std::invalid_argument("find_root: no sign change over the bracket");

  double c = a, fc = fa;
  double d = b - a, e = d;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int it = 1; it <= 200; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol * std::max(1.0, std::fabs(b));
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0 || std::fabs(fb) <= tol)
      return {b, fb, it, std::min(b, c), std::max(b, c)};

    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      // inverse quadratic (or secant when only two points are distinct)
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw std::runtime_error("find_root: no convergence after 200 iterations");
}

RootResult solve_collar_balance(int n, double boundary_volume, double tol) {
  check_inputs(n, boundary_volume, "solve_collar_balance");
  const quad::Options o = tight_opts();
  auto g = [&](double l) {
    return kernel_value(n, l, o) - 0.5 * boundary_volume * l;
  };
  return solve_balance(g, tol);
}

RootResult solve_l0(int n, double boundary_volume, double tol) {
  check_inputs(n, boundary_volume, "solve_l0");
  // Envelope evaluated directly: the equation's root may exceed the
  // envelope's validity threshold, where fn_lower_bound would refuse it.
  const double kn = ffunc::kernel_constants(n).k_n;
  auto g = [&](double l) {
    return kn / std::pow(std::expm1(l), n - 2.0) - 0.5 * boundary_volume * l;
  };
  return solve_balance(g, tol);
}

double dim3_volume_bound() { return general_volume_bound(3, 4.0 * kPi); }

RootResult general_volume_root(int n, double boundary_volume, double tol) {
  check_inputs(n, boundary_volume, "general_volume_root");
  const quad::Options o = tight_opts();
  auto g = [&](double x) {
    return kernel_value(n, x, o) -
           boundary_volume * specfun::cosh_power_integral(n, 0.5 * x);
  };
  return solve_balance(g, tol);
}

double general_volume_bound(int n, double boundary_volume, double tol) {
  RootResult r = general_volume_root(n, boundary_volume, tol);
  return kernel_value(n, r.root, tight_opts());
}

}  // namespace orthobound::solver
