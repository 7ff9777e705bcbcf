#include "orthobound/mfunc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "orthobound/ddreal.hpp"
#include "orthobound/specfun.hpp"

namespace orthobound::mfunc {
namespace {

void check_domain(int n, double b) {
  if (n < 3) throw std::domain_error("mn: dimension must be >= 3");
  if (!(b > 1.0) || !std::isfinite(b))
    throw std::domain_error("mn: argument must satisfy b > 1");
}

DD dd_inv(int j) { return dd_div(DD(1.0), DD(static_cast<double>(j))); }

// P_k(x) = sum_{j=1..k} x^j / j by Horner.
DD dd_p_poly(int k, DD x) {
  if (k <= 0) return DD(0.0);
  DD acc = dd_inv(k);
  for (int j = k - 1; j >= 1; --j) acc = dd_inv(j) + x * acc;
  return x * acc;
}

// P_k(1), the k-th harmonic number.
DD dd_p_one(int k) {
  DD s(0.0);
  for (int j = 1; j <= k; ++j) s = s + dd_inv(j);
  return s;
}

// L_k(x) = log|1-x| + P_k(x). For |x| <= 1/2 the two parts cancel to
// -sum_{j>k} x^j/j, so sum that tail directly.
DD dd_l(int k, DD x) {
  if (std::fabs(x.hi) <= 0.5) {
    DD xp = dd_powi(x, k + 1);
    DD s(0.0);
    for (int j = k + 1; j <= k + 2000; ++j) {
      DD t = xp / DD(static_cast<double>(j));
      s = s + t;
      if (std::fabs(t.hi) <= 1e-35 * std::fabs(s.hi)) break;
      xp = xp * x;
    }
    return dd_neg(s);
  }
  return dd_log(dd_abs(DD(1.0) - x)) + dd_p_poly(k, x);
}

// The four bracketed groups of the closed form, each divided by its power
// denominator. A zero denominator means (b-1)^(n-2) underflowed while the
// group is O(1), i.e. the value exceeds double range; an infinite
// denominator makes the term's contribution below 1e-300 of the total.
double mn_closed_dd(int n, double bd) {
  const int k = n - 3;
  const int m = n - 2;
  const DD sg((n % 2 == 0) ? 1.0 : -1.0);
  const DD one(1.0), two(2.0), four(4.0);
  const DD b(bd);
  const DD bm = b - one;
  const DD bp = b + one;
  const DD p2 = two * dd_p_one(n - 2);

  const DD log_bp = dd_log(bp * bp / (four * b));
  const DD log_bm = dd_log(bm * bm / (four * b));

  const DD g1 = log_bp + p2 - dd_l(k, bm / bp) - sg * dd_l(k, dd_neg(bm / bp));
  const DD g2 = dd_neg(log_bm) - p2 + dd_l(k, bp / bm) + sg * dd_l(k, dd_neg(bp / bm));
  const DD g3 = dd_l(k, two * b / bp) - dd_l(k, two * b / bm);
  const DD g4 = dd_l(k, two / bp) - sg * dd_l(k, dd_neg(two / bm));

  const DD nums[4] = {g1, g2, g3, g4};
  const DD dens[4] = {dd_powi(bm, m), dd_powi(bp, m), dd_powi(two * b, m),
                      dd_powi(two, m)};
  DD s(0.0);
  for (int i = 0; i < 4; ++i) {
    if (dens[i].hi == 0.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(dens[i].hi)) continue;
    s = s + nums[i] / dens[i];
  }
  return to_double(s / DD(static_cast<double>((n - 1) * (n - 2))));
}

// The value behaves like 2*P_{n-2}(1)/((n-1)(n-2)) * (b-1)^(2-n) near 1;
// past this threshold it exceeds double range and intermediates overflow.
bool exceeds_double_range(int n, double b) {
  return (n - 2) * std::log10(b - 1.0) < -300.0;
}

double guarded_value(int n, double b, const MnConfig& cfg) {
  if (exceeds_double_range(n, b)) return std::numeric_limits<double>::infinity();
  if (closed_form_trustworthy(n, b)) return mn_closed(n, b);
  quad::Options o;
  o.abs_tol = 0.0;
  o.rel_tol = cfg.oracle_rel_tol;
  o.max_evals = cfg.oracle_max_evals;
  return mn_oracle(n, b, o).value;
}

}  // namespace

double mn_closed(int n, double b) {
  check_domain(n, b);
  if (exceeds_double_range(n, b)) return std::numeric_limits<double>::infinity();
  return mn_closed_dd(n, b);
}

double mn_digits_lost(int n, double b) {
  return (n - 2) * std::log10(b) + 3.0;
}

bool closed_form_trustworthy(int n, double b) {
  // First clause: enough of the 32-digit working mantissa survives the
  // cross-group cancellation. Second clause: the largest L_k argument,
  // 2b/(b-1), must not overflow inside P_k.
  return mn_digits_lost(n, b) <= 22.5 &&
         (n - 3) * std::log10(2.0 * b / (b - 1.0)) <= 300.0;
}

quad::Result mn_oracle(int n, double b, const quad::Options& opts) {
  check_domain(n, b);
  if (opts.abs_tol < 0.0 || opts.rel_tol < 0.0)
    throw std::invalid_argument("mn_oracle: tolerances must be nonnegative");
  const double rel = opts.rel_tol > 0.0 ? opts.rel_tol : 1e-10;
  const double nd = static_cast<double>(n);
  const double bm1 = b - 1.0;
  const double bp1 = b + 1.0;

  long used = 0;  // combined outer and inner evaluation count
  bool inner_converged = true;

  // Outer variable u in (-1,1) with log singularities at both ends;
  // dl = u+1 and dr = 1-u arrive exact from the engine.
  auto outer = [&](double, double dl, double dr) {
    ++used;
    const double bmu = bm1 + dr;  // b - u
    const double bpu = bp1 - dr;  // b + u
    const double cu = std::log(bmu * bpu / (dl * dr));

    const long left = opts.max_evals - used;
    if (left < 100)
      throw quad::BudgetExceeded(
          "mn_oracle: evaluation budget exhausted",
          {0.0, std::numeric_limits<double>::infinity(), used, false});
    quad::Options io;
    io.abs_tol = 0.0;
    io.rel_tol = rel * 0.2;
    io.max_evals = left;

    // Inner variable v in (b, inf), log singularity at v = b. The log
    // argument (v^2-1)/(v^2-b^2) is rewritten through log1p so that deep
    // tail nodes degrade to 0 instead of overflowing.
    auto g = [&](double v, double voff) {
      const double t = bm1 * bp1 / (voff * (v + b));
      const double vmu = voff + bmu;  // v - u
      return (std::log1p(t) + cu) / std::pow(vmu, nd);
    };
    quad::Result r = quad::integrate_semi_infinite(g, b, io);
    used += r.n_evals;
    inner_converged = inner_converged && r.converged;
    return r.value;
  };

  quad::Options oo;
  oo.abs_tol = 0.0;
  oo.rel_tol = rel;
  oo.max_evals = opts.max_evals;
  oo.left_singular = true;
  oo.right_singular = true;
  quad::Result out = quad::integrate(outer, -1.0, 1.0, oo);
  return {out.value, out.abs_error_estimate, used,
          out.converged && inner_converged};
}

double mn_near_one(int n, double b, const MnConfig& cfg) {
  check_domain(n, b);
  if (!(b <= 1.0 + cfg.delta))
    throw std::domain_error("mn_near_one: b outside the near-one band");
  return guarded_value(n, b, cfg);
}

double mn_large_b(int n, double b, const MnConfig& cfg) {
  check_domain(n, b);
  if (!(b >= cfg.big_b))
    throw std::domain_error("mn_large_b: b below the large-argument band");
  return guarded_value(n, b, cfg);
}

double mn_asymptotic(int n, double b) {
  check_domain(n, b);
  return 4.0 * std::log(b) / ((n - 1) * std::pow(b, n - 1.0));
}

MnValue mn(int n, double b, const MnConfig& cfg) {
  check_domain(n, b);
  MnRegime band = MnRegime::closed_form;
  if (b <= 1.0 + cfg.delta)
    band = MnRegime::near_one_series;
  else if (b >= cfg.big_b)
    band = MnRegime::large_b_asymptotic;

  if (exceeds_double_range(n, b))
    return {std::numeric_limits<double>::infinity(), band, n, b};
  if (closed_form_trustworthy(n, b)) return {mn_closed(n, b), band, n, b};
  quad::Options o;
  o.abs_tol = 0.0;
  o.rel_tol = cfg.oracle_rel_tol;
  o.max_evals = cfg.oracle_max_evals;
  return {mn_oracle(n, b, o).value, MnRegime::oracle, n, b};
}

double mn_lower_bound(int n, double b) {
  if (n < 3) throw std::domain_error("mn_lower_bound: dimension must be >= 3");
  if (!(b > 1.0) || !(b <= 2.0))
    throw std::domain_error("mn_lower_bound: b must lie in (1, 2]");
  const double an = (specfun::p_poly(n - 3, 1.0) +
                     (1.0 - std::pow(3.0, -(n - 2.0))) *
                         (specfun::p_poly(n - 2, 1.0) + std::log(0.75))) /
                    ((n - 1.0) * (n - 2.0));
  return an / std::pow(b - 1.0, n - 2.0);
}

const char* regime_name(MnRegime r) {
  switch (r) {
    case MnRegime::near_one_series: return "near_one_series";
    case MnRegime::closed_form: return "closed_form";
    case MnRegime::large_b_asymptotic: return "large_b_asymptotic";
    case MnRegime::oracle: return "oracle";
  }
  return "unknown";
}

}  // namespace orthobound::mfunc
