#pragma once

#include <cmath>

// Double-double arithmetic: a value is kept as an unevaluated sum hi + lo
// with |lo| <= ulp(hi)/2, which gives roughly 31 significant decimal digits.
// Only the operations needed by the kernel closed form are provided: field
// arithmetic, integer powers, and the natural logarithm.

namespace orthobound {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h) : hi(h) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}
};

namespace dd_detail {

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// requires |a| >= |b| or a == 0
inline DD quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DD dd_add(DD a, DD b) {
  DD s = dd_detail::two_sum(a.hi, b.hi);
  DD t = dd_detail::two_sum(a.lo, b.lo);
  DD r = dd_detail::quick_two_sum(s.hi, s.lo + t.hi);
  return dd_detail::quick_two_sum(r.hi, r.lo + t.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
  DD p = dd_detail::two_prod(a.hi, b.hi);
  return dd_detail::quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD dd_div(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul(DD(q1), b));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(DD(q2), b));
  double q3 = r.hi / b.hi;
  DD q = dd_detail::quick_two_sum(q1, q2);
  return dd_add(q, DD(q3));
}

inline DD dd_abs(DD a) { return a.hi < 0.0 ? dd_neg(a) : a; }

inline double to_double(DD a) { return a.hi + a.lo; }

inline DD operator+(DD a, DD b) { return dd_add(a, b); }
inline DD operator-(DD a, DD b) { return dd_sub(a, b); }
inline DD operator*(DD a, DD b) { return dd_mul(a, b); }
inline DD operator/(DD a, DD b) { return dd_div(a, b); }
inline DD operator-(DD a) { return dd_neg(a); }

// a^k by binary exponentiation; negative k via the reciprocal.
inline DD dd_powi(DD a, int k) {
  if (k < 0) return dd_div(DD(1.0), dd_powi(a, -k));
  DD r(1.0);
  DD base = a;
  while (k > 0) {
    if (k & 1) r = dd_mul(r, base);
    base = dd_mul(base, base);
    k >>= 1;
  }
  return r;
}

// ln(2) split into a double-double pair.
inline constexpr DD dd_ln2{0.69314718055994529, 2.3190468138462996e-17};

// Natural log for x > 0: reduce to m in [1/sqrt(2), sqrt(2)) so that
// t = (m-1)/(m+1) satisfies t^2 < 0.0295, then sum the atanh series.
inline DD dd_log(DD x) {
  int e = 0;
  std::frexp(x.hi, &e);
  DD m{std::ldexp(x.hi, -e), std::ldexp(x.lo, -e)};  // m in [0.5, 1)
  if (m.hi < 0.70710678118654752) {
    m.hi *= 2.0;
    m.lo *= 2.0;
    e -= 1;
  }
  DD t = dd_div(dd_sub(m, DD(1.0)), dd_add(m, DD(1.0)));
  DD t2 = dd_mul(t, t);
  DD term = t;
  DD sum = t;
  for (int k = 3; k < 80; k += 2) {
    term = dd_mul(term, t2);
    DD c = dd_div(term, DD(static_cast<double>(k)));
    sum = dd_add(sum, c);
    if (std::fabs(c.hi) < 1e-35 * std::fabs(sum.hi)) break;
  }
  return dd_add(dd_mul(DD(2.0), sum), dd_mul(DD(static_cast<double>(e)), dd_ln2));
}

}  // namespace orthobound
