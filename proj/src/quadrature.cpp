#include "orthobound/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace orthobound::quad::detail {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

void validate(const Options& opts) {
  if (!(opts.abs_tol >= 0.0) || !(opts.rel_tol >= 0.0))
    throw std::invalid_argument("quadrature: tolerances must be non-negative");
  if (opts.max_evals < 100)
    throw std::invalid_argument("quadrature: max_evals must be >= 100");
}

// ---------------------------------------------------------------------------
// tanh-sinh rule for intervals with (possible) endpoint singularities.
//
// x(t) = mid + half*tanh((pi/2) sinh t).  The distance from a node to the
// near endpoint is len*e^{-2y}/(1+e^{-2y}) with y = (pi/2) sinh|t|, which
// stays accurate long after mid + half*tanh(y) has rounded to an endpoint.

struct TsNode {
  double x, dl, dr, w;
};

bool ts_node(double t, double a, double b, TsNode& out) {
  const double len = b - a;
  const double half = 0.5 * len;
  const double at = std::fabs(t);
  const double y = kHalfPi * std::sinh(at);
  const double ey = std::exp(-2.0 * y);
  const double xc = len * ey / (1.0 + ey);
  if (!(xc >= 1e-305)) return false;  // node collapsed into the endpoint
  const double q = 1.0 + ey;
  const double w = half * 2.0 * kPi * std::cosh(at) * ey / (q * q);
  if (w == 0.0) return false;
  if (t >= 0.0) {
    out = {b - xc, len - xc, xc, w};
  } else {
    out = {a + xc, xc, len - xc, w};
  }
  return true;
}

Result tanh_sinh(const NodeFn& f, double a, double b, const Options& opts) {
  constexpr double t_max = 6.11;
  constexpr int max_level = 12;
  long evals = 0;

  auto weighted = [&](double t) -> double {
    TsNode nd;
    if (!ts_node(t, a, b, nd)) return 0.0;
    ++evals;
    double fv = f(nd.x, nd.dl, nd.dr);
    return fv == 0.0 ? 0.0 : nd.w * fv;
  };

  double sum = weighted(0.0);
  for (int j = 1; j <= static_cast<int>(t_max); ++j)
    sum += weighted(j) + weighted(-j);

  double h = 1.0;
  double prev = sum * h;
  double est = std::fabs(prev);
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    const long new_nodes = 2 * static_cast<long>(t_max / h / 2.0 + 1.0);
    if (evals + new_nodes > opts.max_evals)
      throw BudgetExceeded("tanh-sinh: evaluation budget exhausted",
                           {prev, est, evals, false});
    for (double t = h; t <= t_max; t += 2.0 * h) sum += weighted(t) + weighted(-t);
    const double cur = sum * h;
    est = std::fabs(cur - prev);
    prev = cur;
    if (level >= 2 && est <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(cur)))
      return {cur, est, evals, true};
  }
  return {prev, est, evals, false};
}

// ---------------------------------------------------------------------------
// Adaptive bisection with the embedded 7-15 Gauss-Kronrod pair.

// 15-point Kronrod abscissae on [0,1] (positive half) and weights, with the
// embedded 7-point Gauss weights.  Central weights absorb the rounding of
// the decimal tables so that each rule integrates constants exactly.
struct GkTables {
  double xgk[8];
  double wgk[8];
  double wg[4];
  GkTables() {
    const double x[8] = {0.991455371120812639206854697526329,
                         0.949107912342758524526189684047851,
                         0.864864423359769072789712788640926,
                         0.741531185599394439863864773280788,
                         0.586087235467691130294144838258730,
                         0.405845151377397166906606412076961,
                         0.207784955007898467600689403773245,
                         0.000000000000000000000000000000000};
    const double wk[8] = {0.022935322010529224963732008058970,
                          0.063092092629978553290700663189204,
                          0.104790010322250183839876322541518,
                          0.140653259715525918745189590510238,
                          0.169004726639267902826583426598550,
                          0.190350578064785409913256402421014,
                          0.204432940075298892414161999234649,
                          0.209482141084727828012999174891714};
    const double g[4] = {0.129484966168869693270611432679082,
                         0.279705391489276667901467771423780,
                         0.381830050505118944950369775488975,
                         0.417959183673469387755102040816327};
    for (int i = 0; i < 8; ++i) xgk[i] = x[i];
    for (int i = 0; i < 8; ++i) wgk[i] = wk[i];
    for (int i = 0; i < 4; ++i) wg[i] = g[i];
    double sk = wgk[7], sg = wg[3];
    for (int i = 0; i < 7; ++i) sk += 2.0 * wgk[i];
    for (int i = 0; i < 3; ++i) sg += 2.0 * wg[i];
    wgk[7] += 2.0 - sk;
    wg[3] += 2.0 - sg;
  }
};

const GkTables& gk() {
  static const GkTables t;
  return t;
}

struct Panel {
  double a, b;
  double val, err;
  long idx;
};

struct PanelWorse {
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.err != q.err) return p.err < q.err;
    return p.idx > q.idx;  // deterministic tie-break: older panel first
  }
};

Panel gk_eval(const NodeFn& f, double ga, double gb, double a, double b, long idx) {
  const GkTables& t = gk();
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto at = [&](double x) { return f(x, x - ga, gb - x); };
  double fk = t.wgk[7] * at(c);
  double fg = t.wg[3] * at(c);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * t.xgk[i];
    const double s = at(c - dx) + at(c + dx);
    fk += t.wgk[i] * s;
    if (i % 2 == 1) fg += t.wg[i / 2] * s;
  }
  const double val = fk * half;
  return {a, b, val, std::fabs((fk - fg) * half), idx};
}

Result gauss_kronrod(const NodeFn& f, double a, double b, const Options& opts) {
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
  long evals = 0, next_idx = 0;
  double val = 0.0, err = 0.0;  // running totals, kept incrementally
  auto push = [&](double lo, double hi) {
    Panel p = gk_eval(f, a, b, lo, hi, next_idx++);
    heap.push(p);
    evals += 15;
    val += p.val;
    err += p.err;
  };
  push(a, b);

  auto finish = [&](bool converged) {
    // re-sum the leaves in endpoint order so the reported value does not
    // carry the incremental-update drift
    std::vector<Panel> leaves;
    while (!heap.empty()) {
      leaves.push_back(heap.top());
      heap.pop();
    }
    std::sort(leaves.begin(), leaves.end(),
              [](const Panel& p, const Panel& q) { return p.a < q.a; });
    double v = 0.0, e = 0.0;
    for (const Panel& p : leaves) {
      v += p.val;
      e += p.err;
    }
    return Result{v, e, evals, converged};
  };

  for (;;) {
    if (err <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(val)))
      return finish(true);
    if (evals + 30 > opts.max_evals)
      throw BudgetExceeded("gauss-kronrod: evaluation budget exhausted",
                           finish(false));
    Panel worst = heap.top();
    heap.pop();
    val -= worst.val;
    err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at floating resolution
      heap.push(worst);
      val += worst.val;
      err += worst.err;
      return finish(false);
    }
    push(worst.a, mid);
    push(mid, worst.b);
  }
}

}  // namespace

Result integrate_impl(const NodeFn& f, double a, double b, const Options& opts) {
  validate(opts);
  if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");
  if (opts.left_singular || opts.right_singular) return tanh_sinh(f, a, b, opts);
  return gauss_kronrod(f, a, b, opts);
}

Result semi_infinite_impl(const SemiFn& f, double a, const Options& opts) {
  validate(opts);
  Options inner = opts;
  inner.right_singular = true;  // the transform compresses v -> infinity to s = 1
  auto g = [&f, a](double s, double dl, double dr) -> double {
    const double sc = dr;  // accurate 1 - s
    const double u = s < 0.5 ? s / (1.0 - s) : (1.0 - sc) / sc;
    (void)dl;
    const double fv = f(a + u, u);
    if (fv == 0.0) return 0.0;
    return fv / sc / sc;
  };
  return integrate_impl(NodeFn(g), 0.0, 1.0, inner);
}

}  // namespace orthobound::quad::detail
