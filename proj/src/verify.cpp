#include "orthobound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "orthobound/bounds.hpp"
#include "orthobound/ffunc.hpp"
#include "orthobound/grid.hpp"
#include "orthobound/mfunc.hpp"
#include "orthobound/solver.hpp"
#include "orthobound/specfun.hpp"

namespace orthobound::verify {
namespace {

constexpr double kPi = 3.14159265358979323846;

template <typename... Ts>
std::string cat(Ts&&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

Case ge(std::string inputs, double lhs, double rhs, bool strict = false) {
  Case c;
  c.inputs = std::move(inputs);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = lhs - rhs;
  c.pass = strict ? (lhs > rhs) : (lhs >= rhs);
  c.strict = strict;
  return c;
}

// Proximity check: passes when |measured - target| <= tol.
Case near(std::string inputs, double measured, double target, double tol) {
  return ge(std::move(inputs), tol, std::fabs(measured - target));
}

Report finalize(Report rep) {
  rep.all_pass = true;
  for (const auto& c : rep.cases) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

// Dimension grid [lo, hi] intersected with the caller's filter; a filter of
// n_lo = 0 keeps the default grid.
std::vector<int> dims(int lo, int hi, int n_lo, int n_hi) {
  if (n_lo > 0) {
    lo = std::max(lo, n_lo);
    hi = std::min(hi, n_hi);
  }
  std::vector<int> v;
  for (int n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

double kernel_value(int n, double l) {
  return n == 3 ? ffunc::f3_closed(l) : ffunc::fn_integral(n, l).value;
}

Report suite_constants(int n_lo, int n_hi) {
  Report rep;
  rep.suite = "constants";
  // Published short-side constants, six decimals.
  const double g_pub[4] = {0.120822, 0.464543, 0.563796, 0.617183};
  const double h_pub[4] = {0.203335, 0.448875, 0.542675, 0.601147};
  for (int n : dims(3, 6, n_lo, n_hi)) {
    const auto cb = bounds::constants_bundle(n);
    rep.cases.push_back(
        near(cat("g_", n, "=", cb.g_n, " vs ", g_pub[n - 3]), cb.g_n,
             g_pub[n - 3], 1e-6));
    rep.cases.push_back(
        near(cat("h_", n, "=", cb.h_n, " vs ", h_pub[n - 3]), cb.h_n,
             h_pub[n - 3], 1e-6));
  }
  const auto c3 = bounds::constants_bundle(3);
  rep.cases.push_back(near(cat("a=", c3.a, " vs 1.26846"), c3.a, 1.26846, 1e-5));
  rep.cases.push_back(near(cat("log(5/2)/8=", 0.25 * c3.half_log_52,
                               " vs 0.11453"),
                           0.25 * c3.half_log_52, 0.11453, 1e-5));
  const double g3_scaled = c3.g_n * std::sqrt(kPi * std::exp(1.0));
  rep.cases.push_back(near(cat("g_3*sqrt(pi*e)=", g3_scaled, " vs 0.353076"),
                           g3_scaled, 0.353076, 1e-6));
  const double k3 = ffunc::kernel_constants(3).k_n;
  rep.cases.push_back(near(cat("K_3=", k3, " vs 0.37296"), k3, 0.37296, 1e-5));
  return finalize(std::move(rep));
}

Report suite_dim3(int, int) {
  Report rep;
  rep.suite = "dim3-solve";
  const double area = 4.0 * kPi;
  const auto r = solver::general_volume_root(3, area);
  const double v = ffunc::f3_closed(r.root);
  const double other = area * specfun::cosh_power_integral(3, 0.5 * r.root);
  rep.cases.push_back(
      near(cat("common value ", v, " vs published 4.079"), v, 4.079, 1e-3));
  rep.cases.push_back(ge(cat("common value ", v,
                             " differs from superseded 2.986 by > 0.01"),
                         std::fabs(v - 2.986), 1e-2, true));
  rep.cases.push_back(ge(cat("balance residual at root ", r.root), 1e-9,
                         std::fabs(v - other)));
  return finalize(std::move(rep));
}

Report suite_mn_oracle(int n_lo, int n_hi) {
  Report rep;
  rep.suite = "mn-oracle";
  const std::vector<double> bs = {1.001, 1.01, 1.1, 1.5, 2.0, 5.0, 20.0, 200.0};
  const std::vector<int> ns = dims(3, 8, n_lo, n_hi);
  const std::size_t total = ns.size() * bs.size();
  quad::Options o;
  o.abs_tol = 0.0;
  o.rel_tol = 1e-8;
  const std::vector<double> oracle =
      grid::map_parallel(total, [&](std::size_t i) {
        return mfunc::mn_oracle(static_cast<int>(ns[i / bs.size()]),
                                bs[i % bs.size()], o)
            .value;
      });
  for (std::size_t i = 0; i < total; ++i) {
    const int n = ns[i / bs.size()];
    const double b = bs[i % bs.size()];
    const double v = mfunc::mn(n, b).value;
    rep.cases.push_back(ge(
        cat("n=", n, " b=", b, " value=", v, " oracle=", oracle[i]),
        std::max(1e-8, 1e-6 * std::fabs(oracle[i])), std::fabs(v - oracle[i])));
  }
  return finalize(std::move(rep));
}

Report suite_f3(int, int) {
  Report rep;
  rep.suite = "f3-crosscheck";
  const double ls[] = {0.1, 0.25, 0.5, 1.0, 1.5, 2.0};
  for (double l : ls) {
    const double fi = ffunc::fn_integral(3, l).value;
    const double f3 = ffunc::f3_closed(l);
    rep.cases.push_back(ge(cat("l=", l, " integral=", fi, " closed=", f3),
                           1e-6, std::fabs(fi / f3 - 1.0)));
  }
  return finalize(std::move(rep));
}

Report suite_limits(int n_lo, int n_hi) {
  Report rep;
  rep.suite = "limits";
  for (int n : dims(3, 8, n_lo, n_hi)) {
    {
      const double b = 1.0 + 1e-6;
      const double v = mfunc::mn(n, b).value;
      const double lim =
          2.0 * specfun::p_poly(n - 2, 1.0) / ((n - 1.0) * (n - 2.0));
      const double scaled = v * std::pow(b - 1.0, n - 2.0);
      rep.cases.push_back(ge(cat("n=", n, " near-one ratio ", scaled / lim),
                             5e-3, std::fabs(scaled / lim - 1.0)));
    }
    {
      const double b = 1e5;
      const double v = mfunc::mn(n, b).value;
      const double lim = 4.0 / (n - 1.0);
      const double scaled = v * std::pow(b, n - 1.0) / std::log(b);
      rep.cases.push_back(ge(cat("n=", n, " large-b ratio ", scaled / lim),
                             2e-2, std::fabs(scaled / lim - 1.0)));
    }
  }
  return finalize(std::move(rep));
}

Report suite_munif(int n_lo, int n_hi) {
  Report rep;
  rep.suite = "lemma-munif";
  const double bs[] = {1.01, 1.1, 1.3, 1.5, 1.8, 2.0};
  for (int n : dims(3, 12, n_lo, n_hi)) {
    for (double b : bs) {
      const double v = mfunc::mn(n, b).value;
      const double lb = mfunc::mn_lower_bound(n, b);
      rep.cases.push_back(ge(cat("n=", n, " b=", b), v, lb));
    }
  }
  return finalize(std::move(rep));
}

Report suite_fb(int n_lo, int n_hi) {
  Report rep;
  rep.suite = "lemma-fb";
  const std::vector<double> ls = {0.05, 0.1,  0.2,
                                  0.3,  0.4, ffunc::half_log_52()};
  const std::vector<int> ns = dims(3, 8, n_lo, n_hi);
  const std::size_t total = ns.size() * ls.size();
  const std::vector<double> vals =
      grid::map_parallel(total, [&](std::size_t i) {
        return kernel_value(ns[i / ls.size()], ls[i % ls.size()]);
      });
  for (std::size_t i = 0; i < total; ++i) {
    const int n = ns[i / ls.size()];
    const double l = ls[i % ls.size()];
    rep.cases.push_back(
        ge(cat("n=", n, " l=", l), vals[i], ffunc::fn_lower_bound(n, l)));
  }
  return finalize(std::move(rep));
}

Report suite_kn(int n_lo, int n_hi) {
  Report rep;
  rep.suite = "lemma-kn";
  for (int n : dims(3, 50, n_lo, n_hi)) {
    const auto kc = ffunc::kernel_constants(n);
    rep.cases.push_back(ge(cat("n=", n), kc.k_n, kc.k_n_floor));
  }
  return finalize(std::move(rep));
}

Report suite_beta(int, int) {
  Report rep;
  rep.suite = "beta-halving";
  for (int i = 3; i <= 50; ++i) {
    const double a = 0.5 * i;
    const double half = specfun::incomplete_beta(0.5, a - 1.0, a);
    const double full = specfun::beta(a - 1.0, a);
    rep.cases.push_back(ge(cat("a=", a), half, 0.5 * full));
  }
  return finalize(std::move(rep));
}

Report suite_gamma(int, int) {
  Report rep;
  rep.suite = "gamma";
  const double xs[] = {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
  const double half_log_2pi = 0.5 * std::log(2.0 * kPi);
  for (double x : xs) {
    const double lg = specfun::log_gamma(x + 1.0);
    const double core = (x + 0.5) * std::log(x) - x;
    rep.cases.push_back(
        ge(cat("x=", x, " sandwich lower"), lg, half_log_2pi + core));
    rep.cases.push_back(ge(cat("x=", x, " sandwich upper"), 1.0 + core, lg));
  }
  const double log2 = std::log(2.0);
  const double half_log_pi = 0.5 * std::log(kPi);
  for (int i = 1; i <= 100; ++i) {
    const double z = 0.5 * i;
    const double resid = specfun::log_gamma(z) + specfun::log_gamma(z + 0.5) -
                         (1.0 - 2.0 * z) * log2 - half_log_pi -
                         specfun::log_gamma(2.0 * z);
    rep.cases.push_back(
        ge(cat("duplication z=", z), 1e-12, std::fabs(resid)));
  }
  return finalize(std::move(rep));
}

Report suite_monotonicity(int n_lo, int n_hi) {
  Report rep;
  rep.suite = "monotonicity";
  {
    const std::vector<double> ls = {0.1, 0.25, 0.5, 1.0, 1.5, 2.0};
    const std::vector<int> ns = dims(3, 6, n_lo, n_hi);
    const std::size_t total = ns.size() * ls.size();
    const std::vector<double> vals =
        grid::map_parallel(total, [&](std::size_t i) {
          return kernel_value(ns[i / ls.size()], ls[i % ls.size()]);
        });
    for (std::size_t j = 0; j < ns.size(); ++j) {
      for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
        rep.cases.push_back(ge(cat("F_", ns[j], " decreasing l=", ls[i],
                                   " -> ", ls[i + 1]),
                               vals[j * ls.size() + i],
                               vals[j * ls.size() + i + 1], true));
      }
    }
  }
  {
    const std::vector<int> ns = dims(3, 1000, n_lo, n_hi);
    std::vector<bounds::ConstantsBundle> cb;
    cb.reserve(ns.size());
    for (int n : ns) cb.push_back(bounds::constants_bundle(n));
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double inside = std::min(std::min(cb[i].g_n, 1.0 - cb[i].g_n),
                                     std::min(cb[i].h_n, 1.0 - cb[i].h_n));
      rep.cases.push_back(
          ge(cat("g_", ns[i], ", h_", ns[i], " inside (0,1)"), inside, 0.0,
             true));
      if (i + 1 < ns.size()) {
        rep.cases.push_back(ge(cat("g increasing n=", ns[i], " -> ", ns[i + 1]),
                               cb[i + 1].g_n, cb[i].g_n, true));
        rep.cases.push_back(ge(cat("h increasing n=", ns[i], " -> ", ns[i + 1]),
                               cb[i + 1].h_n, cb[i].h_n, true));
      }
    }
  }
  {
    const std::vector<double> bs = {1.001, 1.01, 1.1, 1.5,
                                    2.0,   5.0,  20.0, 200.0};
    for (int n : dims(3, 6, n_lo, n_hi)) {
      double prev = mfunc::mn(n, bs[0]).value;
      for (std::size_t i = 1; i < bs.size(); ++i) {
        const double cur = mfunc::mn(n, bs[i]).value;
        rep.cases.push_back(ge(cat("M_", n, " decreasing b=", bs[i - 1],
                                   " -> ", bs[i]),
                               prev, cur, true));
        prev = cur;
      }
    }
  }
  return finalize(std::move(rep));
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "constants",   "dim3-solve", "mn-oracle",    "f3-crosscheck",
      "limits",      "lemma-munif", "lemma-fb",    "lemma-kn",
      "beta-halving", "gamma",      "monotonicity", "all"};
  return names;
}

Report run_suite(const std::string& name, int n_lo, int n_hi) {
  if (name == "all") {
    Report rep;
    rep.suite = "all";
    rep.all_pass = true;
    for (const auto& s : suite_names()) {
      if (s == "all") continue;
      Report sub = run_suite(s, n_lo, n_hi);
      rep.all_pass = rep.all_pass && sub.all_pass;
      for (auto& c : sub.cases) {
        c.inputs = "[" + sub.suite + "] " + c.inputs;
        rep.cases.push_back(std::move(c));
      }
    }
    return rep;
  }
  if (name == "constants") return suite_constants(n_lo, n_hi);
  if (name == "dim3-solve") return suite_dim3(n_lo, n_hi);
  if (name == "mn-oracle") return suite_mn_oracle(n_lo, n_hi);
  if (name == "f3-crosscheck") return suite_f3(n_lo, n_hi);
  if (name == "limits") return suite_limits(n_lo, n_hi);
  if (name == "lemma-munif") return suite_munif(n_lo, n_hi);
  if (name == "lemma-fb") return suite_fb(n_lo, n_hi);
  if (name == "lemma-kn") return suite_kn(n_lo, n_hi);
  if (name == "beta-halving") return suite_beta(n_lo, n_hi);
  if (name == "gamma") return suite_gamma(n_lo, n_hi);
  if (name == "monotonicity") return suite_monotonicity(n_lo, n_hi);
  throw std::invalid_argument("verify: unknown suite '" + name + "'");
}

}  // namespace orthobound::verify
