#pragma once

#include <functional>
#include <stdexcept>
#include <type_traits>
#include <utility>

// Adaptive one-dimensional quadrature.  Intervals with endpoint
// singularities flagged in the options are handled by a doubly
// exponential (tanh-sinh) transform; smooth intervals by adaptive
// bisection with an embedded Gauss-Kronrod rule.  Semi-infinite domains
// are compactified by v = a + s/(1-s).
//
// Integrands may take either the point alone, f(x), or the extended form
// f(x, dl, dr) where dl and dr are the distances to the interval
// endpoints computed without cancellation.  The extended form is what
// makes integrands like log(v-b) evaluable right up against the
// singularity.  For integrate_semi_infinite the extended form is
// f(v, voff) with voff = v - a exact.

namespace orthobound::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  long max_evals = 2000000;
  bool left_singular = false;
  bool right_singular = false;
};

struct Result {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long n_evals = 0;
  bool converged = false;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const char* msg, Result partial)
      : std::runtime_error(msg), partial_(partial) {}
  const Result& partial() const { return partial_; }

 private:
  Result partial_;
};

namespace detail {

using NodeFn = std::function<double(double, double, double)>;
using SemiFn = std::function<double(double, double)>;

Result integrate_impl(const NodeFn& f, double a, double b, const Options& opts);
Result semi_infinite_impl(const SemiFn& f, double a, const Options& opts);

}  // namespace detail

template <class F>
Result integrate(F&& f, double a, double b, const Options& opts = {}) {
  if constexpr (std::is_invocable_r_v<double, F, double, double, double>) {
    return detail::integrate_impl(detail::NodeFn(std::forward<F>(f)), a, b, opts);
  } else {
    auto g = [fn = std::forward<F>(f)](double x, double, double) { return fn(x); };
    return detail::integrate_impl(detail::NodeFn(g), a, b, opts);
  }
}

template <class F>
Result integrate_semi_infinite(F&& f, double a, const Options& opts = {}) {
  if constexpr (std::is_invocable_r_v<double, F, double, double>) {
    return detail::semi_infinite_impl(detail::SemiFn(std::forward<F>(f)), a, opts);
  } else {
    auto g = [fn = std::forward<F>(f)](double v, double) { return fn(v); };
    return detail::semi_infinite_impl(detail::SemiFn(g), a, opts);
  }
}

}  // namespace orthobound::quad
