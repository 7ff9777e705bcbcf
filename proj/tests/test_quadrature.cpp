#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "orthobound/quadrature.hpp"

using namespace orthobound;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool bits_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

// The three analytic reference families with known integrals.
struct Family {
  const char* name;
  double truth;
  quad::Options opts;
  double (*f)(double);
};

const Family& families(int i) {
  static const Family fams[3] = {
      {"constant one", 1.0, {},
       [](double) { return 1.0; }},
      {"log t", -1.0,
       [] { quad::Options o; o.left_singular = true; return o; }(),
       [](double t) { return std::log(t); }},
      {"inverse sqrt", 2.0,
       [] { quad::Options o; o.left_singular = true; return o; }(),
       [](double t) { return 1.0 / std::sqrt(t); }},
  };
  return fams[i];
}

}  // namespace

TEST_CASE("constant integrand is exact") {
  const auto r = quad::integrate([](double) { return 1.0; }, 0.0, 1.0, {});
  CHECK(r.value == 1.0);
  CHECK(r.converged);
}

TEST_CASE("log singularity at the left endpoint") {
  quad::Options o;
  o.left_singular = true;
  const auto r = quad::integrate([](double t) { return std::log(t); }, 0.0, 1.0, o);
  CHECK(r.converged);
  CHECK(std::fabs(r.value - (-1.0)) <= 1e-12);
}

TEST_CASE("algebraic singularity at the left endpoint") {
  quad::Options o;
  o.left_singular = true;
  const auto r =
      quad::integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, o);
  CHECK(r.converged);
  CHECK(std::fabs(r.value - 2.0) <= 1e-10);
}

TEST_CASE("right-endpoint distance argument avoids cancellation") {
  quad::Options o;
  o.right_singular = true;
  const auto r = quad::integrate(
      [](double, double, double dr) { return std::log(dr); }, 0.0, 1.0, o);
  CHECK(r.converged);
  CHECK(std::fabs(r.value - (-1.0)) <= 1e-12);
}

TEST_CASE("smooth non-singular integrand") {
  const auto r =
      quad::integrate([](double t) { return std::sin(t); }, 0.0, kPi, {});
  CHECK(r.converged);
  CHECK(std::fabs(r.value - 2.0) <= 1e-12);
}

TEST_CASE("semi-infinite exponential decay") {
  const auto r =
      quad::integrate_semi_infinite([](double v) { return std::exp(-v); }, 0.0, {});
  CHECK(r.converged);
  CHECK(std::fabs(r.value - 1.0) <= 1e-12);
}

TEST_CASE("semi-infinite algebraic decay") {
  const auto r = quad::integrate_semi_infinite(
      [](double v) { return 1.0 / (v * v * v); }, 1.0, {});
  CHECK(r.converged);
  CHECK(std::fabs(r.value - 0.5) <= 1e-12);
}

TEST_CASE("semi-infinite with log singularity at the finite endpoint") {
  quad::Options o;
  o.left_singular = true;
  const auto r = quad::integrate_semi_infinite(
      [](double v, double voff) { return std::log(voff) / (v * v * v * v); },
      1.0, o);
  CHECK(r.converged);
  CHECK(std::fabs(r.value - (-0.5)) <= 1e-8);
}

TEST_CASE("error estimate overestimates the true error on the families") {
  for (int i = 0; i < 3; ++i) {
    const auto& fam = families(i);
    const auto r = quad::integrate(fam.f, 0.0, 1.0, fam.opts);
    CHECK(r.converged);
    CHECK(r.abs_error_estimate >= std::fabs(r.value - fam.truth));
    CHECK(r.n_evals <= fam.opts.max_evals);
    CHECK(r.abs_error_estimate <=
          std::max(fam.opts.abs_tol, fam.opts.rel_tol * std::fabs(r.value)));
  }
}

TEST_CASE("halving tolerances never worsens the true error") {
  for (int i = 0; i < 3; ++i) {
    const auto& fam = families(i);
    quad::Options o = fam.opts;
    o.abs_tol = 1e-4;
    o.rel_tol = 1e-4;
    double prev_err = 1e300;
    for (int step = 0; step < 20; ++step) {
      const auto r = quad::integrate(fam.f, 0.0, 1.0, o);
      const double err = std::fabs(r.value - fam.truth);
      CHECK(err <= prev_err + 1e-16);
      prev_err = err;
      o.abs_tol *= 0.5;
      o.rel_tol *= 0.5;
    }
  }
}

TEST_CASE("identical inputs give bit-identical outputs") {
  quad::Options o;
  o.left_singular = true;
  auto f = [](double t) { return std::log(t) / (1.0 + t); };
  const auto r1 = quad::integrate(f, 0.0, 1.0, o);
  const auto r2 = quad::integrate(f, 0.0, 1.0, o);
  CHECK(bits_equal(r1.value, r2.value));
  CHECK(bits_equal(r1.abs_error_estimate, r2.abs_error_estimate));
  CHECK(r1.n_evals == r2.n_evals);

  const auto s1 = quad::integrate_semi_infinite(
      [](double v) { return std::exp(-v) * std::cos(v); }, 0.0, {});
  const auto s2 = quad::integrate_semi_infinite(
      [](double v) { return std::exp(-v) * std::cos(v); }, 0.0, {});
  CHECK(bits_equal(s1.value, s2.value));
  CHECK(s1.n_evals == s2.n_evals);
}

TEST_CASE("budget exhaustion carries a partial result") {
  quad::Options o;
  o.left_singular = true;
  o.abs_tol = 1e-300;
  o.rel_tol = 1e-300;
  o.max_evals = 150;
  bool thrown = false;
  try {
    quad::integrate([](double t) { return std::log(t); }, 0.0, 1.0, o);
  } catch (const quad::BudgetExceeded& e) {
    thrown = true;
    const auto& p = e.partial();
    CHECK_FALSE(p.converged);
    CHECK(p.n_evals <= o.max_evals);
    CHECK(p.n_evals > 0);
    CHECK(std::fabs(p.value - (-1.0)) < 0.5);
  }
  CHECK(thrown);
}

TEST_CASE("budget exhaustion on the adaptive bisection path") {
  quad::Options o;
  o.abs_tol = 1e-300;
  o.rel_tol = 1e-300;
  o.max_evals = 200;
  bool thrown = false;
  try {
    quad::integrate([](double t) { return std::sin(50.0 * t); }, 0.0, 1.0, o);
  } catch (const quad::BudgetExceeded& e) {
    thrown = true;
    CHECK_FALSE(e.partial().converged);
    CHECK(e.partial().n_evals <= o.max_evals + 15);
  }
  CHECK(thrown);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(quad::integrate([](double) { return 0.0; }, 1.0, 0.0, {}),
                  std::invalid_argument);
  quad::Options bad;
  bad.max_evals = 10;
  CHECK_THROWS_AS(quad::integrate([](double) { return 0.0; }, 0.0, 1.0, bad),
                  std::invalid_argument);
  quad::Options neg;
  neg.abs_tol = -1.0;
  CHECK_THROWS_AS(quad::integrate([](double) { return 0.0; }, 0.0, 1.0, neg),
                  std::invalid_argument);
}
