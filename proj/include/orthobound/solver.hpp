#pragma once

#include <functional>

namespace orthobound::solver {

// Default |f| / bracket-width tolerance of the packaged solves; chosen so
// the root error stays below the kernel quadrature tolerance.
inline constexpr double kDefaultRootTol = 3e-11;

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// Brent-style bracketed root finder: bisection with inverse-quadratic and
// secant acceleration. Stops when |f(root)| <= tol or the bracket width
// falls below tol*max(1,|root|). Throws on a bracket without sign change
// and after 200 iterations without convergence. Deterministic.
RootResult find_root(const std::function<double(double)>& f, double lo,
                     double hi, double tol);

// Root l of F_n(l) = A*l/2 (collar balance; f3_closed when n = 3). The
// bracket is discovered by geometric expansion from l = 1.
RootResult solve_collar_balance(int n, double boundary_volume,
                                double tol = kDefaultRootTol);

// Root l0 of K_n/(e^{l0}-1)^(n-2) = A*l0/2, the envelope form of the same
// balance. l0 minorizes the collar-balance root while both sit below the
// envelope threshold.
RootResult solve_l0(int n, double boundary_volume,
                    double tol = kDefaultRootTol);

// Common value of F_3(x) = 4*pi*S_3(x/2) at the balance point: the
// dimension-3 volume bound obtained by maximizing min of the two sides.
double dim3_volume_bound();

// Root of the general balance F_n(x) = A*S_n(x/2).
RootResult general_volume_root(int n, double boundary_volume,
                               double tol = kDefaultRootTol);

// Same balance in general dimension with boundary volume A:
// F_n(x) = A*S_n(x/2); returns the common value (the kernel side at the
// root of general_volume_root).
double general_volume_bound(int n, double boundary_volume,
                            double tol = kDefaultRootTol);

}  // namespace orthobound::solver
