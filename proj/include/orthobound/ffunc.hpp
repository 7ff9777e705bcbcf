#pragma once

#include <vector>

#include "orthobound/quadrature.hpp"

namespace orthobound::ffunc {

// Constants of the kernel lower envelope F_n(l) >= K_n/(e^l-1)^(n-2),
// valid for l <= half_log_52(). k_n_floor is the explicit floor that K_n
// itself is proved to dominate.
struct KernelConstants {
  int n = 0;
  double a_n = 0.0;
  double k_n = 0.0;
  double k_n_floor = 0.0;
};

// Half of log(5/2), the validity threshold of the envelope. Computed, never
// a literal.
double half_log_52();

// The kernel F_n(l) by the integral formula, prefactor
// 2^(n-1) V_(n-2) V_(n-3) / V_(n-1), with the r -> 1 endpoint flagged
// singular. Positive and finite for every l > 0.
quad::Result fn_integral(int n, double l, const quad::Options& opts = {});

// Elementary dimension-3 form 2*pi*(l+1)/(e^(2l)-1).
double f3_closed(double l);

KernelConstants kernel_constants(int n);

// K_n/(e^l-1)^(n-2); domain 0 < l <= half_log_52() (boundary included).
double fn_lower_bound(int n, double l);

// Total volume of a manifold with the given finite orthospectrum: the sum
// of kernel values over the list. Uses f3_closed when n = 3.
double bk_identity_sum(int n, const std::vector<double>& spectrum,
                       const quad::Options& opts = {});

}  // namespace orthobound::ffunc
