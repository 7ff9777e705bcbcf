#pragma once

#include "orthobound/quadrature.hpp"

namespace orthobound::mfunc {

// Which evaluation path produced an mn() value.
enum class MnRegime {
  near_one_series,     // b <= 1 + delta, extended-precision closed form
  closed_form,         // interior b, extended-precision closed form
  large_b_asymptotic,  // b >= big_b, extended-precision closed form
  oracle               // conditioning guard rejected the closed form
};

struct MnConfig {
  double delta = 1e-3;             // near-one band is (1, 1 + delta]
  double big_b = 1e3;              // large-argument band is [big_b, inf)
  double oracle_rel_tol = 1e-9;    // accuracy of the quadrature fallback
  long oracle_max_evals = 2000000; // budget of the quadrature fallback
};

struct MnValue {
  double value = 0.0;
  MnRegime regime = MnRegime::closed_form;
  int n = 0;
  double b = 0.0;
};

// Closed-form kernel moment for dimension n >= 3 at b > 1, evaluated in
// double-double arithmetic. The expression cancels catastrophically as b
// grows, losing about (n-2)*log10(b) digits, so callers must respect
// closed_form_trustworthy() or accept garbage.
double mn_closed(int n, double b);

// Direct quadrature of the defining double integral: no cancellation, used
// to cross-check the closed form and as the fallback when the closed form
// is untrustworthy. Tolerances are interpreted relatively; abs_tol is
// ignored because the value spans hundreds of orders of magnitude.
quad::Result mn_oracle(int n, double b, const quad::Options& opts = {});

// Evaluators for the two singular regimes. Both validate that b lies in
// their band and then evaluate through the same conditioning guard as mn().
double mn_near_one(int n, double b, const MnConfig& cfg = {});
double mn_large_b(int n, double b, const MnConfig& cfg = {});

// Leading asymptotic shape 4*log(b) / ((n-1) * b^(n-1)) as b -> inf.
// A comparison stick for the limit checks, not a primary evaluator.
double mn_asymptotic(int n, double b);

// Estimated decimal digits lost to cancellation in the closed form.
double mn_digits_lost(int n, double b);

// True when the closed form keeps enough of the double-double mantissa to
// return a fully accurate double and all intermediates stay in range.
bool closed_form_trustworthy(int n, double b);

// Banded dispatcher: near-one / interior / large-b closed form, with oracle
// fallback whenever the conditioning guard rejects the closed form.
MnValue mn(int n, double b, const MnConfig& cfg = {});

// Uniform lower bound A_n/(b-1)^(n-2) valid on b in (1, 2].
double mn_lower_bound(int n, double b);

const char* regime_name(MnRegime r);

}  // namespace orthobound::mfunc
