#pragma once

namespace orthobound::bounds {

// Per-dimension constants of the two main dichotomies. g_n and h_n are
// strictly increasing in n with values in (0,1); a is the fixed constant
// (sqrt(5/2)-1)/log(sqrt(5/2)).
struct ConstantsBundle {
  int n = 0;
  double g_n = 0.0;
  double h_n = 0.0;
  double a = 0.0;
  double half_log_52 = 0.0;
};

enum class InputKind { volume, boundary_volume, systole };

// Which side of a theorem's dichotomy a reported bound belongs to:
// short_ortho bounds come from the kernel envelope (orthogeodesic below the
// log(5/2)/2 threshold), long_ortho bounds from the collar argument.
enum class Branch { short_ortho, long_ortho };

struct BoundReport {
  int n = 0;
  InputKind input_kind = InputKind::volume;
  double input_value = 0.0;
  Branch branch = Branch::short_ortho;
  double bound_value = 0.0;
  // The dichotomy's other side: a threshold on L for the conditional
  // bounds, the non-selected branch value for the unconditional minimum.
  double alternative = 0.0;
  ConstantsBundle constants;
};

// The alternative threshold of the sharpened dimension-3 dichotomy.
inline constexpr double kDim3LengthThreshold = 1.25;

ConstantsBundle constants_bundle(int n);

// Conditional bound on e^L - 1 given the volume; branch = short_ortho and
// the long-ortho alternative L >= log(5/2)/2 is reported alongside.
BoundReport ortholength_bound(int n, double volume);

// min(sqrt(5/2)-1, g_n sqrt(2 pi e/(n-1))): unconditional once Vol < 1.
double dichotomy_bound(int n);

// Volume floor ((g_n/2) sqrt(2 pi e/(n-1)) / systole)^(n-2) for closed
// manifolds, via the Belolipetsky-Thomson systole comparison.
double bt_volume_bound(int n, double systole);

// Unconditional volume bound from the boundary volume: the minimum of the
// linear branch log(5/2)/4 * A (long ortho) and the power branch
// (h_n/3) sqrt(2 pi e/(n-1)) A^((n-2)/(n-1)) (short ortho); records which
// branch attains it and keeps the other as `alternative`.
BoundReport volume_vs_boundary(int n, double boundary_volume);

// min(log(5/2)/8, h_n/6) * V_(n-1); odd n only.
double odd_dim_volume_floor(int n);

// V_n / 2 by generalized Gauss-Bonnet; even n only, n >= 2.
double even_dim_volume_floor(int n);

// (2/n)^(n^2/2). Asymptotic comparator, not a verified constant; callers
// should surface the asymptotic flag when presenting it.
double adeboye_wei_comparator(int n);

// (rho_n/2) V_(n-1) with Kellerhals' orthoscheme estimates of Miyamoto's
// constant; rho_6 reused for n > 6. Odd n only.
double miyamoto_kellerhals_floor(int n);

// Basmajian summand: volume of the hyperbolic (n-1)-ball of radius
// log(coth(l/2)).
double basmajian_term(int n, double l);

// pi/volume as a bound on e^L - 1, valid unless L > kDim3LengthThreshold.
double dim3_short_ortho_bound(double volume);

const char* branch_name(Branch b);
const char* input_kind_name(InputKind k);

}  // namespace orthobound::bounds
