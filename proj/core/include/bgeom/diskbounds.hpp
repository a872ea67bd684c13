#pragma once

// Unit-disk Green's function, the radial profile phi, the integrated lower
// bound on the disk, and the constants of the pinched-curvature estimates.

#include <complex>

namespace bgeom {

struct DiskPoint {
  std::complex<double> w;

  /// Throws InvalidArgument unless |w| < 1.
  static DiskPoint make(std::complex<double> w);
};

/// (1/4pi) ln(|1 - conj(x) y|^2 / |x - y|^2), nonnegative, zero on |x| = 1.
/// Throws Coincident for x == y.
double green_disk(std::complex<double> x, std::complex<double> y);
inline double green_disk(DiskPoint x, DiskPoint y) { return green_disk(x.w, y.w); }

/// int_0^{2pi} ln(aa^2 + bb^2 - 2 aa bb cos t) dt by tanh-sinh quadrature.
double ring_integral(double aa, double bb);
/// 4 pi max(ln aa, ln bb)
double ring_integral_closed(double aa, double bb);

/// phi(R) = int_D G((R,0), y) (1 - |y|^2)^2 dA(y), R in [0, 1].
double phi_closed(double R);
/// -int_0^1 r (1 - r^2)^2 max(ln r, ln R) dr by adaptive quadrature.
double phi_reduction_1d(double R);
/// Direct 2D quadrature, polar coordinates centred at (R, 0).
double phi_quadrature_2d(double R);
/// 1/6 - R^2/2 ln R - R^4/8 (4 ln R - 1) - R^6/36 (6 ln R - 1). Does not
/// vanish at R = 1 (gives 23/72); kept for the discrepancy report.
double phi_printed_display(double R);

/// How |grad z| is normalized on the Poincare disk.
enum class GradConvention { grad_unit, grad_sq };

struct DiskInequality {
  double lhs = 0, rhs = 0;
  bool holds = false;
};

/// lhs = 2 pi int_0^1 phi(R)^p R dR,
/// rhs = p^p int_D |z|^p gamma(z; grad z)^{p/2} dA.
DiskInequality disk_inequality(double p, GradConvention convention);

struct BoundsParams {
  int n = 1;
  double a = 1, b = 1, p = 2, t = 1, r = 0;

  void validate() const;
};

struct HeatBound {
  double value = 0;
  bool underflow = false;
};

/// (2 pi t)^-n exp[-r^2/2t - (2n-1)^2 b^2 t/8 - (2n-1) b r/2]
///   * (1 + b r + b^2 t/2)^((2n-1)/2 - 1) * (1 + b r)
/// evaluated in log space; returns 0 with the flag set when it underflows.
HeatBound heat_lower_bound(const BoundsParams& params);

struct BoundConstants {
  double poincare = 0;        // 4 / ((n-1)^2 a^2)
  double mckean_lambda1 = 0;  // (n-1)^2 a^2 / 4
  double cheng_Cp = 0;        // (p^2 / (4 lambda1))^(p/2)
  double thm_constant = 0;    // (p / ((2n-1) a))^p
};

double cheng_constant(double p, double lambda1);
double theorem_constant(int n, double a, double p);
/// Throws DimensionTooSmall for n < 2.
BoundConstants constants(int n, double a, double p);

}  // namespace bgeom
