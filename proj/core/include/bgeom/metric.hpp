#pragma once

// Bergman metric g_{i jbar} = d_i dbar_j log B on the slice K1, in closed form
// and by numerical differentiation.

#include <Eigen/Core>
#include <array>

#include "bgeom/diffengine.hpp"
#include "bgeom/domain.hpp"

namespace bgeom {

enum class MatrixRole { metric, inverse_metric, ricci };

/// 3x3 Hermitian matrix; entry (i, j) holds the (i, jbar) component.
struct HermitianMatrix3 {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  MatrixRole role = MatrixRole::metric;

  /// max |m(i,j) - conj(m(j,i))|
  double hermitian_residual() const;
  /// Cholesky of the Hermitian part succeeds.
  bool positive_definite() const;
  /// Largest |diagonal| entry; the natural scale for absolute comparisons.
  double trace_scale() const;
};

struct AFactors {
  double A1, A2, A3, A4;
};

/// A1..A4 at the slice point. A4 is (A3 - lambda^2 delta z^2 A2) / (1 - delta).
AFactors a_factors(const SlicePoint& s, const DomainParams& params);

/// The alternative rational expression for A4, with its free symbol r read
/// as lambda. Cross-check only.
double a4_display(const SlicePoint& s, const DomainParams& params);

/// |A4 (1 - delta) - (A3 - lambda^2 delta z^2 A2)| relative to A3.
double a4_relation_residual(const SlicePoint& s, const DomainParams& params);

HermitianMatrix3 metric_closed(const SlicePoint& s, const DomainParams& params);
HermitianMatrix3 inverse_metric_closed(const SlicePoint& s, const DomainParams& params);

/// Relative residual of g22 g33 - g23 g32 = A2 A4 / (a^{2-2 lambda} b^3).
double det_identity_residual(const SlicePoint& s, const DomainParams& params);

/// det g / B from the closed form pi^3 p^2 A1 A2 A4 / ((p+1)((lambda+lambda p+p) + (lambda-1) p delta)).
double det_ratio(const SlicePoint& s, const DomainParams& params);
/// det(metric_closed) / bergman_kernel, computed directly.
double det_ratio_direct(const SlicePoint& s, const DomainParams& params);
/// delta -> 1 limit of det_ratio.
double det_ratio_limit(const DomainParams& params);

struct ALimits {
  double A1, A2, A4;
};

/// delta -> 1 limits: 4(2+p)/(1+2p), 3 + 1/p, lambda (3 + 1/p).
ALimits limits_A(const DomainParams& params);

struct NumericMetric {
  HermitianMatrix3 g;
  /// Error estimate per entry.
  Eigen::Matrix3d error = Eigen::Matrix3d::Zero();
};

/// Metric from the order-2 jet of log B at an arbitrary interior point.
NumericMetric metric_numeric(const Point3& pt, const DomainParams& params,
                             DiffMode mode = DiffMode::reinhardt);

/// ||g * ginv - I||_max
double inverse_product_residual(const HermitianMatrix3& g, const HermitianMatrix3& ginv);

}  // namespace bgeom
