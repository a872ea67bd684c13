#pragma once

// The domains E_{p,lambda} = {(|x|^{2p} + |y|^2)^{1/lambda} + |z|^2 < 1} in C^3
// and their explicit Bergman kernel.
//
// Every power a^lambda, b^{1/p}, b^{k/p-3} is a real power of a strictly
// positive real: the kernel is only evaluated where a, b, c > 0.

#include <array>

#include "bgeom/diffengine.hpp"

namespace bgeom {

struct DomainParams {
  double p = 1.0;
  double lambda = 1.0;

  /// Throws InvalidArgument unless p > 0 and lambda > 0.
  static DomainParams make(double p, double lambda);
  void validate() const;
};

struct UConstants {
  double u1, u2, u3, u4, u5, u6;

  /// u3 + u4 * delta; positive for delta in [0, 1].
  double denom(double delta) const { return u3 + u4 * delta; }
};

UConstants u_constants(const DomainParams& params);

struct NuPoint {
  double nu1 = 0.0;
  double nu2 = 0.0;
  double nu3 = 0.0;

  static NuPoint from_point(const Point3& pt);
};

/// A point (0, y, z) of the slice K1 together with
///   a = 1 - z^2,  b = a^lambda - y^2,  c = b^{1/p},  delta = y^2 / a^lambda.
struct SlicePoint {
  double y = 0.0;
  double z = 0.0;
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double delta = 0.0;

  /// Throws InvalidArgument unless 0 <= y, z < 1 and the point is interior.
  static SlicePoint make(double y, double z, const DomainParams& params);
  /// Slice point with prescribed delta in [0, 1); b is taken as a^lambda (1 - delta)
  /// so that the delta-dependence is exact near the boundary.
  static SlicePoint from_delta(double delta, double z, const DomainParams& params);

  Point3 point() const { return {0.0L, static_cast<real_t>(y), static_cast<real_t>(z)}; }
};

/// (|x|^{2p} + |y|^2)^{1/lambda} + |z|^2 - 1; negative iff interior.
double membership_defect(const Point3& pt, const DomainParams& params);

inline constexpr double kKernelFloor = 1e-12;

/// The four-term explicit formula. Throws NearBoundary when one of the
/// relative gaps 1 - nu3, b / a^lambda, c / b^{1/p} is below `floor` (this
/// includes exterior points) or when B is not representable in double.
double bergman_kernel(const NuPoint& nu, const DomainParams& params, double floor = kKernelFloor);

struct FactoredKernel {
  std::array<double, 6> Ni{};
  double N = 0.0;
  double D = 0.0;
  double B = 0.0;
};

/// B = N / (pi^3 p^2 D) with N = sum u_i N_i and D = a^2 c^4.
FactoredKernel kernel_factored(const NuPoint& nu, const DomainParams& params,
                               double floor = kKernelFloor);

/// log B as a field on C^3, with its Reinhardt profile in nu. The profile
/// extends analytically to nu1 < 0, which the reinhardt stencils use at
/// points with x = 0.
ScalarField log_kernel_field(const DomainParams& params);

/// Per-axis stencil scales for log B at nu: the distance, in each nu_i, over
/// which a, b or c changes by a fixed fraction of itself.
std::array<double, 3> kernel_nu_scales(const NuPoint& nu, const DomainParams& params);

/// Differentiation setup for log B at `pt`: reinhardt mode with
/// kernel_nu_scales, or real6 mode with the matching lengths in z_i.
DiffConfig kernel_diff_config(const Point3& pt, const DomainParams& params,
                              DiffMode mode = DiffMode::reinhardt);

/// Smallest eigenvalue of the complex Hessian of the exhaustion
/// u = (|x|^{2p} + |y|^2)^{1/lambda} + |z|^2. Throws SingularLocus if x = 0 or y = 0.
double psh_defect(const Point3& pt, const DomainParams& params);

}  // namespace bgeom
