#pragma once

// Orthonormal frames, holomorphic sectional and bisectional curvature,
// boundary scans and the Kaehler-Einstein residual.

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "bgeom/curvature.hpp"
#include "bgeom/metric.hpp"

namespace bgeom {

/// X = k1 d1, Y = t1 d1 + t2 d2, Z = s1 d1 + s2 d2 + s3 d3.
struct OrthonormalFrame {
  double k1 = 0;
  std::complex<double> t1, t2;
  std::complex<double> s1, s2, s3;

  Eigen::Vector3cd X() const { return {k1, 0, 0}; }
  Eigen::Vector3cd Y() const { return {t1, t2, 0}; }
  Eigen::Vector3cd Z() const { return {s1, s2, s3}; }
};

/// g(u, v) = sum u_i conj(v_j) g_{i jbar}
std::complex<double> hermitian_product(const Eigen::Vector3cd& u, const Eigen::Vector3cd& v,
                                      const HermitianMatrix3& g);

/// Gram-Schmidt on d1, d2, d3 for the Hermitian product above. Throws
/// Degenerate if a pivot vanishes.
OrthonormalFrame gram_schmidt(const HermitianMatrix3& g);

/// max over the six products of |g(U,V) - delta_UV|.
double orthonormality_residual(const OrthonormalFrame& f, const HermitianMatrix3& g);

/// R(U, Vbar, W, Xbar) = sum U_i conj(V_j) W_k conj(X_l) R_{i jbar k lbar}
std::complex<double> contract(const CurvatureTensor& R, const Eigen::Vector3cd& U,
                              const Eigen::Vector3cd& V, const Eigen::Vector3cd& W,
                              const Eigen::Vector3cd& X);

enum class HSCSource { closed, numeric };

struct HSCReport {
  double HX = 0, HY = 0, HZ = 0;
  double BXY = 0, BXZ = 0, BYZ = 0;
  /// Largest modulus among the twelve combinations that vanish on the slice.
  double zero_residual = 0;
  /// Heuristic: the largest relative jet error, amplified by (1 - delta)^-2
  /// for the cancellations inside the Z-components.
  double error_estimate = 0;

  std::array<double, 6> values() const { return {HX, HY, HZ, BXY, BXZ, BYZ}; }
};

/// The six curvatures and the vanishing combinations for a tensor in a frame.
HSCReport hsc_from_tensor(const CurvatureTensor& R, const OrthonormalFrame& f);

/// closed: the factor ratios Ht1/A1^2, Ht2/(A1 A2), Ht5/A2^2, Ft1/(A1 A4),
/// Ft2/(A2 A4), Ft3/A4^2. numeric: full contraction of the numerical tensor in
/// the Gram-Schmidt frame of the numerical metric.
HSCReport hsc_report(const SlicePoint& s, const DomainParams& params, HSCSource source);

/// R(v, vbar, v, vbar) / g(v, v)^2. Throws ZeroVector for v = 0.
double hsc_direction(const Point3& pt, const DomainParams& params, const Eigen::Vector3cd& v);

struct ScanSpec {
  int delta_count = 10;
  int z_count = 9;
  double delta_min = 0.05;
  double delta_cap = 0.999;
  double z_min = 0.05;
  double z_max = 0.85;
  unsigned workers = 1;
  /// Also evaluate the closed-form report at every node.
  bool with_closed = false;

  void validate() const;
  std::vector<double> deltas() const;
  std::vector<double> zs() const;
  /// Grid with every interval halved; contains the original nodes.
  ScanSpec refined() const;
};

struct ScanRow {
  double y = 0, z = 0, delta = 0;
  HSCReport hsc;
  std::optional<HSCReport> closed;
  bool near_boundary = false;
};

/// Numerical HSC report on a (delta, z) grid, delta-major. delta is spaced
/// geometrically in 1 - delta so that the boundary is resolved. Row order is
/// fixed by the grid, independent of `workers`.
std::vector<ScanRow> boundary_scan(const DomainParams& params, const ScanSpec& spec);

/// Per component max |value| over the unflagged rows.
std::array<double, 6> scan_sup(const std::vector<ScanRow>& rows);

HermitianMatrix3 ricci_from_jet(const Jet& jet);
/// Ric_{k lbar} = -d_k dbar_l log det g, via the trace of the curvature tensor
/// (reusing the jet of log B rather than differentiating log det g).
HermitianMatrix3 ricci(const Point3& pt, const DomainParams& params);

struct KEResult {
  double c_best = 0;
  double residual = 0;
};

/// Fits Ric = c g over slice points (y, z); each point's pair is normalized by
/// the Frobenius norm of g. residual = max entry of Ric - c g.
KEResult ke_residual(const DomainParams& params, const std::vector<std::pair<double, double>>& points);

/// The five reference slice points used for the golden thresholds.
const std::vector<std::pair<double, double>>& ke_reference_points();

/// Half the residual of an independent 40-digit evaluation at
/// ke_reference_points(); a correct implementation lands near twice these.
inline constexpr double kKeThresholdP2L1 = 0.004493246913670468;
inline constexpr double kKeThresholdP1L2 = 0.0012515051252332042;

}  // namespace bgeom
