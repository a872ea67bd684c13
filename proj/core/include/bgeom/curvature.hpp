#pragma once

// Chern curvature of the Bergman metric,
//   R_{i jbar k lbar} = -d_k dbar_l g_{i jbar} + g^{q pbar} (d_k g_{i pbar}) (dbar_l g_{q jbar}),
// and the factor families G, H, Htilde, F, Ftilde on the slice K1.
//
// Sign convention: with this formula the unit ball has holomorphic
// sectional curvature -1/2.

#include <array>
#include <complex>

#include "bgeom/diffengine.hpp"
#include "bgeom/domain.hpp"
#include "bgeom/metric.hpp"

namespace bgeom {

class CurvatureTensor {
 public:
  using value_type = std::complex<double>;

  value_type& operator()(int i, int j, int k, int l) { return c_[index(i, j, k, l)]; }
  const value_type& operator()(int i, int j, int k, int l) const { return c_[index(i, j, k, l)]; }

  /// Metric diagonal used to make components dimensionless: component
  /// (i,j,k,l) is compared in units of sqrt(g_ii g_jj g_kk g_ll).
  void set_metric_diagonal(const std::array<double, 3>& d) { diag_ = d; }
  double weight(int i, int j, int k, int l) const;

  /// max over components of |R| / weight.
  double scale() const;
  /// Largest violation of R_{ijkl} = R_{kjil} = R_{ilkj} = conj(R_{jilk}), in
  /// weighted units.
  double symmetry_residual() const;
  /// max weighted |this - other|.
  double weighted_distance(const CurvatureTensor& other) const;

 private:
  static constexpr std::size_t index(int i, int j, int k, int l) {
    return static_cast<std::size_t>(((i * 3 + j) * 3 + k) * 3 + l);
  }
  std::array<value_type, 81> c_{};
  std::array<double, 3> diag_{1.0, 1.0, 1.0};
};

/// Curvature from an order-4 jet of log B. Fills `g` with the metric when given.
CurvatureTensor curvature_from_jet(const Jet& jet, HermitianMatrix3* g = nullptr);

struct NumericCurvature {
  CurvatureTensor R;
  HermitianMatrix3 g;
  Jet jet;
};

NumericCurvature curvature_numeric(const Point3& pt, const DomainParams& params,
                                   DiffMode mode = DiffMode::reinhardt);

/// Indices (0-based) of the components R_{i jbar k lbar} listed on the slice;
/// every other component is zero or follows from symmetry.
struct SliceComponent {
  std::array<int, 4> idx;
  int htilde;  // 1-based Htilde index
};
extern const std::array<SliceComponent, 10> kSliceComponents;

/// Exclusion radius around y = 0 and z = 0 for factor extraction.
inline constexpr double kAxisEpsilon = 1e-2;

struct FactorTables {
  std::array<double, 8> G{};
  std::array<double, 10> H{};
  std::array<double, 10> Htilde{};
  double F1 = 0, F2 = 0;
  std::array<double, 3> Ftilde{};
  AFactors A{};
  double delta = 0;
  double z = 0;
};

/// G1..G8: numerical d_k g_{i jbar} divided by their slice prefactors.
/// Throws AxisSingular if y or z is below kAxisEpsilon.
std::array<double, 8> g_factors(const SlicePoint& s, const DomainParams& params);
/// H1..H10, likewise from d_k dbar_l g_{i jbar}.
std::array<double, 10> h_factors(const SlicePoint& s, const DomainParams& params);

/// Full factor family from one jet (G, H extracted; Htilde, F, Ftilde derived).
FactorTables factor_tables(const SlicePoint& s, const DomainParams& params);
FactorTables factor_tables_from_jet(const Jet& jet, const SlicePoint& s, const DomainParams& params);

double g1_closed(const SlicePoint& s, const DomainParams& params);
double g2_closed(const SlicePoint& s, const DomainParams& params);
double h1_closed(const SlicePoint& s, const DomainParams& params);

/// Prefactor of the slice component that carries Htilde_idx (1-based).
double slice_prefactor(int htilde, const SlicePoint& s, const DomainParams& params);

struct ClosedSliceCurvature {
  CurvatureTensor R;
  FactorTables factors;
};

/// Tensor assembled from prefactor * Htilde, completed by symmetry.
ClosedSliceCurvature curvature_closed_slice(const SlicePoint& s, const DomainParams& params);
CurvatureTensor assemble_slice_tensor(const FactorTables& f, const SlicePoint& s,
                                      const DomainParams& params);

/// Relative residuals of G4 = lambda G3, Ht3 = lambda Ht2, Ht6 = lambda Ht5,
/// Ht8 = lambda Ht6, Ht9 = 2 lambda Ht7 - lambda^2 delta z^2 Ht6.
std::array<double, 5> identity_residuals(const FactorTables& f, const DomainParams& params);

struct FLimits {
  double F1, F2;
};
struct FTildeLimits {
  double Ft1, Ft2, Ft3;
};

FLimits f_limits(const DomainParams& params);
FTildeLimits ftilde_limits(const DomainParams& params);

struct FExtrapolation {
  FLimits f;
  FTildeLimits ftilde;
};

/// delta -> 1 limits of F1, F2, Ftilde1..3 at fixed z, by polynomial
/// extrapolation in 1 - delta of numerically extracted values.
FExtrapolation extrapolate_f_limits(const DomainParams& params, double z);

}  // namespace bgeom
