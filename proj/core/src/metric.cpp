#include "bgeom/metric.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cmath>
#include <numbers>

namespace bgeom {

namespace {

using ld = long double;

struct AFactorsLD {
  ld A1, A2, A3, A4;
};

AFactorsLD a_factors_ld(const SlicePoint& s, const DomainParams& params) {
  const UConstants u = u_constants(params);
  const ld p = params.p, l = params.lambda;
  const ld d = s.delta;
  const ld z2 = static_cast<ld>(s.z) * s.z;
  const ld den = static_cast<ld>(u.u3) + u.u4 * d;
  const ld A1 = (u.u5 + u.u6 * d) / den + 4;
  const ld A2 = 1 / p + 3 + u.u3 * u.u4 * (1 - d) * (1 - d) / (den * den);
  const ld A3 =
      (1 + d * (l * z2 - 1)) * l / p + d * d * (2 - 2 * l) + d * (2 * l * l * z2 - 4) + l + 2 +
      l * d *
          (u.u3 * u.u4 * (1 + d * d) * (1 + l * z2) +
           static_cast<ld>(u.u4) * u.u4 * d * (1 + (l * z2 - 1) * d + d * d) +
           static_cast<ld>(u.u3) * u.u3 * (1 + l * z2)) /
          (den * den);
  const ld A4 = (A3 - l * l * d * z2 * A2) / (1 - d);
  return {A1, A2, A3, A4};
}

}  // namespace

double HermitianMatrix3::hermitian_residual() const {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool HermitianMatrix3::positive_definite() const {
  const Eigen::Matrix3cd h = 0.5 * (m + m.adjoint());
  Eigen::LLT<Eigen::Matrix3cd> llt(h);
  return llt.info() == Eigen::Success;
}

double HermitianMatrix3::trace_scale() const { return m.diagonal().cwiseAbs().maxCoeff(); }

AFactors a_factors(const SlicePoint& s, const DomainParams& params) {
  const auto f = a_factors_ld(s, params);
  return {static_cast<double>(f.A1), static_cast<double>(f.A2), static_cast<double>(f.A3),
          static_cast<double>(f.A4)};
}

double a4_display(const SlicePoint& s, const DomainParams& params) {
  const ld p = params.p, r = params.lambda, d = s.delta;
  const ld num = d * d * p * p * (r - 2) * (r - 1) + d * p * (r - 1) * (4 * p * r + 4 * p + 3 * r) +
                 p * p * r * r + 3 * p * p * r + 2 * p * p + 2 * p * r * r + 3 * p * r + r * r;
  return static_cast<double>(num / (p * (d * p * (r - 1) + p * r + p + r)));
}

double a4_relation_residual(const SlicePoint& s, const DomainParams& params) {
  const auto f = a_factors_ld(s, params);
  const ld l = params.lambda, d = s.delta, z2 = static_cast<ld>(s.z) * s.z;
  const ld lhs = f.A4 * (1 - d);
  const ld rhs = f.A3 - l * l * d * z2 * f.A2;
  return static_cast<double>(std::fabs(lhs - rhs) / std::fabs(f.A3));
}

HermitianMatrix3 metric_closed(const SlicePoint& s, const DomainParams& params) {
  const auto f = a_factors_ld(s, params);
  const ld l = params.lambda, a = s.a, b = s.b;
  HermitianMatrix3 g;
  g.role = MatrixRole::metric;
  g.m(0, 0) = static_cast<double>(f.A1 / s.c);
  g.m(1, 1) = static_cast<double>(std::pow(a, l) * f.A2 / (b * b));
  const double g23 = static_cast<double>(l * s.y * s.z * f.A2 / (std::pow(a, 1 - l) * b * b));
  g.m(1, 2) = g23;
  g.m(2, 1) = g23;
  g.m(2, 2) = static_cast<double>(f.A3 / (std::pow(a, 2 - 2 * l) * b * b));
  return g;
}

HermitianMatrix3 inverse_metric_closed(const SlicePoint& s, const DomainParams& params) {
  const auto f = a_factors_ld(s, params);
  const ld l = params.lambda, a = s.a, b = s.b;
  HermitianMatrix3 gi;
  gi.role = MatrixRole::inverse_metric;
  gi.m(0, 0) = static_cast<double>(s.c / f.A1);
  gi.m(1, 1) = static_cast<double>(b * f.A3 / (f.A2 * f.A4));
  const double g23 = static_cast<double>(-l * s.y * s.z * std::pow(a, 1 - l) * b / f.A4);
  gi.m(1, 2) = g23;
  gi.m(2, 1) = g23;
  gi.m(2, 2) = static_cast<double>(std::pow(a, 2 - l) * b / f.A4);
  return gi;
}

double det_identity_residual(const SlicePoint& s, const DomainParams& params) {
  const auto f = a_factors_ld(s, params);
  const ld l = params.lambda, a = s.a, b = s.b;
  const ld g22 = std::pow(a, l) * f.A2 / (b * b);
  const ld g23 = l * s.y * s.z * f.A2 / (std::pow(a, 1 - l) * b * b);
  const ld g33 = f.A3 / (std::pow(a, 2 - 2 * l) * b * b);
  const ld minor = g22 * g33 - g23 * g23;
  const ld expected = f.A2 * f.A4 / (std::pow(a, 2 - 2 * l) * b * b * b);
  return static_cast<double>(std::fabs(minor - expected) / std::fabs(expected));
}

double det_ratio(const SlicePoint& s, const DomainParams& params) {
  const auto f = a_factors_ld(s, params);
  const ld p = params.p, l = params.lambda, d = s.delta;
  const ld pi3 = std::pow(std::numbers::pi_v<ld>, 3);
  return static_cast<double>(pi3 * p * p * f.A1 * f.A2 * f.A4 /
                             ((p + 1) * ((l + l * p + p) + (l - 1) * p * d)));
}

double det_ratio_direct(const SlicePoint& s, const DomainParams& params) {
  const auto g = metric_closed(s, params);
  const double B = bergman_kernel({0.0, s.y * s.y, s.z * s.z}, params);
  return g.m.determinant().real() / B;
}

double det_ratio_limit(const DomainParams& params) {
  const auto L = limits_A(params);
  const double p = params.p, l = params.lambda;
  const double pi3 = std::pow(std::numbers::pi, 3);
  return pi3 * p * p * L.A1 * L.A2 * L.A4 / ((p + 1) * l * (1 + 2 * p));
}

ALimits limits_A(const DomainParams& params) {
  params.validate();
  const double p = params.p, l = params.lambda;
  return {4 * (2 + p) / (1 + 2 * p), 3 + 1 / p, l * (3 + 1 / p)};
}

NumericMetric metric_numeric(const Point3& pt, const DomainParams& params, DiffMode mode) {
  const ScalarField f = log_kernel_field(params);
  const DiffConfig cfg = kernel_diff_config(pt, params, mode);
  const Jet jet = wirtinger_jet(f, pt, 2, cfg);
  NumericMetric out;
  out.g.role = MatrixRole::metric;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Estimate& e = jet.at(unit_index(i), unit_index(j));
      out.g.m(i, j) = e.value;
      out.error(i, j) = e.error;
    }
  }
  return out;
}

double inverse_product_residual(const HermitianMatrix3& g, const HermitianMatrix3& ginv) {
  return (g.m * ginv.m - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace bgeom
