#include "bgeom/curvature.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "bgeom/errors.hpp"
#include "bgeom/extrapolate.hpp"

namespace bgeom {

const std::array<SliceComponent, 10> kSliceComponents{{
    {{0, 0, 0, 0}, 1},
    {{0, 0, 1, 1}, 2},
    {{0, 0, 1, 2}, 3},
    {{0, 0, 2, 2}, 4},
    {{1, 1, 1, 1}, 5},
    {{1, 1, 1, 2}, 6},
    {{1, 1, 2, 2}, 7},
    {{1, 2, 1, 2}, 8},
    {{1, 2, 2, 2}, 9},
    {{2, 2, 2, 2}, 10},
}};

namespace {

using ld = long double;

std::array<int, 3> e(int i) { return unit_index(i); }

double dg(const Jet& jet, int k, int i, int j) {
  return jet.at(index_sum(e(k), e(i)), e(j)).value.real();
}

double ddg(const Jet& jet, int k, int l, int i, int j) {
  return jet.at(index_sum(e(k), e(i)), index_sum(e(l), e(j))).value.real();
}

void require_off_axis(const SlicePoint& s) {
  if (s.y < kAxisEpsilon || s.z < kAxisEpsilon)
    throw Error(ErrorKind::AxisSingular,
                "factor extraction divides by y and z; need y, z >= 1e-2");
}

Jet slice_jet(const SlicePoint& s, const DomainParams& params) {
  const Point3 pt = s.point();
  return wirtinger_jet(log_kernel_field(params), pt, 4, kernel_diff_config(pt, params));
}

std::array<double, 8> extract_g(const Jet& jet, const SlicePoint& s, const DomainParams& params) {
  const ld l = params.lambda, a = s.a, b = s.b, c = s.c, y = s.y, z = s.z;
  const ld b3 = b * b * b;
  return {
      static_cast<double>(dg(jet, 1, 0, 0) * b * c / y),
      static_cast<double>(dg(jet, 2, 0, 0) * std::pow(a, 1 - l) * b * c / z),
      static_cast<double>(dg(jet, 1, 1, 1) * b3 / (y * std::pow(a, l))),
      static_cast<double>(dg(jet, 1, 1, 2) * std::pow(a, 1 - l) * b3 / (y * y * z)),
      static_cast<double>(dg(jet, 1, 2, 1) * std::pow(a, 1 - l) * b3 / (y * y * z)),
      static_cast<double>(dg(jet, 1, 2, 2) * std::pow(a, 2 - 2 * l) * b3 / (y * z * z)),
      static_cast<double>(dg(jet, 2, 2, 1) * std::pow(a, 2 - 2 * l) * b3 / (y * z * z)),
      static_cast<double>(dg(jet, 2, 2, 2) * std::pow(a, 3 - 3 * l) * b3 / z),
  };
}

std::array<double, 10> extract_h(const Jet& jet, const SlicePoint& s, const DomainParams& params) {
  const ld l = params.lambda, a = s.a, b = s.b, c = s.c, y = s.y, z = s.z;
  const ld b2 = b * b, b4 = b2 * b2;
  return {
      static_cast<double>(ddg(jet, 0, 0, 0, 0) * c * c),
      static_cast<double>(ddg(jet, 0, 0, 1, 1) * b2 * c / std::pow(a, l)),
      static_cast<double>(ddg(jet, 0, 0, 1, 2) * std::pow(a, 1 - l) * b2 * c / (y * z)),
      static_cast<double>(ddg(jet, 0, 0, 2, 2) * std::pow(a, 2 - 2 * l) * b2 * c),
      static_cast<double>(ddg(jet, 1, 1, 1, 1) * b4 / std::pow(a, 2 * l)),
      static_cast<double>(ddg(jet, 1, 1, 1, 2) * std::pow(a, 1 - 2 * l) * b4 / (y * z)),
      static_cast<double>(ddg(jet, 1, 1, 2, 2) * std::pow(a, 2 - 3 * l) * b4),
      static_cast<double>(ddg(jet, 1, 2, 1, 2) * std::pow(a, 2 - 2 * l) * b4 / (y * y * z * z)),
      static_cast<double>(ddg(jet, 1, 2, 2, 2) * std::pow(a, 3 - 3 * l) * b4 / (y * z)),
      static_cast<double>(ddg(jet, 2, 2, 2, 2) * std::pow(a, 4 - 4 * l) * b4),
  };
}

// Orbit of (i,j,k,l) under i<->k, j<->l and the conjugation (i,j,k,l) -> (j,i,l,k).
std::vector<std::pair<std::array<int, 4>, bool>> orbit(const std::array<int, 4>& idx) {
  std::vector<std::pair<std::array<int, 4>, bool>> out{{idx, false}};
  for (std::size_t n = 0; n < out.size(); ++n) {
    const auto [v, conj] = out[n];
    const std::array<std::pair<std::array<int, 4>, bool>, 3> next{{
        {{v[2], v[1], v[0], v[3]}, conj},
        {{v[0], v[3], v[2], v[1]}, conj},
        {{v[1], v[0], v[3], v[2]}, !conj},
    }};
    for (const auto& cand : next) {
      const bool seen = std::any_of(out.begin(), out.end(),
                                    [&](const auto& o) { return o.first == cand.first; });
      if (!seen) out.push_back(cand);
    }
  }
  return out;
}

}  // namespace

double CurvatureTensor::weight(int i, int j, int k, int l) const {
  return std::sqrt(std::fabs(diag_[static_cast<std::size_t>(i)] * diag_[static_cast<std::size_t>(j)] *
                             diag_[static_cast<std::size_t>(k)] * diag_[static_cast<std::size_t>(l)]));
}

double CurvatureTensor::scale() const {
  double m = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) m = std::max(m, std::abs((*this)(i, j, k, l)) / weight(i, j, k, l));
  return m;
}

double CurvatureTensor::symmetry_residual() const {
  double m = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          const auto v = (*this)(i, j, k, l);
          const double w = weight(i, j, k, l);
          m = std::max(m, std::abs(v - (*this)(k, j, i, l)) / w);
          m = std::max(m, std::abs(v - (*this)(i, l, k, j)) / w);
          m = std::max(m, std::abs(v - std::conj((*this)(j, i, l, k))) / w);
        }
      }
    }
  }
  return m;
}

double CurvatureTensor::weighted_distance(const CurvatureTensor& other) const {
  double m = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          m = std::max(m, std::abs((*this)(i, j, k, l) - other(i, j, k, l)) / weight(i, j, k, l));
  return m;
}

CurvatureTensor curvature_from_jet(const Jet& jet, HermitianMatrix3* g_out) {
  if (jet.max_order() < 4)
    throw Error(ErrorKind::InvalidArgument, "curvature needs a jet of order 4");
  Eigen::Matrix3cd G;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G(i, j) = jet.at(e(i), e(j)).value;
  const Eigen::Matrix3cd Gi = G.inverse();

  // d_k g_{i pbar} and dbar_l g_{q jbar}
  std::complex<double> D[3][3][3], Dbar[3][3][3];
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int pp = 0; pp < 3; ++pp) {
        D[k][i][pp] = jet.at(index_sum(e(k), e(i)), e(pp)).value;
        Dbar[k][i][pp] = jet.at(e(i), index_sum(e(k), e(pp))).value;
      }

  CurvatureTensor R;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          std::complex<double> v = -jet.at(index_sum(e(k), e(i)), index_sum(e(l), e(j))).value;
          for (int P = 0; P < 3; ++P)
            for (int Q = 0; Q < 3; ++Q) v += Gi(P, Q) * D[k][i][P] * Dbar[l][Q][j];
          R(i, j, k, l) = v;
        }
      }
    }
  }
  R.set_metric_diagonal({G(0, 0).real(), G(1, 1).real(), G(2, 2).real()});
  if (g_out) {
    g_out->m = G;
    g_out->role = MatrixRole::metric;
  }
  return R;
}

NumericCurvature curvature_numeric(const Point3& pt, const DomainParams& params, DiffMode mode) {
  NumericCurvature out;
  out.jet = wirtinger_jet(log_kernel_field(params), pt, 4, kernel_diff_config(pt, params, mode));
  out.R = curvature_from_jet(out.jet, &out.g);
  return out;
}

std::array<double, 8> g_factors(const SlicePoint& s, const DomainParams& params) {
  require_off_axis(s);
  return extract_g(slice_jet(s, params), s, params);
}

std::array<double, 10> h_factors(const SlicePoint& s, const DomainParams& params) {
  require_off_axis(s);
  return extract_h(slice_jet(s, params), s, params);
}

FactorTables factor_tables(const SlicePoint& s, const DomainParams& params) {
  require_off_axis(s);
  return factor_tables_from_jet(slice_jet(s, params), s, params);
}

FactorTables factor_tables_from_jet(const Jet& jet, const SlicePoint& s, const DomainParams& params) {
  require_off_axis(s);
  FactorTables f;
  f.G = extract_g(jet, s, params);
  f.H = extract_h(jet, s, params);
  f.A = a_factors(s, params);
  f.delta = s.delta;
  f.z = s.z;

  const ld l = params.lambda, d = s.delta, z2 = static_cast<ld>(s.z) * s.z;
  const ld A1 = f.A.A1, A2 = f.A.A2, A4 = f.A.A4;
  auto G = [&](int i) -> ld { return f.G[static_cast<std::size_t>(i - 1)]; };
  auto H = [&](int i) -> ld { return f.H[static_cast<std::size_t>(i - 1)]; };

  const ld F1 = z2 * (G(6) - l * d * G(5)) / (1 - d);
  const ld F2 = (G(8) - l * d * z2 * G(7)) / (1 - d);
  std::array<ld, 11> Ht{};
  Ht[1] = -H(1);
  Ht[2] = -H(2) + d * G(1) * G(1) / A1;
  Ht[3] = -H(3) + G(1) * G(2) / A1;
  Ht[4] = -H(4) + z2 * G(2) * G(2) / A1;
  Ht[5] = -H(5) + d * G(3) * G(3) / A2;
  Ht[6] = -H(6) + d * G(3) * G(5) / A2;
  Ht[7] = -H(7) + d * d * z2 * G(5) * G(5) / A2 + d * (1 - d) * F1 * F1 / A4;
  Ht[8] = -H(8) + G(3) * G(7) / A2;
  Ht[9] = -H(9) + d * z2 * G(5) * G(7) / A2 + (1 - d) * F1 * F2 / A4;
  Ht[10] = -H(10) + d * z2 * z2 * G(7) * G(7) / A2 + z2 * (1 - d) * F2 * F2 / A4;
  for (std::size_t i = 1; i <= 10; ++i) f.Htilde[i - 1] = static_cast<double>(Ht[i]);

  f.F1 = static_cast<double>(F1);
  f.F2 = static_cast<double>(F2);
  f.Ftilde[0] = static_cast<double>((Ht[4] - l * d * z2 * Ht[3]) / (1 - d));
  f.Ftilde[1] = static_cast<double>((Ht[7] - l * d * z2 * Ht[6]) / (1 - d));
  f.Ftilde[2] = static_cast<double>(
      (Ht[10] - 4 * l * l * d * z2 * Ht[7] + 3 * l * l * l * d * d * z2 * z2 * Ht[6]) /
      ((1 - d) * (1 - d)));
  return f;
}

double g1_closed(const SlicePoint& s, const DomainParams& params) {
  const UConstants u = u_constants(params);
  const ld p = params.p, d = s.delta;
  const ld den = u.u3 + u.u4 * d;
  return static_cast<double>(
      4 / p - (u.u5 + u.u6 * d) * ((2 * p - 3) * u.u4 * d + 3 * (p - 1) * u.u3 + p * u.u4) / (p * den * den) +
      (2 * (p - 1) * u.u6 * d + (3 * p - 2) * u.u5 + p * u.u6) / (p * den));
}

double g2_closed(const SlicePoint& s, const DomainParams& params) {
  const UConstants u = u_constants(params);
  const ld p = params.p, l = params.lambda, d = s.delta;
  const ld den = u.u3 + u.u4 * d;
  return static_cast<double>(4 * l / p + l / p * (u.u5 + u.u6 * d) / den -
                             l * d * (1 - d) * (u.u4 * u.u5 - u.u3 * u.u6) / (den * den));
}

double h1_closed(const SlicePoint& s, const DomainParams& params) {
  const UConstants u = u_constants(params);
  const ld d = s.delta;
  const ld den = u.u3 + u.u4 * d;
  const ld n5 = u.u5 + u.u6 * d;
  return static_cast<double>(8 + 4 * (u.u1 + u.u2 * d) / den - 2 * n5 * n5 / (den * den));
}

double slice_prefactor(int htilde, const SlicePoint& s, const DomainParams& params) {
  const ld l = params.lambda, a = s.a, b = s.b, c = s.c, y = s.y, z = s.z;
  const ld b2 = b * b, b4 = b2 * b2;
  ld v = 0;
  switch (htilde) {
    case 1: v = 1 / (c * c); break;
    case 2: v = std::pow(a, l) / (b2 * c); break;
    case 3: v = y * z * std::pow(a, l - 1) / (b2 * c); break;
    case 4: v = std::pow(a, 2 * l - 2) / (b2 * c); break;
    case 5: v = std::pow(a, 2 * l) / b4; break;
    case 6: v = y * z * std::pow(a, 2 * l - 1) / b4; break;
    case 7: v = std::pow(a, 3 * l - 2) / b4; break;
    case 8: v = std::pow(a, 2 * l - 2) * y * y * z * z / b4; break;
    case 9: v = std::pow(a, 3 * l - 3) * y * z / b4; break;
    case 10: v = std::pow(a, 4 * l - 4) / b4; break;
    default: throw Error(ErrorKind::InvalidArgument, "Htilde index must lie in 1..10");
  }
  return static_cast<double>(v);
}

CurvatureTensor assemble_slice_tensor(const FactorTables& f, const SlicePoint& s,
                                      const DomainParams& params) {
  CurvatureTensor R;
  for (const auto& comp : kSliceComponents) {
    const double v = slice_prefactor(comp.htilde, s, params) *
                     f.Htilde[static_cast<std::size_t>(comp.htilde - 1)];
    for (const auto& [idx, conj] : orbit(comp.idx)) {
      (void)conj;  // real at slice points
      R(idx[0], idx[1], idx[2], idx[3]) = v;
    }
  }
  const auto g = metric_closed(s, params);
  R.set_metric_diagonal({g.m(0, 0).real(), g.m(1, 1).real(), g.m(2, 2).real()});
  return R;
}

ClosedSliceCurvature curvature_closed_slice(const SlicePoint& s, const DomainParams& params) {
  ClosedSliceCurvature out;
  out.factors = factor_tables(s, params);
  out.R = assemble_slice_tensor(out.factors, s, params);
  return out;
}

std::array<double, 5> identity_residuals(const FactorTables& f, const DomainParams& params) {
  const double l = params.lambda, d = f.delta, z2 = f.z * f.z;
  auto G = [&](int i) { return f.G[static_cast<std::size_t>(i - 1)]; };
  auto Ht = [&](int i) { return f.Htilde[static_cast<std::size_t>(i - 1)]; };
  auto rel = [](double lhs, std::initializer_list<double> terms) {
    double scale = std::fabs(lhs);
    double rhs = 0;
    for (double t : terms) {
      rhs += t;
      scale = std::max(scale, std::fabs(t));
    }
    return scale > 0 ? std::fabs(lhs - rhs) / scale : 0.0;
  };
  return {
      rel(G(4), {l * G(3)}),
      rel(Ht(3), {l * Ht(2)}),
      rel(Ht(6), {l * Ht(5)}),
      rel(Ht(8), {l * Ht(6)}),
      rel(Ht(9), {2 * l * Ht(7), -l * l * d * z2 * Ht(6)}),
  };
}

FLimits f_limits(const DomainParams& params) {
  params.validate();
  const double p = params.p, l = params.lambda;
  return {l * (3 + 1 / p), 2 * l * l * (1 + 3 * p) / p};
}

FTildeLimits ftilde_limits(const DomainParams& params) {
  params.validate();
  const double p = params.p, l = params.lambda;
  return {-4 * l * (2 + p) / (p * (1 + 2 * p)), -l * (3 + 1 / p), -2 * l * l * (3 + 1 / p)};
}

FExtrapolation extrapolate_f_limits(const DomainParams& params, double z) {
  const auto& nodes = default_limit_nodes();
  std::vector<FactorTables> tables;
  tables.reserve(nodes.size());
  for (double sn : nodes) tables.push_back(factor_tables(SlicePoint::from_delta(1.0 - sn, z, params), params));
  auto limit = [&](auto pick) {
    std::vector<double> v;
    for (const auto& t : tables) v.push_back(pick(t));
    return neville_at_zero(nodes, v);
  };
  FExtrapolation out;
  out.f.F1 = limit([](const FactorTables& t) { return t.F1; });
  out.f.F2 = limit([](const FactorTables& t) { return t.F2; });
  out.ftilde.Ft1 = limit([](const FactorTables& t) { return t.Ftilde[0]; });
  out.ftilde.Ft2 = limit([](const FactorTables& t) { return t.Ftilde[1]; });
  out.ftilde.Ft3 = limit([](const FactorTables& t) { return t.Ftilde[2]; });
  return out;
}

}  // namespace bgeom
