#include "bgeom/frame.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "bgeom/errors.hpp"

namespace bgeom {

namespace {

using Vec = Eigen::Vector3cd;

double jet_relative_error(const Jet& jet) {
  std::array<double, kMaxDerivOrder + 1> peak{};
  for (const auto& [req, est] : jet)
    peak[static_cast<std::size_t>(req.order())] =
        std::max(peak[static_cast<std::size_t>(req.order())], std::abs(est.value));
  double worst = 0;
  for (const auto& [req, est] : jet) {
    const double mag = std::abs(est.value);
    if (req.order() < 2 || mag <= 1e-12 * peak[static_cast<std::size_t>(req.order())]) continue;
    worst = std::max(worst, est.error / mag);
  }
  return worst;
}

}  // namespace

std::complex<double> hermitian_product(const Vec& u, const Vec& v, const HermitianMatrix3& g) {
  return u.transpose() * g.m * v.conjugate();
}

OrthonormalFrame gram_schmidt(const HermitianMatrix3& g) {
  auto normalize = [&](const Vec& v, const char* which) {
    const double n2 = hermitian_product(v, v, g).real();
    if (!(n2 > 1e-300) || !std::isfinite(n2))
      throw Error(ErrorKind::Degenerate, std::string("Gram-Schmidt pivot vanishes at ") + which);
    return Vec(v / std::sqrt(n2));
  };
  const Vec X = normalize(Vec::Unit(0), "X");
  Vec v = Vec::Unit(1) - hermitian_product(Vec::Unit(1), X, g) * X;
  const Vec Y = normalize(v, "Y");
  Vec w = Vec::Unit(2) - hermitian_product(Vec::Unit(2), X, g) * X -
          hermitian_product(Vec::Unit(2), Y, g) * Y;
  const Vec Z = normalize(w, "Z");
  OrthonormalFrame f;
  f.k1 = X(0).real();
  f.t1 = Y(0);
  f.t2 = Y(1);
  f.s1 = Z(0);
  f.s2 = Z(1);
  f.s3 = Z(2);
  return f;
}

double orthonormality_residual(const OrthonormalFrame& f, const HermitianMatrix3& g) {
  const std::array<Vec, 3> e{f.X(), f.Y(), f.Z()};
  double worst = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j)
      worst = std::max(worst, std::abs(hermitian_product(e[i], e[j], g) - (i == j ? 1.0 : 0.0)));
  return worst;
}

std::complex<double> contract(const CurvatureTensor& R, const Vec& U, const Vec& V, const Vec& W,
                              const Vec& X) {
  std::complex<double> acc = 0;
  for (int i = 0; i < 3; ++i) {
    if (U(i) == 0.0) continue;
    for (int j = 0; j < 3; ++j) {
      if (V(j) == 0.0) continue;
      for (int k = 0; k < 3; ++k) {
        if (W(k) == 0.0) continue;
        for (int l = 0; l < 3; ++l)
          acc += U(i) * std::conj(V(j)) * W(k) * std::conj(X(l)) * R(i, j, k, l);
      }
    }
  }
  return acc;
}

HSCReport hsc_from_tensor(const CurvatureTensor& R, const OrthonormalFrame& f) {
  const Vec X = f.X(), Y = f.Y(), Z = f.Z();
  HSCReport r;
  r.HX = contract(R, X, X, X, X).real();
  r.HY = contract(R, Y, Y, Y, Y).real();
  r.HZ = contract(R, Z, Z, Z, Z).real();
  r.BXY = contract(R, X, X, Y, Y).real();
  r.BXZ = contract(R, X, X, Z, Z).real();
  r.BYZ = contract(R, Y, Y, Z, Z).real();
  const std::array<std::array<const Vec*, 4>, 12> zeros{{
      {&X, &X, &X, &Y}, {&Y, &Y, &Y, &X}, {&Z, &Z, &Z, &Y}, {&Y, &X, &Y, &X},
      {&X, &X, &X, &Z}, {&Y, &Y, &Y, &Z}, {&Z, &Z, &Z, &X}, {&Z, &X, &Z, &X},
      {&X, &X, &Y, &Z}, {&Y, &Y, &X, &Z}, {&Z, &Z, &X, &Y}, {&Z, &Y, &Z, &Y},
  }};
  for (const auto& q : zeros)
    r.zero_residual = std::max(r.zero_residual, std::abs(contract(R, *q[0], *q[1], *q[2], *q[3])));
  return r;
}

HSCReport hsc_report(const SlicePoint& s, const DomainParams& params, HSCSource source) {
  const NumericCurvature num = curvature_numeric(s.point(), params);
  const double amplification = 1.0 / ((1.0 - s.delta) * (1.0 - s.delta));
  HSCReport r;
  if (source == HSCSource::numeric) {
    r = hsc_from_tensor(num.R, gram_schmidt(num.g));
  } else {
    const FactorTables f = factor_tables_from_jet(num.jet, s, params);
    const CurvatureTensor R = assemble_slice_tensor(f, s, params);
    r = hsc_from_tensor(R, gram_schmidt(metric_closed(s, params)));
    const auto& A = f.A;
    r.HX = f.Htilde[0] / (A.A1 * A.A1);
    r.BXY = f.Htilde[1] / (A.A1 * A.A2);
    r.HY = f.Htilde[4] / (A.A2 * A.A2);
    r.BXZ = f.Ftilde[0] / (A.A1 * A.A4);
    r.BYZ = f.Ftilde[1] / (A.A2 * A.A4);
    r.HZ = f.Ftilde[2] / (A.A4 * A.A4);
  }
  double peak = 0;
  for (double v : r.values()) peak = std::max(peak, std::fabs(v));
  r.error_estimate = jet_relative_error(num.jet) * amplification * peak;
  return r;
}

double hsc_direction(const Point3& pt, const DomainParams& params, const Vec& v) {
  if (v.norm() == 0.0) throw Error(ErrorKind::ZeroVector, "direction must be nonzero");
  const NumericCurvature num = curvature_numeric(pt, params);
  const double n2 = hermitian_product(v, v, num.g).real();
  return contract(num.R, v, v, v, v).real() / (n2 * n2);
}

void ScanSpec::validate() const {
  if (delta_count < 2 || z_count < 2)
    throw Error(ErrorKind::InvalidArgument, "scan grid needs at least 2 points per axis");
  if (!(delta_min >= 0.0 && delta_min < delta_cap))
    throw Error(ErrorKind::InvalidArgument, "need 0 <= delta_min < delta_cap");
  if (!(delta_cap <= 1.0 - 1e-3))
    throw Error(ErrorKind::InvalidArgument, "delta cap must not exceed 1 - 1e-3");
  if (!(z_min >= 0.0 && z_min < z_max && z_max < 1.0))
    throw Error(ErrorKind::InvalidArgument, "need 0 <= z_min < z_max < 1");
  if (workers < 1) throw Error(ErrorKind::InvalidArgument, "workers must be >= 1");
}

std::vector<double> ScanSpec::deltas() const {
  const double s0 = 1.0 - delta_min, s1 = 1.0 - delta_cap;
  std::vector<double> out;
  for (int k = 0; k < delta_count; ++k) {
    const double t = static_cast<double>(k) / (delta_count - 1);
    out.push_back(k == 0 ? delta_min : k == delta_count - 1 ? delta_cap : 1.0 - s0 * std::pow(s1 / s0, t));
  }
  return out;
}

std::vector<double> ScanSpec::zs() const {
  std::vector<double> out;
  for (int k = 0; k < z_count; ++k)
    out.push_back(k == z_count - 1 ? z_max : z_min + (z_max - z_min) * k / (z_count - 1));
  return out;
}

ScanSpec ScanSpec::refined() const {
  ScanSpec r = *this;
  r.delta_count = 2 * delta_count - 1;
  r.z_count = 2 * z_count - 1;
  return r;
}

std::vector<ScanRow> boundary_scan(const DomainParams& params, const ScanSpec& spec) {
  params.validate();
  spec.validate();
  const auto ds = spec.deltas();
  const auto zs = spec.zs();
  std::vector<ScanRow> rows(ds.size() * zs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      ScanRow& row = rows[i];
      const SlicePoint s = SlicePoint::from_delta(ds[i / zs.size()], zs[i % zs.size()], params);
      row.y = s.y;
      row.z = s.z;
      row.delta = s.delta;
      try {
        row.hsc = hsc_report(s, params, HSCSource::numeric);
        if (spec.with_closed) row.closed = hsc_report(s, params, HSCSource::closed);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NearBoundary && e.kind() != ErrorKind::DomainEscape) throw;
        row.near_boundary = true;
      }
    }
  };
  const unsigned n = std::min<unsigned>(spec.workers, static_cast<unsigned>(rows.size()));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&] {
        try {
          work();
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = rows.size();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  return rows;
}

std::array<double, 6> scan_sup(const std::vector<ScanRow>& rows) {
  std::array<double, 6> sup{};
  for (const auto& row : rows) {
    if (row.near_boundary) continue;
    const auto v = row.hsc.values();
    for (std::size_t i = 0; i < 6; ++i) sup[i] = std::max(sup[i], std::fabs(v[i]));
  }
  return sup;
}

HermitianMatrix3 ricci_from_jet(const Jet& jet) {
  HermitianMatrix3 g;
  const CurvatureTensor R = curvature_from_jet(jet, &g);
  const Eigen::Matrix3cd gi = g.m.inverse();
  HermitianMatrix3 ric;
  ric.role = MatrixRole::ricci;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      std::complex<double> acc = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += gi(j, i) * R(i, j, k, l);
      ric.m(k, l) = acc;
    }
  return ric;
}

HermitianMatrix3 ricci(const Point3& pt, const DomainParams& params) {
  return ricci_from_jet(curvature_numeric(pt, params).jet);
}

KEResult ke_residual(const DomainParams& params, const std::vector<std::pair<double, double>>& points) {
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "KE sample must be nonempty");
  std::vector<std::pair<Eigen::Matrix3cd, Eigen::Matrix3cd>> mats;
  for (const auto& [y, z] : points) {
    const SlicePoint s = SlicePoint::make(y, z, params);
    const NumericCurvature num = curvature_numeric(s.point(), params);
    const HermitianMatrix3 ric = ricci_from_jet(num.jet);
    const double scale = num.g.m.norm();
    mats.emplace_back(num.g.m / scale, ric.m / scale);
  }
  double num = 0, den = 0;
  for (const auto& [g, r] : mats) {
    num += (g.conjugate().cwiseProduct(r)).sum().real();
    den += g.squaredNorm();
  }
  KEResult out;
  out.c_best = num / den;
  for (const auto& [g, r] : mats) out.residual = std::max(out.residual, (r - out.c_best * g).cwiseAbs().maxCoeff());
  return out;
}

const std::vector<std::pair<double, double>>& ke_reference_points() {
  static const std::vector<std::pair<double, double>> pts{
      {0.1, 0.1}, {0.2, 0.5}, {0.5, 0.2}, {0.4, 0.4}, {0.3, 0.7}};
  return pts;
}

}  // namespace bgeom
