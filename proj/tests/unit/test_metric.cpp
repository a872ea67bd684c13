#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "bgeom/errors.hpp"
#include "bgeom/extrapolate.hpp"
#include "bgeom/metric.hpp"
#include "golden.hpp"

using namespace bgeom;

namespace {

const double kPs[] = {0.2, 0.5, 1.0, 2.0, 5.0};

std::vector<SlicePoint> sample_slice(const DomainParams& P) {
  std::vector<SlicePoint> out;
  for (double y : {0.05, 0.35, 0.65})
    for (double z : {0.05, 0.45, 0.85}) {
      const double delta = y * y / std::pow(1 - z * z, P.lambda);
      if (delta <= 0.95) out.push_back(SlicePoint::make(y, z, P));
    }
  return out;
}

}  // namespace

TEST(Metric, BallClosedForm) {
  const DomainParams P = DomainParams::make(1, 1);
  for (const auto& s : sample_slice(P)) {
    const HermitianMatrix3 g = metric_closed(s, P);
    const double r2 = s.y * s.y + s.z * s.z;
    EXPECT_NEAR(g.m(0, 0).real(), 4 / (1 - r2), 1e-12 * 4 / (1 - r2));
    // 4 (delta_ij / (1 - r^2) + conj(w_i) w_j / (1 - r^2)^2)
    EXPECT_NEAR(g.m(1, 2).real(), 4 * s.y * s.z / ((1 - r2) * (1 - r2)), 1e-12 * g.trace_scale());
  }
}

TEST(Metric, ClosedMatchesNumeric) {
  for (double p : kPs)
    for (double lam : kPs) {
      const DomainParams P = DomainParams::make(p, lam);
      for (const auto& s : sample_slice(P)) {
        const HermitianMatrix3 g = metric_closed(s, P);
        const NumericMetric n = metric_numeric(s.point(), P);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const double w = std::sqrt(g.m(i, i).real() * g.m(j, j).real());
            EXPECT_LE(std::abs(n.g.m(i, j) - g.m(i, j)), 1e-6 * w) << "p=" << p << " lambda=" << lam;
          }
        EXPECT_LT(g.hermitian_residual(), 1e-15 * g.trace_scale());
        EXPECT_TRUE(g.positive_definite());
      }
    }
}

TEST(Metric, OffSlicePatternInReal6Mode) {
  const DomainParams P = DomainParams::make(0.5, 2);
  const SlicePoint s = SlicePoint::make(0.35, 0.45, P);
  const NumericMetric n = metric_numeric(s.point(), P, DiffMode::real6);
  const double tr = n.g.trace_scale();
  EXPECT_LE(std::abs(n.g.m(0, 1)), 1e-6 * tr);
  EXPECT_LE(std::abs(n.g.m(0, 2)), 1e-6 * tr);
  EXPECT_LE(std::abs(n.g.m(1, 2) - metric_closed(s, P).m(1, 2)), 1e-6 * tr);
}

TEST(Metric, InverseAndDeterminant) {
  for (double p : kPs)
    for (double lam : kPs) {
      const DomainParams P = DomainParams::make(p, lam);
      for (const auto& s : sample_slice(P)) {
        EXPECT_LE(inverse_product_residual(metric_closed(s, P), inverse_metric_closed(s, P)), 1e-10);
        EXPECT_LE(det_identity_residual(s, P), 1e-10);
        EXPECT_LE(std::fabs(det_ratio_direct(s, P) / det_ratio(s, P) - 1), 1e-8);
        EXPECT_LE(a4_relation_residual(s, P), 1e-10);
        const AFactors A = a_factors(s, P);
        EXPECT_NEAR(a4_display(s, P), A.A4, 1e-10 * A.A4);
      }
    }
}

TEST(Metric, BoundaryLimits) {
  const DomainParams P = DomainParams::make(0.2, 1);
  EXPECT_NEAR(limits_A(P).A1, 44.0 / 7, 1e-14);
  for (double p : kPs)
    for (double lam : kPs) {
      const DomainParams Q = DomainParams::make(p, lam);
      const ALimits lim = limits_A(Q);
      const auto& nodes = default_limit_nodes();
      auto at = [&](auto f) {
        return extrapolate_to_boundary([&](double d) { return f(SlicePoint::from_delta(d, 0.5, Q)); }, nodes);
      };
      EXPECT_NEAR(at([&](const SlicePoint& s) { return a_factors(s, Q).A1; }), lim.A1, 1e-4 * lim.A1);
      EXPECT_NEAR(at([&](const SlicePoint& s) { return a_factors(s, Q).A2; }), lim.A2, 1e-4 * lim.A2);
      EXPECT_NEAR(at([&](const SlicePoint& s) { return a_factors(s, Q).A4; }), lim.A4, 1e-4 * lim.A4);
      const double r = at([&](const SlicePoint& s) { return det_ratio(s, Q); });
      EXPECT_NEAR(r, det_ratio_limit(Q), 1e-2 * det_ratio_limit(Q));
    }
}

TEST(Metric, GoldenAFactors) {
  for (const auto& g : oracle::golden()["factors"]) {
    const DomainParams P = DomainParams::make(g["p"], g["lambda"]);
    const SlicePoint s = SlicePoint::make(g["y"], g["z"], P);
    const AFactors A = a_factors(s, P);
    const double got[] = {A.A1, A.A2, A.A3, A.A4};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], g["A"][i].get<double>(), 1e-12 * got[i]);
    EXPECT_NEAR(s.delta, g["delta"].get<double>(), 1e-14);
  }
}

TEST(Metric, HermitianMatrixChecks) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> N;
  for (int t = 0; t < 50; ++t) {
    Eigen::Matrix3cd M;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M(i, j) = {N(gen), N(gen)};
    HermitianMatrix3 h;
    h.m = M * M.adjoint() + 1e-3 * Eigen::Matrix3cd::Identity();
    EXPECT_LT(h.hermitian_residual(), 1e-14);
    EXPECT_TRUE(h.positive_definite());
    h.m(2, 2) = -10;
    EXPECT_FALSE(h.positive_definite());
  }
}
