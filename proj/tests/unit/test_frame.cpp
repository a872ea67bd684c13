#include <gtest/gtest.h>

#include <Eigen/QR>
#include <random>

#include "bgeom/errors.hpp"
#include "bgeom/frame.hpp"
#include "golden.hpp"

using namespace bgeom;

namespace {

HermitianMatrix3 random_pd(std::mt19937_64& gen, double cond) {
  std::normal_distribution<double> N;
  Eigen::Matrix3cd M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = {N(gen), N(gen)};
  const Eigen::HouseholderQR<Eigen::Matrix3cd> qr(M);
  const Eigen::Matrix3cd Q = qr.householderQ();
  const Eigen::Vector3d ev(1, std::sqrt(cond), cond);
  HermitianMatrix3 g;
  g.m = Q * ev.cast<std::complex<double>>().asDiagonal() * Q.adjoint();
  return g;
}

}  // namespace

TEST(Frame, GramSchmidtOrthonormal) {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 200; ++t) {
    const HermitianMatrix3 g = random_pd(gen, std::pow(10.0, t % 7));
    const OrthonormalFrame f = gram_schmidt(g);
    EXPECT_LE(orthonormality_residual(f, g), 1e-10);
  }
}

TEST(Frame, GramSchmidtDegenerate) {
  HermitianMatrix3 g;
  g.m = Eigen::Matrix3cd::Identity();
  g.m(0, 0) = 0;
  try {
    gram_schmidt(g);
    FAIL() << "expected Degenerate";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Degenerate);
  }
}

TEST(Frame, GoldenHSC) {
  for (const auto& g : oracle::golden()["factors"]) {
    const DomainParams P = DomainParams::make(g["p"], g["lambda"]);
    const SlicePoint s = SlicePoint::make(g["y"], g["z"], P);
    const HSCReport c = hsc_report(s, P, HSCSource::closed);
    const HSCReport n = hsc_report(s, P, HSCSource::numeric);
    const auto cv = c.values(), nv = n.values();
    const char* names[] = {"HX", "HY", "HZ", "BXY", "BXZ", "BYZ"};
    for (std::size_t i = 0; i < 6; ++i) {
      const double want = g["hsc"][names[i]];
      EXPECT_NEAR(cv[i], want, 1e-10 * std::max(1.0, std::fabs(want))) << names[i];
      EXPECT_NEAR(nv[i], want, 1e-5) << names[i];
    }
    EXPECT_LE(c.zero_residual, 1e-6);
    EXPECT_LE(n.zero_residual, 1e-6);
  }
}

TEST(Frame, SpaceFormIsConstant) {
  const DomainParams P = DomainParams::make(1, 1);
  for (auto [y, z] : {std::pair{0.1, 0.2}, {0.5, 0.3}, {0.3, 0.8}}) {
    const SlicePoint s = SlicePoint::make(y, z, P);
    for (HSCSource src : {HSCSource::closed, HSCSource::numeric}) {
      const HSCReport r = hsc_report(s, P, src);
      EXPECT_NEAR(r.HX, -0.5, 1e-7);
      EXPECT_NEAR(r.HY, -0.5, 1e-7);
      EXPECT_NEAR(r.HZ, -0.5, 1e-7);
      EXPECT_NEAR(r.BXY, -0.25, 1e-7);
      EXPECT_NEAR(r.BXZ, -0.25, 1e-7);
      EXPECT_NEAR(r.BYZ, -0.25, 1e-7);
    }
  }
}

TEST(Frame, ClosedMatchesNumericNearBoundary) {
  for (double p : {0.2, 1.0, 5.0})
    for (double lam : {0.2, 1.0, 5.0}) {
      const DomainParams P = DomainParams::make(p, lam);
      for (double delta : {0.3, 0.9, 0.99})
        for (double z : {0.2, 0.6}) {
          const SlicePoint s = SlicePoint::from_delta(delta, z, P);
          const auto c = hsc_report(s, P, HSCSource::closed).values();
          const auto n = hsc_report(s, P, HSCSource::numeric).values();
          for (std::size_t i = 0; i < 6; ++i)
            EXPECT_NEAR(c[i], n[i], 1e-5) << "p=" << p << " lambda=" << lam << " delta=" << delta;
        }
    }
}

TEST(Frame, HXBoundaryValue) {
  // p = 0.2, lambda = 1: HX tends to 4/121 at the boundary.
  const DomainParams P = DomainParams::make(0.2, 1);
  const double hx = hsc_report(SlicePoint::from_delta(0.999, 0.5, P), P, HSCSource::closed).HX;
  EXPECT_NEAR(hx, 4.0 / 121, 1e-3);
}

TEST(Frame, DirectionalHSC) {
  const DomainParams P = DomainParams::make(1, 1);
  const Point3 pt{std::complex<real_t>(0), std::complex<real_t>(0.3), std::complex<real_t>(0.4)};
  EXPECT_NEAR(hsc_direction(pt, P, Eigen::Vector3cd(1, 0.5, std::complex<double>(0, 1))), -0.5, 1e-7);
  try {
    hsc_direction(pt, P, Eigen::Vector3cd::Zero());
    FAIL() << "expected ZeroVector";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroVector);
  }
}

TEST(Frame, KaehlerEinsteinGolden) {
  const auto& ke = oracle::golden()["ke"];
  for (const auto& c : ke["cases"]) {
    const KEResult r = ke_residual(DomainParams::make(c["p"], c["lambda"]), ke_reference_points());
    EXPECT_NEAR(r.c_best, c["c_best"].get<double>(), 1e-6);
    EXPECT_NEAR(r.residual, c["residual"].get<double>(), 1e-6);
    if (!c["threshold"].is_null()) EXPECT_GT(r.residual, c["threshold"].get<double>());
    else EXPECT_LT(r.residual, 1e-6);
  }
}

TEST(Frame, ScanSpecValidation) {
  ScanSpec s;
  EXPECT_NO_THROW(s.validate());
  ScanSpec bad = s;
  bad.delta_cap = 1.0;
  EXPECT_THROW(bad.validate(), Error);
  bad = s;
  bad.z_count = 1;
  EXPECT_THROW(bad.validate(), Error);
  bad = s;
  bad.workers = 0;
  EXPECT_THROW(bad.validate(), Error);
  const auto d = s.deltas();
  EXPECT_DOUBLE_EQ(d.front(), s.delta_min);
  EXPECT_DOUBLE_EQ(d.back(), s.delta_cap);
  for (std::size_t i = 1; i < d.size(); ++i) EXPECT_GT(d[i], d[i - 1]);
  EXPECT_EQ(s.refined().deltas().size(), 2 * d.size() - 1);
}

TEST(Frame, ScanIndependentOfWorkers) {
  const DomainParams P = DomainParams::make(0.5, 2);
  ScanSpec s;
  s.delta_count = 5;
  s.z_count = 4;
  s.workers = 1;
  const auto a = boundary_scan(P, s);
  s.workers = 4;
  const auto b = boundary_scan(P, s);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].hsc.values(), b[i].hsc.values());
    EXPECT_EQ(a[i].delta, b[i].delta);
  }
  for (double v : scan_sup(a)) EXPECT_TRUE(std::isfinite(v));
}
