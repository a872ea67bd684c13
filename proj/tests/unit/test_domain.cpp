#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bgeom/domain.hpp"
#include "bgeom/errors.hpp"

using namespace bgeom;

namespace {

using cld = std::complex<real_t>;

NuPoint random_interior(std::mt19937_64& gen, const DomainParams& P, double cap) {
  std::uniform_real_distribution<double> U(0, 1);
  const double nu3 = cap * U(gen), aL = std::pow(1 - nu3, P.lambda);
  const double nu2 = cap * aL * U(gen);
  const double nu1 = std::pow((cap * aL - nu2) * U(gen), 1 / P.p);
  return {nu1, nu2, nu3};
}

}  // namespace

TEST(Domain, ParamsValidation) {
  EXPECT_THROW(DomainParams::make(0, 1), Error);
  EXPECT_THROW(DomainParams::make(1, -2), Error);
  EXPECT_THROW(DomainParams::make(std::nan(""), 1), Error);
  EXPECT_NO_THROW(DomainParams::make(0.2, 5));
}

TEST(Domain, UConstantSums) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> L(std::log(0.05), std::log(20.0));
  for (int i = 0; i < 2000; ++i) {
    const DomainParams P = DomainParams::make(std::exp(L(gen)), std::exp(L(gen)));
    const UConstants u = u_constants(P);
    // Relative to the size of the summands: each u_i carries its own rounding.
    const double odd = std::fabs(u.u1) + std::fabs(u.u3) + std::fabs(u.u5);
    const double even = std::fabs(u.u2) + std::fabs(u.u4) + std::fabs(u.u6);
    EXPECT_LE(std::fabs(u.u1 + u.u3 + u.u5 - 6 * P.lambda), 1e-14 * odd);
    EXPECT_LE(std::fabs(u.u2 + u.u4 + u.u6), 1e-14 * even);
    EXPECT_GT(u.denom(0), 0);
    EXPECT_GT(u.denom(1), 0);
  }
}

TEST(Domain, BallKernel) {
  const DomainParams P = DomainParams::make(1, 1);
  for (auto [x, y, z] : {std::tuple{0.0, 0.2, 0.3}, {0.3, 0.1, 0.5}, {0.5, 0.5, 0.5}}) {
    const double r2 = x * x + y * y + z * z;
    const double expect = 6 / (std::pow(std::numbers::pi, 3) * std::pow(1 - r2, 4));
    EXPECT_NEAR(bergman_kernel({x * x, y * y, z * z}, P), expect, 1e-13 * expect);
  }
}

TEST(Domain, FactoredAgreesWithDirect) {
  std::mt19937_64 gen(5);
  for (double p : {0.2, 0.5, 1.0, 2.0, 5.0})
    for (double lam : {0.2, 0.5, 1.0, 2.0, 5.0}) {
      const DomainParams P = DomainParams::make(p, lam);
      for (int i = 0; i < 40; ++i) {
        const NuPoint nu = random_interior(gen, P, 0.95);
        const double B = bergman_kernel(nu, P);
        const FactoredKernel f = kernel_factored(nu, P);
        EXPECT_GT(B, 0);
        EXPECT_LE(std::fabs(B - f.B), 1e-12 * B) << "p=" << p << " lambda=" << lam;
      }
    }
}

TEST(Domain, MembershipAndBoundary) {
  const DomainParams P = DomainParams::make(0.5, 2);
  EXPECT_LT(membership_defect({cld(0.1), cld(0.2), cld(0.3)}, P), 0);
  EXPECT_GT(membership_defect({cld(0.9), cld(0.9), cld(0.3)}, P), 0);
  try {
    bergman_kernel({0.81, 0.81, 0.09}, P);
    FAIL() << "expected NearBoundary";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NearBoundary);
  }
}

TEST(Domain, SlicePoint) {
  const DomainParams P = DomainParams::make(0.7, 1.5);
  const SlicePoint s = SlicePoint::make(0.4, 0.5, P);
  EXPECT_DOUBLE_EQ(s.a, 0.75);
  EXPECT_NEAR(s.b, std::pow(0.75, 1.5) - 0.16, 1e-15);
  EXPECT_NEAR(s.c, std::pow(s.b, 1 / 0.7), 1e-15);
  EXPECT_NEAR(s.delta, 0.16 / std::pow(0.75, 1.5), 1e-15);
  const SlicePoint t = SlicePoint::from_delta(s.delta, 0.5, P);
  EXPECT_NEAR(t.y, 0.4, 1e-14);
  EXPECT_NEAR(t.b, s.b, 1e-14);
  EXPECT_THROW(SlicePoint::make(0.9, 0.9, P), Error);
  EXPECT_THROW(SlicePoint::make(-0.1, 0.2, P), Error);
}

TEST(Domain, Pseudoconvexity) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> U(0, 6.283);
  for (double p : {0.2, 0.5, 1.0, 2.0, 5.0})
    for (double lam : {0.2, 1.0, 5.0}) {
      const DomainParams P = DomainParams::make(p, lam);
      for (int i = 0; i < 10; ++i) {
        const NuPoint nu = random_interior(gen, P, 0.9);
        if (nu.nu1 < 1e-4 || nu.nu2 < 1e-4) continue;
        const Point3 pt{std::polar<real_t>(std::sqrt(nu.nu1), U(gen)),
                        std::polar<real_t>(std::sqrt(nu.nu2), U(gen)),
                        std::polar<real_t>(std::sqrt(nu.nu3), U(gen))};
        EXPECT_GE(psh_defect(pt, P), -1e-8) << "p=" << p << " lambda=" << lam;
      }
    }
  try {
    psh_defect({cld(0), cld(0.2), cld(0.1)}, DomainParams::make(1, 1));
    FAIL() << "expected SingularLocus";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularLocus);
  }
}

TEST(Domain, LogKernelFieldMatchesKernel) {
  const DomainParams P = DomainParams::make(2, 0.5);
  const ScalarField f = log_kernel_field(P);
  const Point3 pt{cld(0.1, 0.2), cld(0.3), cld(0, 0.4)};
  const NuPoint nu = NuPoint::from_point(pt);
  EXPECT_NEAR(double(f.value(pt)), std::log(bergman_kernel(nu, P)), 1e-13);
  EXPECT_NEAR(double(f.profile({nu.nu1, nu.nu2, nu.nu3})), std::log(bergman_kernel(nu, P)), 1e-13);
  EXPECT_NEAR(double(f.profile_wide({nu.nu1, nu.nu2, nu.nu3})), std::log(bergman_kernel(nu, P)), 1e-13);
}
