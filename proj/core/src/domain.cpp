#include "bgeom/domain.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bgeom/errors.hpp"

namespace bgeom {

namespace {

constexpr long double kPi3 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> *
                             std::numbers::pi_v<long double>;

template <class T>
struct KernelParts {
  T a, b, c;
};

template <class T>
KernelParts<T> parts(T n1, T n2, T n3, T p, T lam) {
  using std::pow;
  const T a = 1 - n3;
  const T b = (a > 0 ? T(pow(a, lam)) : T(0)) - n2;
  const T c = (b > 0 ? T(pow(b, 1 / p)) : T(0)) - n1;
  return {a, b, c};
}

// N = sum u_i N_i in long double; a, b > 0 assumed.
template <class T>
T numerator(T n1, T n2, T a, T b, T p, T lam, std::array<T, 6>* terms = nullptr) {
  using std::pow;
  const T al = pow(a, lam);
  const T al2 = al * al;
  const T b1 = pow(b, 1 / p - 3);
  const T b2 = pow(b, 2 / p - 3);
  const T b3 = pow(b, 3 / p - 3);
  const std::array<T, 6> Ni{al2 * b1 * n1 * n1, al * b1 * n1 * n1 * n2, al2 * b3,
                            al * b3 * n2,        al2 * b2 * n1,          al * b2 * n1 * n2};
  const std::array<T, 6> u{(p - 1) * (lam * (p - 1) + p), p * (p - 1) * (lam - 1),
                           (p + 1) * (lam + lam * p + p), p * (p + 1) * (lam - 1),
                           -2 * (lam * (p * p - 2) + p * p), -2 * (lam - 1) * p * p};
  T N = 0;
  for (std::size_t i = 0; i < 6; ++i) N += u[i] * Ni[i];
  if (terms) *terms = Ni;
  return N;
}

// The relative gaps 1 - nu3, b / a^lambda and c / b^{1/p} each lie in (0, 1]
// inside the domain; a^lambda = b + nu2 and b^{1/p} = c + nu1.
void check_interior(const KernelParts<long double>& k, double floor, const NuPoint& nu) {
  const long double gb = k.b > 0 ? k.b / (k.b + nu.nu2) : 0.0L;
  const long double gc = k.c > 0 ? k.c / (k.c + nu.nu1) : 0.0L;
  if (!(k.a >= floor) || !(gb >= floor) || !(gc >= floor)) {
    std::ostringstream os;
    os.precision(6);
    os << "kernel refused at nu = (" << nu.nu1 << ", " << nu.nu2 << ", " << nu.nu3
       << "): relative gaps a = " << static_cast<double>(k.a) << ", b = " << static_cast<double>(gb)
       << ", c = " << static_cast<double>(gc) << " (floor " << floor << ")";
    throw Error(ErrorKind::NearBoundary, os.str());
  }
}

double representable(long double v, const char* what) {
  const double d = static_cast<double>(v);
  if (!std::isfinite(d) || !(std::fabs(d) >= std::numeric_limits<double>::min()))
    throw Error(ErrorKind::NearBoundary, std::string(what) + " is not representable in double");
  return d;
}

}  // namespace

DomainParams DomainParams::make(double p, double lambda) {
  DomainParams d{p, lambda};
  d.validate();
  return d;
}

void DomainParams::validate() const {
  if (!(p > 0.0) || !std::isfinite(p))
    throw Error(ErrorKind::InvalidArgument, "p must be a positive real (p > 0)");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw Error(ErrorKind::InvalidArgument, "lambda must be a positive real (lambda > 0)");
}

UConstants u_constants(const DomainParams& params) {
  const double p = params.p;
  const double l = params.lambda;
  return {(p - 1) * (l * (p - 1) + p), p * (p - 1) * (l - 1), (p + 1) * (l + l * p + p),
          p * (p + 1) * (l - 1),       -2 * (l * (p * p - 2) + p * p), -2 * (l - 1) * p * p};
}

NuPoint NuPoint::from_point(const Point3& pt) {
  return {static_cast<double>(std::norm(pt[0])), static_cast<double>(std::norm(pt[1])),
          static_cast<double>(std::norm(pt[2]))};
}

SlicePoint SlicePoint::make(double y, double z, const DomainParams& params) {
  params.validate();
  if (!(y >= 0.0 && y < 1.0) || !(z >= 0.0 && z < 1.0))
    throw Error(ErrorKind::InvalidArgument, "slice coordinates must satisfy 0 <= y, z < 1");
  SlicePoint s;
  s.y = y;
  s.z = z;
  const long double a = 1.0L - static_cast<long double>(z) * z;
  const long double al = std::pow(a, static_cast<long double>(params.lambda));
  const long double b = al - static_cast<long double>(y) * y;
  if (!(b > 0.0L)) throw Error(ErrorKind::InvalidArgument, "slice point is not interior (b <= 0)");
  s.a = static_cast<double>(a);
  s.b = static_cast<double>(b);
  s.c = static_cast<double>(std::pow(b, 1.0L / params.p));
  s.delta = static_cast<double>(static_cast<long double>(y) * y / al);
  return s;
}

SlicePoint SlicePoint::from_delta(double delta, double z, const DomainParams& params) {
  params.validate();
  if (!(delta >= 0.0 && delta < 1.0) || !(z >= 0.0 && z < 1.0))
    throw Error(ErrorKind::InvalidArgument, "need 0 <= delta < 1 and 0 <= z < 1");
  SlicePoint s;
  s.z = z;
  const long double a = 1.0L - static_cast<long double>(z) * z;
  const long double al = std::pow(a, static_cast<long double>(params.lambda));
  const long double b = al * (1.0L - delta);
  s.a = static_cast<double>(a);
  s.b = static_cast<double>(b);
  s.c = static_cast<double>(std::pow(b, 1.0L / params.p));
  s.delta = delta;
  s.y = static_cast<double>(std::sqrt(delta * al));
  return s;
}

double membership_defect(const Point3& pt, const DomainParams& params) {
  const long double ax = std::abs(pt[0]);
  const long double inner = std::pow(ax, 2.0L * params.p) + std::norm(pt[1]);
  return static_cast<double>(std::pow(inner, 1.0L / params.lambda) + std::norm(pt[2]) - 1.0L);
}

double bergman_kernel(const NuPoint& nu, const DomainParams& params, double floor) {
  params.validate();
  const long double n1 = nu.nu1, n2 = nu.nu2, n3 = nu.nu3;
  const long double p = params.p, l = params.lambda;
  const auto k = parts(n1, n2, n3, p, l);
  check_interior(k, floor, nu);
  const long double a = k.a, b = k.b;
  // Term-by-term transcription of the explicit formula, with
  // (nu1 - b^{1/p})^4 in every denominator.
  const long double e4 = std::pow(n1 - std::pow(b, 1 / p), 4);
  const long double common = kPi3 * p * p * e4;
  const long double t1 = std::pow(b, 1 / p - 3) * n1 * n1 * (p - 1) * (l * (p - 1) + p) /
                         (std::pow(a, 2 - 2 * l) * common);
  const long double t2 =
      std::pow(a, l - 2) * std::pow(b, 1 / p - 3) * n1 * n1 * (p - 1) * (l - 1) * n2 * p / common;
  const long double t3 = std::pow(b, 3 / p - 3) * (p + 1) *
                         (std::pow(a, l) * (l + l * p + p) + (l - 1) * n2 * p) /
                         (std::pow(a, 2 - l) * common);
  const long double t4 = std::pow(b, 2 / p - 3) * 2 * n1 *
                         (std::pow(a, l) * (l * (p * p - 2) + p * p) + (l - 1) * n2 * p * p) /
                         (std::pow(a, 2 - l) * common);
  return representable(t1 + t2 + t3 - t4, "B");
}

FactoredKernel kernel_factored(const NuPoint& nu, const DomainParams& params, double floor) {
  params.validate();
  const long double n1 = nu.nu1, n2 = nu.nu2, n3 = nu.nu3;
  const long double p = params.p, l = params.lambda;
  const auto k = parts(n1, n2, n3, p, l);
  check_interior(k, floor, nu);
  std::array<long double, 6> Ni{};
  const long double N = numerator(n1, n2, k.a, k.b, p, l, &Ni);
  const long double D = k.a * k.a * std::pow(k.c, 4);
  FactoredKernel out;
  for (std::size_t i = 0; i < 6; ++i) out.Ni[i] = static_cast<double>(Ni[i]);
  out.N = representable(N, "N");
  out.D = representable(D, "D");
  out.B = representable(N / (kPi3 * p * p * D), "B");
  return out;
}

ScalarField log_kernel_field(const DomainParams& params) {
  params.validate();
  const long double p = params.p, l = params.lambda;
  ScalarField f;
  f.profile_contains = [p, l](const Nu3& nu) {
    const auto k = parts(nu[0], nu[1], nu[2], p, l);
    return k.a > 0 && k.b > 0 && k.c > 0;
  };
  f.profile = [p, l](const Nu3& nu) -> real_t {
    const auto k = parts(nu[0], nu[1], nu[2], p, l);
    if (!(k.a > 0 && k.b > 0 && k.c > 0)) return std::numeric_limits<real_t>::quiet_NaN();
    const long double N = numerator(nu[0], nu[1], k.a, k.b, p, l);
    return std::log(N) - std::log(kPi3 * p * p) - 2 * std::log(k.a) - 4 * std::log(k.c);
  };
  const wide_t pw = params.p, lw = params.lambda;
  const wide_t log_norm = log(boost::multiprecision::pow(boost::math::constants::pi<wide_t>(), 3) * pw * pw);
  f.profile_wide = [pw, lw, log_norm](const WideNu3& nu) -> wide_t {
    const auto k = parts(nu[0], nu[1], nu[2], pw, lw);
    if (!(k.a > 0 && k.b > 0 && k.c > 0)) return std::numeric_limits<wide_t>::quiet_NaN();
    const wide_t N = numerator(nu[0], nu[1], k.a, k.b, pw, lw);
    return log(N) - log_norm - 2 * log(k.a) - 4 * log(k.c);
  };
  auto profile = f.profile;
  f.contains = [p, l](const Point3& pt) {
    const auto k = parts(std::norm(pt[0]), std::norm(pt[1]), std::norm(pt[2]), p, l);
    return k.a > 0 && k.b > 0 && k.c > 0;
  };
  f.value = [profile](const Point3& pt) {
    return profile({std::norm(pt[0]), std::norm(pt[1]), std::norm(pt[2])});
  };
  return f;
}

std::array<double, 3> kernel_nu_scales(const NuPoint& nu, const DomainParams& params) {
  const long double p = params.p, l = params.lambda;
  const auto k = parts<long double>(nu.nu1, nu.nu2, nu.nu3, p, l);
  if (!(k.a > 0 && k.b > 0 && k.c > 0))
    throw Error(ErrorKind::DomainEscape, "point is outside E_{p,lambda}");
  const long double s1 = k.c;
  const long double s2 = std::min(k.b, p * k.b * k.c / std::pow(k.b, 1 / p));
  const long double s3 = std::min(k.a / (2 * l + 2), s2 / (l * std::pow(k.a, l - 1)));
  return {static_cast<double>(s1), static_cast<double>(s2), static_cast<double>(s3)};
}

DiffConfig kernel_diff_config(const Point3& pt, const DomainParams& params, DiffMode mode) {
  DiffConfig cfg;
  cfg.mode = mode;
  const auto s = kernel_nu_scales(NuPoint::from_point(pt), params);
  if (mode == DiffMode::reinhardt) {
    cfg.axis_scale = s;
  } else {
    // long double stencils: a larger step balances truncation against rounding.
    cfg.base_step = 0.12;
    for (std::size_t i = 0; i < 3; ++i) {
      const double r = static_cast<double>(std::abs(pt[i]));
      cfg.axis_scale[i] = r > 0 ? std::min(std::sqrt(s[i]), s[i] / (2 * r)) : std::sqrt(s[i]);
    }
  }
  return cfg;
}

double psh_defect(const Point3& pt, const DomainParams& params) {
  params.validate();
  if (std::abs(pt[0]) == 0.0L || std::abs(pt[1]) == 0.0L)
    throw Error(ErrorKind::SingularLocus, "psh_defect needs x != 0 and y != 0");
  const long double p = params.p, l = params.lambda;
  ScalarField u;
  u.profile = [p, l](const Nu3& nu) -> real_t {
    return std::pow(std::pow(nu[0], p) + nu[1], 1 / l) + nu[2];
  };
  // Analytic wherever nu1 > 0 and nu1^p + nu2 > 0; nu2 may go negative.
  u.profile_contains = [p](const Nu3& nu) { return nu[0] > 0 && std::pow(nu[0], p) + nu[1] > 0; };
  const auto nu = NuPoint::from_point(pt);
  DiffConfig cfg;
  cfg.axis_scale = {nu.nu1, std::pow(nu.nu1, params.p) + nu.nu2, 1.0};
  const Jet jet = wirtinger_jet(u, pt, 2, cfg);
  Eigen::Matrix3cd h;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h(i, j) = jet.at(unit_index(i), unit_index(j)).value;
  const Eigen::Matrix3cd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace bgeom
