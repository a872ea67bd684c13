#include "bgeom/diskbounds.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "bgeom/errors.hpp"

namespace bgeom {

namespace {

using std::numbers::pi;
constexpr double kQuadTol = 1e-12;
constexpr unsigned kMaxDepth = 15;

template <class F>
double gk(F f, double lo, double hi) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, kMaxDepth, kQuadTol);
}

void check_radius(double R) {
  if (!(R >= 0.0 && R <= 1.0)) throw Error(ErrorKind::InvalidArgument, "R must lie in [0, 1]");
}

}  // namespace

DiskPoint DiskPoint::make(std::complex<double> w) {
  if (!(std::abs(w) < 1.0)) throw Error(ErrorKind::InvalidArgument, "disk point needs |w| < 1");
  return DiskPoint{w};
}

double green_disk(std::complex<double> x, std::complex<double> y) {
  const double d2 = std::norm(x - y);
  if (d2 == 0.0) throw Error(ErrorKind::Coincident, "Green's function has a pole at x = y");
  return std::log(std::norm(1.0 - std::conj(x) * y) / d2) / (4 * pi);
}

double ring_integral(double aa, double bb) {
  if (!(aa > 0 && bb > 0)) throw Error(ErrorKind::InvalidArgument, "ring integral needs aa, bb > 0");
  // aa^2 + bb^2 - 2 aa bb cos t = (aa - bb)^2 + 4 aa bb sin^2(t/2); the form
  // stays accurate near t = 0 where the two circles touch when aa = bb.
  const double d2 = (aa - bb) * (aa - bb), ab4 = 4 * aa * bb;
  auto f = [&](double t) {
    const double s = std::sin(t / 2);
    if (d2 == 0.0) return std::log(ab4) + 2 * std::log(s);
    return std::log(d2 + ab4 * s * s);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  return 2 * ts.integrate(f, 0.0, pi, 1e-14);
}

double ring_integral_closed(double aa, double bb) {
  return 4 * pi * std::max(std::log(aa), std::log(bb));
}

double phi_closed(double R) {
  check_radius(R);
  // 11/72 - R^2/4 + R^4/8 - R^6/36, with the boundary zero factored out.
  const double s = R * R;
  return (1 - R) * (1 + R) * (11 - 7 * s + 2 * s * s) / 72;
}

double phi_reduction_1d(double R) {
  check_radius(R);
  auto w = [](double r) { return r * (1 - r * r) * (1 - r * r); };
  double inner = 0;
  if (R > 0) inner = -std::log(R) * gk(w, 0.0, R);
  const double outer = -gk([&](double r) { return r > 0 ? w(r) * std::log(r) : 0.0; }, R, 1.0);
  return inner + outer;
}

double phi_quadrature_2d(double R) {
  check_radius(R);
  // G(x, .) vanishes identically for |x| = 1; relative tolerances cannot
  // converge on pure roundoff.
  if (R == 1.0) return 0.0;
  const std::complex<double> x(R, 0);
  // y = x + rho e^{i theta}, rho = rho_max u^2 smooths the rho ln rho behaviour
  // at the pole. The integrand is even in theta.
  auto ray = [&](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double rho_max = -R * c + std::sqrt(std::max(0.0, 1 - R * R * s * s));
    if (rho_max <= 0) return 0.0;
    const std::complex<double> dir(c, s);
    auto f = [&](double u) {
      if (u <= 0) return 0.0;
      const double rho = rho_max * u * u;
      const std::complex<double> y = x + rho * dir;
      const double w = 1 - std::norm(y);
      if (w <= 0) return 0.0;
      const double g = std::log(std::norm(1.0 - std::conj(x) * y) / (rho * rho)) / (4 * pi);
      return g * w * w * rho * 2 * rho_max * u;
    };
    return gk(f, 0.0, 1.0);
  };
  return 2 * gk(ray, 0.0, pi);
}

double phi_printed_display(double R) {
  check_radius(R);
  if (R == 0) return 1.0 / 6;
  const double L = std::log(R), R2 = R * R;
  return 1.0 / 6 - R2 / 2 * L - R2 * R2 / 8 * (4 * L - 1) - R2 * R2 * R2 / 36 * (6 * L - 1);
}

DiskInequality disk_inequality(double p, GradConvention convention) {
  if (!(p >= 2)) throw Error(ErrorKind::InvalidArgument, "disk inequality needs p >= 2");
  DiskInequality out;
  out.lhs = 2 * pi * gk([&](double R) { return std::pow(phi_closed(R), p) * R; }, 0.0, 1.0);
  const double pp = std::pow(p, p);
  if (convention == GradConvention::grad_unit) {
    out.rhs = pp * 2 * pi / (p + 2);
  } else {
    out.rhs = pp * 2 * pi *
              gk([&](double s) { return std::pow(s, p + 1) * std::pow(1 - s * s, p / 2); }, 0.0, 1.0);
  }
  out.holds = out.lhs <= out.rhs;
  return out;
}

void BoundsParams::validate() const {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (!(a > 0)) throw Error(ErrorKind::InvalidArgument, "a must be > 0");
  if (!(b > 0)) throw Error(ErrorKind::InvalidArgument, "b must be > 0");
  if (!(p >= 2)) throw Error(ErrorKind::InvalidArgument, "p must be >= 2");
  if (!(t > 0)) throw Error(ErrorKind::InvalidArgument, "t must be > 0");
  if (!(r >= 0)) throw Error(ErrorKind::InvalidArgument, "r must be >= 0");
}

HeatBound heat_lower_bound(const BoundsParams& P) {
  P.validate();
  const double m = 2.0 * P.n - 1, br = P.b * P.r;
  const double log_h = -P.n * std::log(2 * pi * P.t) - P.r * P.r / (2 * P.t) -
                       m * m * P.b * P.b * P.t / 8 - m * br / 2 +
                       (m / 2 - 1) * std::log1p(br + P.b * P.b * P.t / 2) + std::log1p(br);
  HeatBound out;
  if (!std::isfinite(log_h) || log_h < std::log(std::numeric_limits<double>::min())) {
    out.underflow = true;
    return out;
  }
  out.value = std::exp(log_h);
  return out;
}

double cheng_constant(double p, double lambda1) {
  if (!(lambda1 > 0)) throw Error(ErrorKind::InvalidArgument, "lambda1 must be > 0");
  return std::pow(p * p / (4 * lambda1), p / 2);
}

double theorem_constant(int n, double a, double p) {
  if (n < 1 || !(a > 0)) throw Error(ErrorKind::InvalidArgument, "need n >= 1 and a > 0");
  return std::pow(p / ((2.0 * n - 1) * a), p);
}

BoundConstants constants(int n, double a, double p) {
  if (n < 2) throw Error(ErrorKind::DimensionTooSmall, "Poincare and McKean constants need n >= 2");
  if (!(a > 0) || !(p >= 2)) throw Error(ErrorKind::InvalidArgument, "need a > 0 and p >= 2");
  BoundConstants c;
  const double k = (n - 1.0) * a;
  c.poincare = 4 / (k * k);
  c.mckean_lambda1 = k * k / 4;
  c.cheng_Cp = cheng_constant(p, c.mckean_lambda1);
  c.thm_constant = theorem_constant(n, a, p);
  return c;
}

}  // namespace bgeom
