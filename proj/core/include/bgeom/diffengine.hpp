#pragma once

// Mixed Wirtinger derivatives of smooth real-valued fields on open subsets
// of C^3, up to total order 4, by central-difference stencils with
// Richardson extrapolation.
//
// Conventions: for z = u + i v,
//   d/dz    = (d/du - i d/dv) / 2,
//   d/dzbar = (d/du + i d/dv) / 2.
//
// Two evaluation modes are provided:
//   * real6     - C^3 is treated as R^6; real partial derivatives are taken
//                 with tensor-product stencils and assembled into Wirtinger
//                 combinations.
//   * reinhardt - the field is a function F(nu) of nu_i = |z_i|^2 only; F is
//                 differentiated in nu and the chain rule
//                   d^a dbar^b F(z zbar)
//                     = sum_k k! C(a,k) C(b,k) zbar^(a-k) z^(b-k) F^(a+b-k)
//                 is applied exactly. This is the high-accuracy path.
//
// Complex-step differentiation is not offered: the fields of interest are
// real-valued and not holomorphic, so the complex-step identity does not
// apply.
//
// Stencil arithmetic runs in long double, or in quad precision for fields
// that supply a quad-precision profile. Results are returned in double
// together with an error estimate: ten times the magnitude of the
// last Richardson correction plus a bound on the rounding error of the
// finest stencil.

#include <array>
#include <boost/multiprecision/float128.hpp>
#include <complex>
#include <functional>
#include <map>

namespace bgeom {

using real_t = long double;
using Point3 = std::array<std::complex<real_t>, 3>;
using Nu3 = std::array<real_t, 3>;
/// Quad precision, for Reinhardt profiles whose stencils need more than
/// long double can hold.
using wide_t = boost::multiprecision::float128;
using WideNu3 = std::array<wide_t, 3>;

enum class DiffMode { real6, reinhardt };

struct DiffConfig {
  /// Stencil step relative to axis_scale. The outermost stencil node sits
  /// 2 * base_step * axis_scale away from the evaluation point.
  double base_step = 0.05;
  /// Number of Richardson eliminations; richardson_levels + 1 step sizes
  /// base_step, base_step * step_ratio, ... are evaluated.
  int richardson_levels = 4;
  /// Ratio between successive steps, in (0, 1). Ratios closer to 1 keep the
  /// finest step larger (less rounding) at some cost in extrapolation
  /// stability.
  double step_ratio = 0.5;
  DiffMode mode = DiffMode::reinhardt;
  /// Per-variable length scale. In reinhardt mode it applies to nu_i, in
  /// real6 mode to both Re z_i and Im z_i.
  std::array<double, 3> axis_scale{1.0, 1.0, 1.0};

  void validate() const;
};

/// Multi-index of a mixed Wirtinger derivative: orders in (z1, z2, z3) and
/// in (z1bar, z2bar, z3bar).
struct DerivRequest {
  std::array<int, 3> holo{};
  std::array<int, 3> anti{};

  int order() const noexcept;
  void validate() const;
  DerivRequest conjugate() const noexcept { return {anti, holo}; }

  auto operator<=>(const DerivRequest&) const = default;
};

inline constexpr int kMaxDerivOrder = 4;

/// A real scalar field on (a subset of) C^3.
///
/// `value` is required for real6 mode. `profile` is the Reinhardt profile
/// F(nu) with field(z) = F(|z1|^2, |z2|^2, |z3|^2); it is required for
/// reinhardt mode and may be evaluated at nu slightly outside the physical
/// range (e.g. nu_1 < 0) when it extends analytically. The optional
/// membership predicates declare the domain; a stencil node outside it
/// raises DomainEscape. When `profile_wide` is set, reinhardt mode evaluates
/// it instead of `profile` and runs the whole stencil in quad precision.
struct ScalarField {
  std::function<real_t(const Point3&)> value;
  std::function<bool(const Point3&)> contains;
  std::function<real_t(const Nu3&)> profile;
  std::function<wide_t(const WideNu3&)> profile_wide;
  std::function<bool(const Nu3&)> profile_contains;
};

struct Estimate {
  std::complex<double> value{};
  double error = 0.0;
};

/// Throws Error{StepUnderflow} when the finest step falls below the
/// resolution of the coordinate, Error{DomainEscape} when a stencil node is
/// outside the field's declared domain or the field is not finite there.
Estimate wirtinger(const ScalarField& field, const Point3& at, const DerivRequest& req,
                   const DiffConfig& cfg);

/// All mixed Wirtinger derivatives of total order <= max_order, sharing one
/// set of stencil evaluations.
class Jet {
 public:
  using Table = std::map<DerivRequest, Estimate>;

  const Estimate& at(const DerivRequest& req) const;
  const Estimate& at(std::array<int, 3> holo, std::array<int, 3> anti) const {
    return at(DerivRequest{holo, anti});
  }
  int max_order() const noexcept { return max_order_; }
  std::size_t size() const noexcept { return entries_.size(); }
  Table::const_iterator begin() const { return entries_.begin(); }
  Table::const_iterator end() const { return entries_.end(); }

 private:
  friend Jet wirtinger_jet(const ScalarField&, const Point3&, int, const DiffConfig&);
  Table entries_;
  int max_order_ = 0;
};

Jet wirtinger_jet(const ScalarField& field, const Point3& at, int max_order, const DiffConfig& cfg);

/// Unit multi-index e_i (0-based).
constexpr std::array<int, 3> unit_index(int i) {
  std::array<int, 3> e{};
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

constexpr std::array<int, 3> index_sum(std::array<int, 3> a, const std::array<int, 3>& b) {
  for (std::size_t i = 0; i < 3; ++i) a[i] += b[i];
  return a;
}

}  // namespace bgeom
