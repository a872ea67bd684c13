#include "bgeom/diffengine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include "bgeom/errors.hpp"

namespace bgeom {

namespace {

// Five-point central stencils on offsets -2..2, as integer numerators over a
// common denominator so that high-precision accumulation stays exact. Orders
// 1 and 2 are fourth order accurate, orders 3 and 4 second order; every error
// expansion runs in even powers of the step, which is what the Richardson
// table assumes.
constexpr int kNumerators[5][5] = {
    {0, 0, 1, 0, 0},
    {1, -8, 0, 8, -1},
    {-1, 16, -30, 16, -1},
    {-1, 2, 0, -2, 1},
    {1, -4, 6, -4, 1},
};
constexpr int kDenominators[5] = {1, 12, 12, 2, 1};

constexpr long double kEvalUlps = 64.0L;

template <int D>
using Multi = std::array<std::int8_t, D>;

template <int D>
struct Plan {
  struct Term {
    std::size_t node;
    long long weight;
  };
  struct Partial {
    std::vector<Term> terms;
    long long denominator = 1;
  };
  std::vector<Multi<D>> nodes;
  std::map<Multi<D>, Partial> partials;
};

template <int D>
int total(const Multi<D>& m) {
  int s = 0;
  for (auto v : m) s += v;
  return s;
}

template <int D>
Plan<D> build_plan(const std::vector<Multi<D>>& indices) {
  Plan<D> plan;
  std::map<Multi<D>, std::size_t> node_index;
  for (const auto& m : indices) {
    if (plan.partials.count(m)) continue;
    std::vector<std::pair<Multi<D>, long long>> terms{{Multi<D>{}, 1}};
    long long denominator = 1;
    for (int axis = 0; axis < D; ++axis) {
      const auto& w = kNumerators[m[axis]];
      denominator *= kDenominators[m[axis]];
      std::vector<std::pair<Multi<D>, long long>> next;
      for (const auto& [off, weight] : terms) {
        for (int k = 0; k < 5; ++k) {
          if (w[k] == 0) continue;
          auto o = off;
          o[axis] = static_cast<std::int8_t>(k - 2);
          next.emplace_back(o, weight * w[k]);
        }
      }
      terms = std::move(next);
    }
    auto& out = plan.partials[m];
    out.denominator = denominator;
    for (const auto& [off, weight] : terms) {
      auto [it, inserted] = node_index.try_emplace(off, plan.nodes.size());
      if (inserted) plan.nodes.push_back(off);
      out.terms.push_back({it->second, weight});
    }
  }
  return plan;
}

template <int D>
void enumerate(int max_order, Multi<D>& cur, int axis, std::vector<Multi<D>>& out) {
  if (axis == D) {
    out.push_back(cur);
    return;
  }
  const int used = total<D>(cur);
  for (int k = 0; k + used <= max_order; ++k) {
    cur[axis] = static_cast<std::int8_t>(k);
    enumerate<D>(max_order, cur, axis + 1, out);
  }
  cur[axis] = 0;
}

template <int D>
const Plan<D>& full_plan(int max_order) {
  static const std::array<Plan<D>, kMaxDerivOrder + 1> plans = [] {
    std::array<Plan<D>, kMaxDerivOrder + 1> ps;
    for (int order = 0; order <= kMaxDerivOrder; ++order) {
      std::vector<Multi<D>> indices;
      Multi<D> cur{};
      enumerate<D>(order, cur, 0, indices);
      ps[static_cast<std::size_t>(order)] = build_plan<D>(indices);
    }
    return ps;
  }();
  return plans[static_cast<std::size_t>(max_order)];
}

struct PartialEstimate {
  long double value = 0.0L;
  long double error = 0.0L;
};

template <int D>
using PartialTable = std::map<Multi<D>, PartialEstimate>;

std::string describe_node(const long double* coords, int n) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (int i = 0; i < n; ++i) os << (i ? ", " : "") << static_cast<double>(coords[i]);
  os << ")";
  return os.str();
}

// Evaluates every partial in `plan` at each Richardson level and
// extrapolates. Arithmetic runs in T. `center` and `scale` are per-axis;
// `eval` maps a coordinate array to the field value (throwing DomainEscape
// itself when needed).
template <class T, int D, class Eval>
PartialTable<D> estimate_partials(const Plan<D>& plan, const std::array<long double, D>& center,
                                  const std::array<long double, D>& scale, const DiffConfig& cfg,
                                  Eval&& eval) {
  using std::abs;
  using std::pow;
  const int levels = cfg.richardson_levels;
  const T ratio = static_cast<long double>(cfg.step_ratio);
  const T eps = std::numeric_limits<T>::epsilon();
  for (int axis = 0; axis < D; ++axis) {
    const long double finest = static_cast<long double>(cfg.base_step) * scale[axis] *
                               std::pow(static_cast<long double>(cfg.step_ratio), levels);
    const long double resolution = 1e3L * std::numeric_limits<long double>::epsilon() *
                                   std::fabs(center[axis]);
    if (!(finest > 0.0L) || !std::isfinite(finest) || finest < 1e-250L || finest < resolution) {
      std::ostringstream os;
      os << "finest step " << static_cast<double>(finest) << " on axis " << axis
         << " is below the coordinate resolution";
      throw Error(ErrorKind::StepUnderflow, os.str());
    }
  }

  std::map<Multi<D>, std::vector<T>> per_level;
  std::map<Multi<D>, T> roundoff;
  std::vector<T> values(plan.nodes.size());
  for (int level = 0; level <= levels; ++level) {
    std::array<T, D> h{};
    for (int axis = 0; axis < D; ++axis)
      h[axis] = T(static_cast<long double>(cfg.base_step)) * T(scale[axis]) * pow(ratio, level);
    for (std::size_t n = 0; n < plan.nodes.size(); ++n) {
      std::array<T, D> x{};
      for (int axis = 0; axis < D; ++axis) x[axis] = T(center[axis]) + plan.nodes[n][axis] * h[axis];
      values[n] = eval(x);
    }
    for (const auto& [m, partial] : plan.partials) {
      T acc = 0;
      T mag = 0;
      for (const auto& t : partial.terms) {
        acc += T(t.weight) * values[t.node];
        mag += abs(T(t.weight) * values[t.node]);
      }
      T denom = T(partial.denominator);
      for (int axis = 0; axis < D; ++axis)
        for (int k = 0; k < m[axis]; ++k) denom *= h[axis];
      per_level[m].push_back(acc / denom);
      // Field values carry a few ulps of evaluation error; the finest level
      // dominates what survives the extrapolation.
      if (level == levels) roundoff[m] = T(kEvalUlps) * eps * mag / denom;
    }
  }

  PartialTable<D> out;
  for (auto& [m, column] : per_level) {
    // Richardson table in t = h^2 (the error expansions are even in h).
    std::vector<T> prev = column;
    T correction = 0;
    for (int j = 1; j <= levels; ++j) {
      std::vector<T> cur(prev.size() - 1);
      const T factor = pow(ratio, -2 * j) - 1;
      for (std::size_t k = 0; k + 1 < prev.size(); ++k)
        cur[k] = prev[k + 1] + (prev[k + 1] - prev[k]) / factor;
      correction = cur.back() - prev.back();
      prev = std::move(cur);
    }
    out[m] = {static_cast<long double>(prev.back()),
              static_cast<long double>(10 * abs(correction) + roundoff[m])};
  }
  return out;
}

template <int D>
Multi<D> multi_from(const std::array<int, D>& a) {
  Multi<D> m{};
  for (int i = 0; i < D; ++i) m[i] = static_cast<std::int8_t>(a[i]);
  return m;
}

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int factorial(int n) {
  int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

using cplx = std::complex<long double>;

// Chain-rule terms for d^a dbar^b F(z zbar) in one variable:
// (nu-derivative order, coefficient).
std::vector<std::pair<int, cplx>> reinhardt_terms(int a, int b, const cplx& z) {
  std::vector<std::pair<int, cplx>> out;
  for (int k = 0; k <= std::min(a, b); ++k) {
    const long double c = static_cast<long double>(factorial(k) * binomial(a, k) * binomial(b, k));
    out.emplace_back(a + b - k, c * std::pow(std::conj(z), a - k) * std::pow(z, b - k));
  }
  return out;
}

// Expansion of (d_u - i d_v)^a (d_u + i d_v)^b / 2^(a+b) into real partials:
// ((order in u, order in v), coefficient).
std::vector<std::pair<std::pair<int, int>, cplx>> real_terms(int a, int b) {
  std::map<std::pair<int, int>, cplx> acc;
  const cplx I(0.0L, 1.0L);
  for (int j = 0; j <= a; ++j) {
    for (int k = 0; k <= b; ++k) {
      // (d_u - i d_v)^a: choose j factors of (-i d_v); (d_u + i d_v)^b: k of (i d_v).
      const cplx c = static_cast<long double>(binomial(a, j) * binomial(b, k)) *
                     std::pow(-I, j) * std::pow(I, k);
      acc[{a - j + b - k, j + k}] += c;
    }
  }
  const long double norm = std::ldexp(1.0L, a + b);
  std::vector<std::pair<std::pair<int, int>, cplx>> out;
  for (const auto& [key, c] : acc) {
    if (std::abs(c) == 0.0L) continue;
    out.emplace_back(key, c / norm);
  }
  return out;
}

// Assembly of one Wirtinger derivative from a table of nu-partials.
Estimate assemble_reinhardt(const DerivRequest& req, const Point3& at, const PartialTable<3>& table) {
  cplx value = 0.0L;
  long double error = 0.0L;
  const auto t0 = reinhardt_terms(req.holo[0], req.anti[0], at[0]);
  const auto t1 = reinhardt_terms(req.holo[1], req.anti[1], at[1]);
  const auto t2 = reinhardt_terms(req.holo[2], req.anti[2], at[2]);
  for (const auto& [o0, c0] : t0) {
    for (const auto& [o1, c1] : t1) {
      for (const auto& [o2, c2] : t2) {
        const cplx c = c0 * c1 * c2;
        if (std::abs(c) == 0.0L) continue;
        const auto& p = table.at(multi_from<3>({o0, o1, o2}));
        value += c * p.value;
        error += std::abs(c) * p.error;
      }
    }
  }
  return {std::complex<double>(static_cast<double>(value.real()), static_cast<double>(value.imag())),
          static_cast<double>(error)};
}

Estimate assemble_real6(const DerivRequest& req, const PartialTable<6>& table) {
  cplx value = 0.0L;
  long double error = 0.0L;
  const auto t0 = real_terms(req.holo[0], req.anti[0]);
  const auto t1 = real_terms(req.holo[1], req.anti[1]);
  const auto t2 = real_terms(req.holo[2], req.anti[2]);
  for (const auto& [o0, c0] : t0) {
    for (const auto& [o1, c1] : t1) {
      for (const auto& [o2, c2] : t2) {
        const cplx c = c0 * c1 * c2;
        const auto& p = table.at(
            multi_from<6>({o0.first, o0.second, o1.first, o1.second, o2.first, o2.second}));
        value += c * p.value;
        error += std::abs(c) * p.error;
      }
    }
  }
  return {std::complex<double>(static_cast<double>(value.real()), static_cast<double>(value.imag())),
          static_cast<double>(error)};
}

std::vector<Multi<3>> reinhardt_indices(const DerivRequest& req) {
  std::vector<Multi<3>> out;
  for (int k0 = 0; k0 <= std::min(req.holo[0], req.anti[0]); ++k0)
    for (int k1 = 0; k1 <= std::min(req.holo[1], req.anti[1]); ++k1)
      for (int k2 = 0; k2 <= std::min(req.holo[2], req.anti[2]); ++k2)
        out.push_back(multi_from<3>({req.holo[0] + req.anti[0] - k0, req.holo[1] + req.anti[1] - k1,
                                     req.holo[2] + req.anti[2] - k2}));
  return out;
}

std::vector<Multi<6>> real6_indices(const DerivRequest& req) {
  std::vector<Multi<6>> out;
  for (const auto& [o0, c0] : real_terms(req.holo[0], req.anti[0]))
    for (const auto& [o1, c1] : real_terms(req.holo[1], req.anti[1]))
      for (const auto& [o2, c2] : real_terms(req.holo[2], req.anti[2]))
        out.push_back(multi_from<6>({o0.first, o0.second, o1.first, o1.second, o2.first, o2.second}));
  return out;
}

PartialTable<3> reinhardt_partials(const ScalarField& field, const Point3& at, const Plan<3>& plan,
                                   const DiffConfig& cfg) {
  if (!field.profile && !field.profile_wide)
    throw Error(ErrorKind::InvalidArgument, "reinhardt mode requires a field profile F(nu)");
  std::array<long double, 3> center{};
  std::array<long double, 3> scale{};
  for (std::size_t i = 0; i < 3; ++i) {
    center[i] = std::norm(at[i]);
    scale[i] = cfg.axis_scale[i];
  }
  auto check = [&](const Nu3& nu) {
    if (field.profile_contains && !field.profile_contains(nu))
      throw Error(ErrorKind::DomainEscape, "stencil node nu = " + describe_node(nu.data(), 3) +
                                               " leaves the field's domain");
  };
  auto not_finite = [&](const Nu3& nu) {
    return Error(ErrorKind::DomainEscape,
                 "field is not finite at nu = " + describe_node(nu.data(), 3));
  };
  if (field.profile_wide) {
    auto eval = [&](const WideNu3& wnu) {
      const Nu3 nu{static_cast<long double>(wnu[0]), static_cast<long double>(wnu[1]),
                   static_cast<long double>(wnu[2])};
      check(nu);
      const wide_t v = field.profile_wide(wnu);
      if (!boost::multiprecision::isfinite(v)) throw not_finite(nu);
      return v;
    };
    return estimate_partials<wide_t, 3>(plan, center, scale, cfg, eval);
  }
  auto eval = [&](const Nu3& nu) {
    check(nu);
    const long double v = field.profile(nu);
    if (!std::isfinite(v)) throw not_finite(nu);
    return v;
  };
  return estimate_partials<long double, 3>(plan, center, scale, cfg, eval);
}

PartialTable<6> real6_partials(const ScalarField& field, const Point3& at, const Plan<6>& plan,
                               const DiffConfig& cfg) {
  if (!field.value) throw Error(ErrorKind::InvalidArgument, "real6 mode requires a field value");
  std::array<long double, 6> center{};
  std::array<long double, 6> scale{};
  for (std::size_t i = 0; i < 3; ++i) {
    center[2 * i] = at[i].real();
    center[2 * i + 1] = at[i].imag();
    scale[2 * i] = scale[2 * i + 1] = cfg.axis_scale[i];
  }
  auto eval = [&](const std::array<long double, 6>& x) {
    const Point3 pt{cplx(x[0], x[1]), cplx(x[2], x[3]), cplx(x[4], x[5])};
    if (field.contains && !field.contains(pt))
      throw Error(ErrorKind::DomainEscape,
                  "stencil node " + describe_node(x.data(), 6) + " leaves the field's domain");
    const long double v = field.value(pt);
    if (!std::isfinite(v))
      throw Error(ErrorKind::DomainEscape, "field is not finite at " + describe_node(x.data(), 6));
    return v;
  };
  return estimate_partials<long double, 6>(plan, center, scale, cfg, eval);
}

}  // namespace

void DiffConfig::validate() const {
  if (!(base_step > 0.0) || !std::isfinite(base_step))
    throw Error(ErrorKind::InvalidArgument, "base_step must be positive");
  if (richardson_levels < 1 || richardson_levels > 4)
    throw Error(ErrorKind::InvalidArgument, "richardson_levels must lie in [1, 4]");
  if (!(step_ratio > 0.0 && step_ratio < 1.0))
    throw Error(ErrorKind::InvalidArgument, "step_ratio must lie in (0, 1)");
  for (double s : axis_scale)
    if (!(s > 0.0) || !std::isfinite(s))
      throw Error(ErrorKind::InvalidArgument, "axis_scale entries must be positive");
}

int DerivRequest::order() const noexcept {
  int s = 0;
  for (std::size_t i = 0; i < 3; ++i) s += holo[i] + anti[i];
  return s;
}

void DerivRequest::validate() const {
  for (std::size_t i = 0; i < 3; ++i)
    if (holo[i] < 0 || anti[i] < 0)
      throw Error(ErrorKind::InvalidArgument, "derivative orders must be nonnegative");
  if (order() > kMaxDerivOrder)
    throw Error(ErrorKind::InvalidArgument, "total derivative order exceeds 4");
}

const Estimate& Jet::at(const DerivRequest& req) const {
  auto it = entries_.find(req);
  if (it == entries_.end())
    throw Error(ErrorKind::InvalidArgument, "derivative not present in jet (order too high)");
  return it->second;
}

Estimate wirtinger(const ScalarField& field, const Point3& at, const DerivRequest& req,
                   const DiffConfig& cfg) {
  cfg.validate();
  req.validate();
  if (cfg.mode == DiffMode::reinhardt) {
    const auto plan = build_plan<3>(reinhardt_indices(req));
    return assemble_reinhardt(req, at, reinhardt_partials(field, at, plan, cfg));
  }
  const auto plan = build_plan<6>(real6_indices(req));
  return assemble_real6(req, real6_partials(field, at, plan, cfg));
}

Jet wirtinger_jet(const ScalarField& field, const Point3& at, int max_order, const DiffConfig& cfg) {
  cfg.validate();
  if (max_order < 0 || max_order > kMaxDerivOrder)
    throw Error(ErrorKind::InvalidArgument, "jet order must lie in [0, 4]");

  std::vector<DerivRequest> requests;
  std::vector<Multi<6>> all;
  Multi<6> cur{};
  enumerate<6>(max_order, cur, 0, all);
  for (const auto& m : all)
    requests.push_back(DerivRequest{{m[0], m[1], m[2]}, {m[3], m[4], m[5]}});

  Jet jet;
  jet.max_order_ = max_order;
  if (cfg.mode == DiffMode::reinhardt) {
    const auto table = reinhardt_partials(field, at, full_plan<3>(max_order), cfg);
    for (const auto& r : requests) jet.entries_[r] = assemble_reinhardt(r, at, table);
  } else {
    const auto table = real6_partials(field, at, full_plan<6>(max_order), cfg);
    for (const auto& r : requests) jet.entries_[r] = assemble_real6(r, table);
  }
  return jet;
}

}  // namespace bgeom
