#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "bgeom/curvature.hpp"
#include "bgeom/diskbounds.hpp"
#include "bgeom/domain.hpp"
#include "bgeom/errors.hpp"
#include "bgeom/extrapolate.hpp"
#include "bgeom/frame.hpp"
#include "bgeom/metric.hpp"

namespace bgeom::cli {

namespace {

constexpr double kOracleCap = 0.95;
constexpr double kScanCap = 0.999;
constexpr double kIdentityTol = 1e-10;
constexpr double kLimitRelTol = 1e-3;
constexpr double kZeroComboTol = 1e-6;

struct CellResult {
  Row row;
  bool flagged = false;
  bool pass = true;
};

/// Cells are evaluated in any order but stored by index, so output is
/// independent of the worker count.
std::vector<CellResult> evaluate_cells(std::size_t n, unsigned workers,
                                       const std::function<CellResult(std::size_t)>& f) {
  std::vector<CellResult> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++) out[i] = f(i);
    } catch (...) {
      std::lock_guard lock(m);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };
  const unsigned t = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (t == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < t; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

void collect(Report& r, std::vector<CellResult>&& cells) {
  for (auto& c : cells) {
    if (c.flagged)
      ++r.flagged;
    else if (!c.pass)
      ++r.failures;
    r.rows.push_back(std::move(c.row));
  }
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int k = 0; k < n; ++k) v.push_back(k == n - 1 ? hi : lo + (hi - lo) * k / (n - 1));
  return v;
}

std::vector<double> grid_axis(int n) { return linspace(0.05, 0.85, n); }

Row empty_row(const Report& r) { return Row(r.columns.size()); }

double tol_or(const RunConfig& cfg, double fallback) { return cfg.tol.value_or(fallback); }

/// Bookkeeping shared by the slice-grid commands: builds the slice point and
/// flags cells that are exterior or beyond the delta cap.
struct SliceCell {
  std::optional<SlicePoint> s;
  std::string flag;
};

SliceCell slice_cell(double y, double z, const DomainParams& P, double cap) {
  SliceCell c;
  const double a = 1 - z * z;
  const double delta = y * y / std::pow(a, P.lambda);
  if (!(delta < 1)) {
    c.flag = "exterior";
  } else if (delta > cap) {
    c.flag = "beyond_cap";
  } else {
    c.s = SlicePoint::make(y, z, P);
  }
  return c;
}

std::uint64_t mix(std::uint64_t seed) { return seed * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull; }

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double max_abs(const std::array<double, 6>& a, const std::array<double, 6>& b) {
  double m = 0;
  for (std::size_t i = 0; i < 6; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double rel(double value, double ref) { return std::fabs(value - ref) / std::max(std::fabs(ref), DBL_MIN); }

}  // namespace

void RunConfig::validate() const {
  DomainParams::make(p, lambda);
  if (grid_rows < 2 || grid_cols < 2)
    throw Error(ErrorKind::InvalidArgument, "grid counts must be >= 2");
  if (delta_cap && !(*delta_cap > 0 && *delta_cap <= 1 - 1e-3))
    throw Error(ErrorKind::InvalidArgument, "delta cap must lie in (0, 1 - 1e-3]");
  if (tol && !(*tol > 0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be > 0");
  if (samples < 0) throw Error(ErrorKind::InvalidArgument, "samples must be >= 0");
  if (workers < 1) throw Error(ErrorKind::InvalidArgument, "workers must be >= 1");
  if (p_list.empty()) throw Error(ErrorKind::InvalidArgument, "p-list must be nonempty");
  for (double q : p_list)
    if (!(q >= 2)) throw Error(ErrorKind::InvalidArgument, "p-list entries must be >= 2");
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["p"] = p;
  j["lambda"] = lambda;
  j["grid"] = std::to_string(grid_rows) + "x" + std::to_string(grid_cols);
  j["delta_cap"] = delta_cap ? nlohmann::ordered_json(*delta_cap) : nullptr;
  j["tol"] = tol ? nlohmann::ordered_json(*tol) : nullptr;
  j["seed"] = seed;
  j["samples"] = samples;
  j["ke"] = ke;
  j["p_list"] = p_list;
  // workers is deliberately not echoed: output must not depend on it.
  return j;
}

Report cmd_kernel(const RunConfig& cfg) {
  const DomainParams P = DomainParams::make(cfg.p, cfg.lambda);
  const double cap = cfg.delta_cap.value_or(kOracleCap);
  const double tol = tol_or(cfg, 1e-12);
  Report r;
  r.columns = {"kind", "x", "y", "z", "delta", "b_direct", "n", "d", "b_factored", "residual",
               "source", "error_estimate", "tolerance", "flag", "pass"};

  struct Sample {
    const char* kind;
    double x, y, z;
  };
  std::vector<Sample> samples;
  for (double y : grid_axis(cfg.grid_rows))
    for (double z : grid_axis(cfg.grid_cols)) samples.push_back({"grid", 0.0, y, z});
  std::mt19937_64 gen(mix(cfg.seed));
  for (int k = 0; k < cfg.samples; ++k) {
    // Uniform in the defining inequalities, scaled so delta <= cap.
    const double nu3 = cap * uniform01(gen);
    const double aL = std::pow(1 - nu3, P.lambda);
    const double nu2 = cap * aL * uniform01(gen);
    const double nu1 = std::pow((cap * aL - nu2) * uniform01(gen), 1 / P.p);
    samples.push_back({"random", std::sqrt(nu1), std::sqrt(nu2), std::sqrt(nu3)});
  }

  auto cells = evaluate_cells(samples.size(), cfg.workers, [&](std::size_t i) {
    const Sample& smp = samples[i];
    CellResult c;
    c.row = empty_row(r);
    const NuPoint nu{smp.x * smp.x, smp.y * smp.y, smp.z * smp.z};
    const double delta = (std::pow(nu.nu1, P.p) + nu.nu2) / std::pow(1 - nu.nu3, P.lambda);
    c.row[0] = std::string(smp.kind);
    c.row[1] = smp.x;
    c.row[2] = smp.y;
    c.row[3] = smp.z;
    c.row[4] = delta;
    c.row[10] = std::string("closed");
    c.row[12] = tol;
    std::string flag;
    if (!(delta < 1))
      flag = "exterior";
    else if (delta > cap)
      flag = "beyond_cap";
    if (flag.empty()) {
      try {
        const double B = bergman_kernel(nu, P);
        const FactoredKernel fk = kernel_factored(nu, P);
        const UConstants u = u_constants(P);
        const std::array<double, 6> us{u.u1, u.u2, u.u3, u.u4, u.u5, u.u6};
        double spread = 0;
        for (std::size_t k = 0; k < 6; ++k) spread += std::fabs(us[k] * fk.Ni[k]);
        const double residual = std::fabs(B - fk.B) / B;
        c.row[5] = B;
        c.row[6] = fk.N;
        c.row[7] = fk.D;
        c.row[8] = fk.B;
        c.row[9] = residual;
        c.row[11] = 16 * DBL_EPSILON * spread / std::fabs(fk.N);
        c.pass = residual <= tol;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NearBoundary) throw;
        flag = "near_boundary";
      }
    }
    c.flagged = !flag.empty();
    c.row[13] = flag;
    c.row[14] = c.flagged ? Cell{} : Cell{c.pass};
    return c;
  });
  double worst = 0;
  for (const auto& c : cells)
    if (!c.flagged) worst = std::max(worst, std::get<double>(c.row[9]));
  collect(r, std::move(cells));

  const UConstants u = u_constants(P);
  // Relative to the summands' magnitudes.
  const double odd = std::fabs(u.u1 + u.u3 + u.u5 - 6 * P.lambda) /
                     (std::fabs(u.u1) + std::fabs(u.u3) + std::fabs(u.u5));
  const double even = std::fabs(u.u2 + u.u4 + u.u6) /
                      std::max(std::fabs(u.u2) + std::fabs(u.u4) + std::fabs(u.u6), DBL_MIN);
  for (auto [k, v] : {std::pair{"u1", u.u1}, {"u2", u.u2}, {"u3", u.u3}, {"u4", u.u4}, {"u5", u.u5},
                      {"u6", u.u6}})
    r.add_summary(k, v);
  r.add_summary("u_odd_sum_residual", odd);
  r.add_summary("u_even_sum_residual", even);
  r.add_summary("max_factored_residual", worst);
  if (odd > 1e-14 || even > 1e-14) ++r.failures;
  return r;
}

Report cmd_metric(const RunConfig& cfg) {
  const DomainParams P = DomainParams::make(cfg.p, cfg.lambda);
  const double cap = cfg.delta_cap.value_or(kOracleCap);
  const double tol = tol_or(cfg, 1e-6);
  Report r;
  r.columns = {"y", "z", "delta", "a1", "a2", "a3", "a4", "g11", "g22", "g23", "g33",
               "numeric_rel_error", "inverse_residual", "det_identity_residual", "det_ratio",
               "det_ratio_residual", "a4_relation_residual", "source", "error_estimate",
               "tolerance", "flag", "pass"};
  const auto ys = grid_axis(cfg.grid_rows), zs = grid_axis(cfg.grid_cols);
  auto cells = evaluate_cells(ys.size() * zs.size(), cfg.workers, [&](std::size_t i) {
    const double y = ys[i / zs.size()], z = zs[i % zs.size()];
    CellResult c;
    c.row = empty_row(r);
    c.row[0] = y;
    c.row[1] = z;
    c.row[17] = std::string("closed");
    c.row[19] = tol;
    SliceCell sc = slice_cell(y, z, P, cap);
    if (sc.s) {
      const SlicePoint& s = *sc.s;
      const AFactors A = a_factors(s, P);
      const HermitianMatrix3 g = metric_closed(s, P);
      const NumericMetric num = metric_numeric(s.point(), P);
      double err = 0, est = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double w = std::sqrt(g.m(a, a).real() * g.m(b, b).real());
          err = std::max(err, std::abs(num.g.m(a, b) - g.m(a, b)) / w);
          est = std::max(est, num.error(a, b) / w);
        }
      const double inv = inverse_product_residual(g, inverse_metric_closed(s, P));
      const double det_id = det_identity_residual(s, P);
      const double ratio = det_ratio(s, P);
      const double ratio_res = rel(det_ratio_direct(s, P), ratio);
      const double a4res = a4_relation_residual(s, P);
      c.row[2] = s.delta;
      c.row[3] = A.A1;
      c.row[4] = A.A2;
      c.row[5] = A.A3;
      c.row[6] = A.A4;
      c.row[7] = g.m(0, 0).real();
      c.row[8] = g.m(1, 1).real();
      c.row[9] = g.m(1, 2).real();
      c.row[10] = g.m(2, 2).real();
      c.row[11] = err;
      c.row[12] = inv;
      c.row[13] = det_id;
      c.row[14] = ratio;
      c.row[15] = ratio_res;
      c.row[16] = a4res;
      c.row[18] = est;
      c.pass = err <= tol && inv <= kIdentityTol && det_id <= kIdentityTol && ratio_res <= 1e-8 &&
               a4res <= 1e-8;
    }
    c.flagged = !sc.s.has_value();
    c.row[20] = sc.flag;
    c.row[21] = c.flagged ? Cell{} : Cell{c.pass};
    return c;
  });
  double worst_err = 0, worst_inv = 0, worst_det = 0, worst_ratio = 0;
  for (const auto& c : cells) {
    if (c.flagged) continue;
    worst_err = std::max(worst_err, std::get<double>(c.row[11]));
    worst_inv = std::max(worst_inv, std::get<double>(c.row[12]));
    worst_det = std::max(worst_det, std::get<double>(c.row[13]));
    worst_ratio = std::max(worst_ratio, std::get<double>(c.row[15]));
  }
  collect(r, std::move(cells));
  r.add_summary("max_numeric_rel_error", worst_err);
  r.add_summary("max_inverse_residual", worst_inv);
  r.add_summary("max_det_identity_residual", worst_det);
  r.add_summary("max_det_ratio_residual", worst_ratio);

  // Boundary limits at z = 1/2.
  const ALimits lim = limits_A(P);
  const auto& nodes = default_limit_nodes();
  auto extrap = [&](auto pick) {
    return extrapolate_to_boundary([&](double d) { return pick(SlicePoint::from_delta(d, 0.5, P)); }, nodes);
  };
  const double e1 = extrap([&](const SlicePoint& s) { return a_factors(s, P).A1; });
  const double e2 = extrap([&](const SlicePoint& s) { return a_factors(s, P).A2; });
  const double e4 = extrap([&](const SlicePoint& s) { return a_factors(s, P).A4; });
  const double er = extrap([&](const SlicePoint& s) { return det_ratio(s, P); });
  const double limit_res = std::max({rel(e1, lim.A1), rel(e2, lim.A2), rel(e4, lim.A4)});
  const double ratio_limit_res = rel(er, det_ratio_limit(P));
  r.add_summary("a1_limit_extrapolated", e1);
  r.add_summary("a1_limit_closed", lim.A1);
  r.add_summary("a2_limit_extrapolated", e2);
  r.add_summary("a2_limit_closed", lim.A2);
  r.add_summary("a4_limit_extrapolated", e4);
  r.add_summary("a4_limit_closed", lim.A4);
  r.add_summary("a_limit_residual", limit_res);
  r.add_summary("det_ratio_limit_extrapolated", er);
  r.add_summary("det_ratio_limit_closed", det_ratio_limit(P));
  r.add_summary("det_ratio_limit_residual", ratio_limit_res);
  if (limit_res > 1e-4) ++r.failures;
  if (ratio_limit_res > 1e-2) ++r.failures;
  return r;
}

Report cmd_curvature(const RunConfig& cfg) {
  const DomainParams P = DomainParams::make(cfg.p, cfg.lambda);
  const double cap = cfg.delta_cap.value_or(kOracleCap);
  const double tol = tol_or(cfg, 1e-8);
  Report r;
  r.columns = {"y", "z", "delta", "g4_residual", "ht3_residual", "ht6_residual", "ht8_residual",
               "ht9_residual", "a4_residual", "g1_closed_residual", "g2_closed_residual",
               "h1_closed_residual", "symmetry_residual", "closed_numeric_distance", "source",
               "error_estimate", "tolerance", "flag", "pass"};
  const auto ys = grid_axis(cfg.grid_rows), zs = grid_axis(cfg.grid_cols);
  auto cells = evaluate_cells(ys.size() * zs.size(), cfg.workers, [&](std::size_t i) {
    const double y = ys[i / zs.size()], z = zs[i % zs.size()];
    CellResult c;
    c.row = empty_row(r);
    c.row[0] = y;
    c.row[1] = z;
    c.row[14] = std::string("numeric");
    c.row[16] = tol;
    SliceCell sc = slice_cell(y, z, P, cap);
    if (sc.s && (y < kAxisEpsilon || z < kAxisEpsilon)) {
      sc.s.reset();
      sc.flag = "axis";
    }
    if (sc.s) {
      const SlicePoint& s = *sc.s;
      const NumericCurvature nc = curvature_numeric(s.point(), P);
      const FactorTables f = factor_tables_from_jet(nc.jet, s, P);
      const auto ids = identity_residuals(f, P);
      const double a4 = a4_relation_residual(s, P);
      const double g1 = rel(f.G[0], g1_closed(s, P));
      const double g2 = rel(f.G[1], g2_closed(s, P));
      const double h1 = rel(f.H[0], h1_closed(s, P));
      const double sym = nc.R.symmetry_residual();
      const double dist = nc.R.weighted_distance(assemble_slice_tensor(f, s, P));
      double est = 0;
      for (const auto& [req, e] : nc.jet)
        if (req.order() == 4 && std::abs(e.value) > 0) est = std::max(est, e.error / std::abs(e.value));
      c.row[2] = s.delta;
      for (std::size_t k = 0; k < 5; ++k) c.row[3 + k] = ids[k];
      c.row[8] = a4;
      c.row[9] = g1;
      c.row[10] = g2;
      c.row[11] = h1;
      c.row[12] = sym;
      c.row[13] = dist;
      c.row[15] = est;
      c.pass = *std::max_element(ids.begin(), ids.end()) <= tol && a4 <= tol && g1 <= 1e-6 &&
               g2 <= 1e-6 && h1 <= 1e-6 && sym <= 1e-8 && dist <= 1e-6;
    }
    c.flagged = !sc.s.has_value();
    c.row[17] = sc.flag;
    c.row[18] = c.flagged ? Cell{} : Cell{c.pass};
    return c;
  });
  double worst_id = 0, worst_sym = 0, worst_dist = 0;
  for (const auto& c : cells) {
    if (c.flagged) continue;
    for (std::size_t k = 3; k <= 8; ++k) worst_id = std::max(worst_id, std::get<double>(c.row[k]));
    worst_sym = std::max(worst_sym, std::get<double>(c.row[12]));
    worst_dist = std::max(worst_dist, std::get<double>(c.row[13]));
  }
  collect(r, std::move(cells));
  r.add_summary("max_identity_residual", worst_id);
  r.add_summary("max_symmetry_residual", worst_sym);
  r.add_summary("max_closed_numeric_distance", worst_dist);

  const FLimits fl = f_limits(P);
  const FTildeLimits ftl = ftilde_limits(P);
  double worst_lim = 0;
  for (double z : {0.3, 0.5, 0.7}) {
    const FExtrapolation ex = extrapolate_f_limits(P, z);
    worst_lim = std::max({worst_lim, rel(ex.f.F1, fl.F1), rel(ex.f.F2, fl.F2), rel(ex.ftilde.Ft1, ftl.Ft1),
                          rel(ex.ftilde.Ft2, ftl.Ft2), rel(ex.ftilde.Ft3, ftl.Ft3)});
    if (z == 0.5) {
      r.add_summary("f1_limit_extrapolated", ex.f.F1);
      r.add_summary("f2_limit_extrapolated", ex.f.F2);
      r.add_summary("ft1_limit_extrapolated", ex.ftilde.Ft1);
      r.add_summary("ft2_limit_extrapolated", ex.ftilde.Ft2);
      r.add_summary("ft3_limit_extrapolated", ex.ftilde.Ft3);
    }
  }
  r.add_summary("f1_limit_closed", fl.F1);
  r.add_summary("f2_limit_closed", fl.F2);
  r.add_summary("ft1_limit_closed", ftl.Ft1);
  r.add_summary("ft2_limit_closed", ftl.Ft2);
  r.add_summary("ft3_limit_closed", ftl.Ft3);
  r.add_summary("max_f_limit_residual", worst_lim);
  if (worst_lim > kLimitRelTol) ++r.failures;
  return r;
}

Report cmd_hsc(const RunConfig& cfg) {
  const DomainParams P = DomainParams::make(cfg.p, cfg.lambda);
  const double tol = tol_or(cfg, 1e-5);
  ScanSpec spec;
  spec.delta_count = cfg.grid_rows;
  spec.z_count = cfg.grid_cols;
  spec.delta_cap = cfg.delta_cap.value_or(kScanCap);
  spec.workers = cfg.workers;
  spec.with_closed = true;
  const auto rows = boundary_scan(P, spec);

  Report r;
  r.columns = {"delta", "z", "y", "hx", "hy", "hz", "bxy", "bxz", "byz", "closed_numeric_diff",
               "zero_residual", "source", "error_estimate", "tolerance", "flag", "pass"};
  for (const auto& sr : rows) {
    Row row = empty_row(r);
    row[0] = sr.delta;
    row[1] = sr.z;
    row[2] = sr.y;
    row[11] = std::string("numeric");
    row[13] = tol;
    if (sr.near_boundary) {
      row[14] = std::string("near_boundary");
      ++r.flagged;
      r.rows.push_back(std::move(row));
      continue;
    }
    const auto v = sr.hsc.values();
    bool finite = true;
    for (std::size_t k = 0; k < 6; ++k) {
      row[3 + k] = v[k];
      finite = finite && std::isfinite(v[k]);
    }
    const double diff = max_abs(v, sr.closed->values());
    row[9] = diff;
    row[10] = sr.hsc.zero_residual;
    row[12] = sr.hsc.error_estimate;
    row[14] = std::string();
    const bool pass = finite && diff <= tol && sr.hsc.zero_residual <= kZeroComboTol;
    row[15] = pass;
    if (!pass) ++r.failures;
    r.rows.push_back(std::move(row));
  }
  const auto sup = scan_sup(rows);
  const char* names[6] = {"sup_hx", "sup_hy", "sup_hz", "sup_bxy", "sup_bxz", "sup_byz"};
  for (std::size_t k = 0; k < 6; ++k) r.add_summary(names[k], sup[k]);
  double worst_diff = 0, worst_zero = 0;
  for (const auto& sr : rows) {
    if (sr.near_boundary) continue;
    worst_diff = std::max(worst_diff, max_abs(sr.hsc.values(), sr.closed->values()));
    worst_zero = std::max(worst_zero, sr.hsc.zero_residual);
  }
  r.add_summary("max_closed_numeric_diff", worst_diff);
  r.add_summary("max_zero_residual", worst_zero);

  if (cfg.ke) {
    const KEResult ke = ke_residual(P, ke_reference_points());
    r.add_summary("ke_c_best", ke.c_best);
    r.add_summary("ke_residual", ke.residual);
    if (P.p == 1 && P.lambda == 1) {
      r.add_summary("ke_threshold", 1e-6);
      if (ke.residual > 1e-6) ++r.failures;
    } else if ((P.p == 2 && P.lambda == 1) || (P.p == 1 && P.lambda == 2)) {
      // Witnesses: the residual must exceed the golden threshold.
      const double thr = P.p == 2 ? kKeThresholdP2L1 : kKeThresholdP1L2;
      r.add_summary("ke_threshold", thr);
      if (!(ke.residual > thr)) ++r.failures;
    }
  }
  return r;
}

Report cmd_disk(const RunConfig& cfg) {
  const double tol = tol_or(cfg, 1e-6);
  Report r;
  r.columns = {"check", "input", "value", "reference", "residual", "source", "error_estimate",
               "tolerance", "flag", "pass"};
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  auto push = [&](std::string check, std::string input, Cell value, Cell ref, Cell residual,
                  std::string source, Cell est, Cell t, std::string flag, std::optional<bool> pass) {
    r.rows.push_back({std::move(check), std::move(input), std::move(value), std::move(ref),
                      std::move(residual), std::move(source), std::move(est), std::move(t), flag,
                      pass ? Cell{*pass} : Cell{}});
    if (!flag.empty())
      ++r.flagged;
    else if (pass && !*pass)
      ++r.failures;
  };

  // phi by three routes; grid over R in [0, 1].
  const auto Rs = linspace(0.0, 1.0, cfg.grid_rows);
  struct PhiRow {
    double closed, one_d, two_d;
  };
  auto phis = evaluate_cells(Rs.size(), cfg.workers, [&](std::size_t i) {
    CellResult c;
    c.row = {phi_closed(Rs[i]), phi_reduction_1d(Rs[i]), phi_quadrature_2d(Rs[i])};
    return c;
  });
  double worst_phi = 0;
  for (std::size_t i = 0; i < Rs.size(); ++i) {
    const double c = std::get<double>(phis[i].row[0]), a = std::get<double>(phis[i].row[1]),
                 b = std::get<double>(phis[i].row[2]);
    const double res = std::max({std::fabs(c - a), std::fabs(c - b), std::fabs(a - b)});
    worst_phi = std::max(worst_phi, res);
    push("phi_closed_vs_1d", "R=" + num(Rs[i]), c, a, std::fabs(c - a), "closed", Cell{}, tol, "",
         std::fabs(c - a) <= tol);
    push("phi_closed_vs_2d", "R=" + num(Rs[i]), c, b, std::fabs(c - b), "closed", Cell{}, tol, "",
         std::fabs(c - b) <= tol);
  }
  push("phi_boundary", "R=1", phi_closed(1.0), 0.0, std::fabs(phi_closed(1.0)), "closed", Cell{}, 0.0,
       "", phi_closed(1.0) == 0.0);
  for (double R : Rs) {
    const double d = phi_printed_display(R), c = phi_closed(R);
    push("phi_printed_display", "R=" + num(R), d, c, d - c, "printed", Cell{}, Cell{}, "reported",
         std::nullopt);
  }

  // Ring integral over a log-spaced grid.
  double worst_ring = 0;
  for (double aa : {0.1, 0.5, 1.0, 2.0, 10.0})
    for (double bb : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      const double q = ring_integral(aa, bb), ref = ring_integral_closed(aa, bb);
      const double res = std::fabs(q - ref);
      worst_ring = std::max(worst_ring, res);
      push("ring_integral", "aa=" + num(aa) + ";bb=" + num(bb), q, ref, res, "numeric", Cell{}, 1e-8, "",
           res <= 1e-8);
    }

  // The integrated inequality under both gradient conventions.
  double worst_ratio = 0;
  for (double p : cfg.p_list)
    for (auto [conv, name] : {std::pair{GradConvention::grad_unit, "grad_unit"},
                              std::pair{GradConvention::grad_sq, "grad_sq"}}) {
      const DiskInequality d = disk_inequality(p, conv);
      worst_ratio = std::max(worst_ratio, d.lhs / d.rhs);
      push("disk_inequality", "p=" + num(p) + ";" + name, d.lhs, d.rhs, d.lhs / d.rhs, "numeric",
           Cell{}, Cell{}, "", d.holds);
    }

  // Heat bound: fixed samples and a monotone ray.
  for (auto [n, b, t, rr] : {std::tuple{1, 1.0, 1.0, 1.0}, {2, 0.5, 2.0, 3.0}, {3, 2.0, 0.25, 0.0}}) {
    BoundsParams bp;
    bp.n = n;
    bp.b = b;
    bp.t = t;
    bp.r = rr;
    const HeatBound h = heat_lower_bound(bp);
    push("heat_lower_bound",
         "n=" + std::to_string(n) + ";b=" + num(b) + ";t=" + num(t) + ";r=" + num(rr), h.value, Cell{},
         Cell{}, "closed", Cell{}, Cell{}, h.underflow ? "underflow" : "", h.value > 0);
  }
  double prev = INFINITY;
  for (double rr : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    BoundsParams bp;
    bp.n = 2;
    bp.r = rr;
    const HeatBound h = heat_lower_bound(bp);
    push("heat_monotone", "n=2;b=1;t=1;r=" + num(rr), h.value, prev, Cell{}, "closed", Cell{}, Cell{},
         h.underflow ? "underflow" : "", h.value > 0 && h.value < prev);
    prev = h.value;
  }

  // Constants of the pinched estimates.
  for (int n : {2, 3})
    for (double p : cfg.p_list) {
      const BoundConstants k = constants(n, 1.0, p);
      const std::string in = "n=" + std::to_string(n) + ";a=1;p=" + num(p);
      push("poincare", in, k.poincare, Cell{}, Cell{}, "closed", Cell{}, Cell{}, "", k.poincare > 0);
      push("mckean_lambda1", in, k.mckean_lambda1, Cell{}, Cell{}, "closed", Cell{}, Cell{}, "",
           k.mckean_lambda1 > 0);
      const double ident = k.cheng_Cp * std::pow(4 * k.mckean_lambda1 / (p * p), p / 2);
      push("cheng_identity", in, ident, 1.0, std::fabs(ident - 1), "closed", Cell{}, 1e-12, "",
           std::fabs(ident - 1) <= 1e-12);
      push("thm_constant", in, k.thm_constant, Cell{}, Cell{}, "closed", Cell{}, Cell{}, "",
           k.thm_constant > 0);
    }

  r.add_summary("max_phi_path_residual", worst_phi);
  r.add_summary("phi_at_0", phi_closed(0.0));
  r.add_summary("phi_at_half", phi_closed(0.5));
  r.add_summary("printed_display_at_1", phi_printed_display(1.0));
  r.add_summary("max_ring_residual", worst_ring);
  r.add_summary("max_inequality_ratio", worst_ratio);
  return r;
}

}  // namespace bgeom::cli
