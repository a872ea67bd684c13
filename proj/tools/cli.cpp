#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>

#include "bgeom/errors.hpp"
#include "commands.hpp"

namespace bgeom::cli {

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitUsage = 2;

void parse_grid(const std::string& spec, RunConfig& cfg) {
  static const std::regex re(R"((\d+)x(\d+))");
  std::smatch m;
  if (!std::regex_match(spec, m, re))
    throw Error(ErrorKind::InvalidArgument, "grid must look like RxC, got '" + spec + "'");
  cfg.grid_rows = std::stoi(m[1]);
  cfg.grid_cols = std::stoi(m[2]);
}

void add_common(CLI::App* sub, RunConfig& cfg, std::string& grid, std::string& format) {
  sub->add_option("--p", cfg.p, "exponent p > 0");
  sub->add_option("--lambda", cfg.lambda, "exponent lambda > 0");
  sub->add_option("--grid", grid, "grid counts RxC (y x z, or delta x z for hsc)");
  sub->add_option("--delta-cap", cfg.delta_cap, "largest delta evaluated");
  sub->add_option("--tol", cfg.tol, "tolerance for the primary check");
  sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out, "output path (default stdout)");
  sub->add_option("--seed", cfg.seed, "seed for randomized samples");
  sub->add_option("--workers", cfg.workers, "worker threads; output does not depend on it");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Bergman geometry of E_{p,lambda} and the disk bound"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string grid, format = "csv";

  const std::map<std::string, std::string> help{
      {"kernel", "kernel formula vs factored form on a grid"},
      {"metric", "closed vs numeric metric, inverse, determinant, limits"},
      {"curvature", "factor identities, tensor checks, F limits"},
      {"hsc", "holomorphic sectional curvature boundary scan"},
      {"disk", "disk Green's function, phi, inequality, heat bound, constants"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, text] : help) {
    subs[name] = app.add_subcommand(name, text);
    add_common(subs[name], cfg, grid, format);
  }
  subs["kernel"]->add_option("--samples", cfg.samples, "extra random interior points");
  subs["hsc"]->add_flag("--ke", cfg.ke, "also fit Ric = c g at the reference points");
  subs["disk"]->add_option("--p-list", cfg.p_list, "exponents for the inequality table")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, log);
    return code == 0 ? 0 : kExitUsage;
  }
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) cfg.command = name;

  try {
    if (!grid.empty()) parse_grid(grid, cfg);
    cfg.format = format == "json" ? Format::json : Format::csv;
    cfg.validate();
  } catch (const Error& e) {
    log << "bgeom: " << e.what() << '\n';
    return kExitUsage;
  }

  Report report;
  try {
    if (cfg.command == "kernel") report = cmd_kernel(cfg);
    else if (cfg.command == "metric") report = cmd_metric(cfg);
    else if (cfg.command == "curvature") report = cmd_curvature(cfg);
    else if (cfg.command == "hsc") report = cmd_hsc(cfg);
    else report = cmd_disk(cfg);
  } catch (const Error& e) {
    log << "bgeom " << cfg.command << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitChecksFailed;
  }
  report.config = cfg.to_json();

  const std::string text = cfg.format == Format::json ? to_json(report) : to_csv(report);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f || !(f << text)) {
      log << "bgeom: cannot write " << cfg.out << '\n';
      return kExitUsage;
    }
  }

  log << "bgeom " << cfg.command << ": " << report.rows.size() << " rows, " << report.failures
      << " failed, " << report.flagged << " flagged\n";
  for (const auto& [k, v] : report.summary) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    log << "  " << k << " = " << buf << '\n';
  }
  return report.failures == 0 ? 0 : kExitChecksFailed;
}

}  // namespace bgeom::cli
