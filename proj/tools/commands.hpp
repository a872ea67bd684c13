#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace bgeom::cli {

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  double p = 1.0;
  double lambda = 1.0;
  int grid_rows = 9;
  int grid_cols = 9;
  std::optional<double> delta_cap;
  std::optional<double> tol;
  Format format = Format::csv;
  std::string out;
  std::uint64_t seed = 1;
  int samples = 0;
  bool ke = false;
  std::vector<double> p_list{2, 2.5, 3, 4, 6};
  unsigned workers = 1;

  /// Throws bgeom::Error(InvalidArgument) naming the violated invariant.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

Report cmd_kernel(const RunConfig& cfg);
Report cmd_metric(const RunConfig& cfg);
Report cmd_curvature(const RunConfig& cfg);
Report cmd_hsc(const RunConfig& cfg);
Report cmd_disk(const RunConfig& cfg);

}  // namespace bgeom::cli
