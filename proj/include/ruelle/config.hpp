#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ruelle/grids.hpp"
#include "ruelle/spectra.hpp"

namespace ruelle {

enum class SymmetryMode { trivial, full };

struct RunConfig {
  SurfaceParams surface;
  SymmetryMode symmetry = SymmetryMode::full;
  int nmax = 7;
  double sigma = 1e-3;
  std::optional<cplx> lambda0;
  int grid_resolution = 50;
  RefinementSpec refinement;
  BaseRegion base;
  Rect scan{-1.0, 0.0, 0.0, 10.0};
  double scan_cell = 0.1;
  double amplitude = 1.0;
  BoundaryMetric metric = BoundaryMetric::cayley_angular;
  std::string output = "-";
  int threads = 0;

  // Keys given explicitly, in file order.
  std::vector<std::string> explicit_keys;
};

// Line-oriented `key = value` with `#` comments. Unknown keys, repeated keys
// and out-of-range values are rejected with the line number. Lines of the
// form `# key=value` with keys outside the config namespace (CSV headers
// written by this tool) are read when `from_csv_header` is set.
RunConfig parse_config(const std::string& text, bool from_csv_header = false);

// Every field as `key=value`, in a fixed order. Round-trips through parse_config.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

SchottkySurface make_surface(const RunConfig& cfg);
SymmetryGroup make_group(const RunConfig& cfg, const SchottkySurface& s);

}  // namespace ruelle
