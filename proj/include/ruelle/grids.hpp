#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ruelle/cycle.hpp"

namespace ruelle {

enum class RefinementMode { full, level1, explicit_bounds };

struct RefinementSpec {
  RefinementMode mode = RefinementMode::full;
  // level1: letters k whose images g_k(I_j), j != k, make up the axis (empty = all).
  std::vector<int> minus_letters, plus_letters;
  // explicit_bounds: subintervals per axis, each inside one fundamental interval.
  std::vector<Interval> minus_bounds, plus_bounds;
};

struct AxisPiece {
  Interval range;
  int parent = -1;  // fundamental interval containing the piece
};

struct RefinedAxes {
  std::vector<AxisPiece> minus, plus;
};

RefinedAxes refine_intervals(const SchottkySurface& s, const RefinementSpec& spec);

using Metadata = std::vector<std::pair<std::string, std::string>>;

enum class GridMode { section, base };

struct DistributionGrid {
  GridMode mode = GridMode::section;
  // Section: (x_minus, x_plus). Base: (x, y).
  std::vector<double> u, v;
  std::vector<cplx> values;
  std::vector<int> ok;  // 1 where the value is valid (base: also inside the fundamental domain)
  // Relative size of the last d_beta Taylor term, max over the pole's factors.
  std::vector<double> rel_error;
  Metadata metadata;

  size_t size() const { return values.size(); }
};

struct BaseRegion {
  double x_min = -1.0, x_max = 1.0, y_min = 0.01, y_max = 1.0;
};

struct GridOptions {
  int threads = 0;  // 0: hardware concurrency
};

// The cache weight must be gauss_section; lambda0 must be a located zero.
// Each axis gets `resolution` points spread over its pieces laid end to end;
// pairs from the same fundamental interval are skipped. Row-major, x_minus outer.
DistributionGrid section_grid(const GeodesicCache& cache, cplx lambda0, int resolution,
                              const RefinementSpec& refinement, const GridOptions& opts = {});
DistributionGrid section_grid(const SchottkySurface& s, const SymmetryGroup& G, cplx lambda0, double sigma,
                              int resolution, const RefinementSpec& refinement, int N);

// Cache weight must be gauss_base. resolution points per axis over the region.
DistributionGrid base_grid(const GeodesicCache& cache, cplx lambda0, int resolution, const BaseRegion& region,
                           const GridOptions& opts = {});
DistributionGrid base_grid(const SchottkySurface& s, const SymmetryGroup& G, cplx lambda0, double sigma,
                           int resolution, const BaseRegion& region, int N);

// Inside the canonical fundamental domain: upper half-plane minus all discs.
bool in_fundamental_domain(const SchottkySurface& s, cplx z);

// CSV with '# key=value' header lines and 17 significant digits.
void write_csv(std::ostream& os, const DistributionGrid& grid);
DistributionGrid read_csv(std::istream& is);

std::string format_double(double x);

}  // namespace ruelle
