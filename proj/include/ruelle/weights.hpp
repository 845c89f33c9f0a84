#pragma once

#include <variant>
#include <vector>

#include "ruelle/symmetry.hpp"

namespace ruelle {

enum class WeightKind { constant, gauss_base, gauss_section };

struct WeightSpec {
  WeightKind kind = WeightKind::constant;
  double sigma = 1e-3;
  double amplitude = 1.0;  // f is scaled by this; 0 gives the f = 0 toggle
  bool symmetrize = false;
  BoundaryMetric metric = BoundaryMetric::cayley_angular;
};

struct SectionTarget {
  BoundaryPoint x_minus;
  BoundaryPoint x_plus;
};

// monostate for constant weights, a point of H for gauss_base, a boundary
// pair for gauss_section.
using Target = std::variant<std::monostate, cplx, SectionTarget>;

struct SectionPair {
  BoundaryPoint minus, plus;
  double theta_minus = 0.0, theta_plus = 0.0;  // Cayley angles
};

// Target-independent data of one closed word (and its G-translates).
struct WordGeometry {
  WeightKind kind = WeightKind::constant;
  double length = 0.0;  // length of the geodesic of the word itself
  int translates = 1;
  std::vector<MoebiusMap> base_maps;
  std::vector<SectionPair> section_pairs;
};

WordGeometry precompute_geometry(const SchottkySurface& s, const SymmetryGroup& G, const Word& w,
                                 const WeightSpec& spec);

// z -> (z - x_minus)/(z - x_plus), normalized.
MoebiusMap axis_normalizer(const FixedPointPair& fp);

double base_period_integral(const WordGeometry& geo, cplx center, double sigma);
double section_period_integral(const WordGeometry& geo, const SectionTarget& target, double sigma,
                               BoundaryMetric metric = BoundaryMetric::cayley_angular);
// Integral of f = 1 over the geodesic of the word: its length.
double constant_period_integral(const WordGeometry& geo);

// Dispatch on spec.kind, times spec.amplitude.
double period_integral(const WordGeometry& geo, const WeightSpec& spec, const Target& target);

}  // namespace ruelle
