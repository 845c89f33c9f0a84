#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ruelle/jet.hpp"
#include "ruelle/weights.hpp"

namespace ruelle {

struct CacheEntry {
  TwistedWord rep;  // class representative with twist e in trivial mode
  int n_w = 0;
  int m_w = 1;
  double T = 0.0;   // length of the geodesic of the iterate w^{m_w}
  WordGeometry geometry;  // geometry of the iterate
};

struct GeodesicCache {
  SchottkySurface surface;
  SymmetryGroup group;
  int N = 0;
  WeightSpec weight;
  std::vector<CacheEntry> entries;

  bool symmetry_mode() const { return group.size() > 1; }
  int character_count() const { return static_cast<int>(group.characters().size()); }
};

// Trivial group: primitive cyclic classes of length <= N. Otherwise: prime
// orbit representatives with n_w <= N. Gaussian weights must be symmetrized
// when the group is nontrivial.
GeodesicCache build_cache(const SchottkySurface& s, const SymmetryGroup& G, int N, const WeightSpec& weight);

// Period integral over each entry's iterate geodesic (amplitude included).
// A monostate target on a Gaussian cache yields zeros, i.e. only the lambda
// part of the jets is meaningful.
std::vector<double> entry_integrals(const GeodesicCache& cache, const Target& target);

// Unreduced a_k. For a nontrivial group this is the sum over characters.
Jet1 coeff_a(const GeodesicCache& cache, int k, cplx lambda, const Target& target);
Jet1 coeff_a_chi(const GeodesicCache& cache, int m, cplx lambda, int chi, const Target& target);

// a_1..a_N for every character, from precomputed integrals.
std::vector<std::vector<Jet1>> character_coefficients(const GeodesicCache& cache, cplx lambda,
                                                      const std::vector<double>& integrals, int N);

struct CoefficientSeries {
  std::vector<Jet1> a;        // a[k-1] = a_k
  std::vector<Jet1> d;        // d[n], d[0] = 1
  std::vector<Jet1> partial;  // partial[n] = 1 + d_1 + ... + d_n
  cplx lambda{0.0};
  std::string label;

  int order() const { return static_cast<int>(a.size()); }
  const Jet1& determinant() const { return partial.back(); }
};

CoefficientSeries bell_recursion(const std::vector<Jet1>& a);

// N < 0 means cache.N.
CoefficientSeries coefficient_series(const GeodesicCache& cache, cplx lambda, int chi, const Target& target,
                                     int N = -1);
std::vector<CoefficientSeries> character_series(const GeodesicCache& cache, cplx lambda, const Target& target,
                                                int N = -1);
Jet1 determinant(const GeodesicCache& cache, cplx lambda, int chi, const Target& target, int N = -1);
// Product over characters: the unreduced determinant.
Jet1 full_determinant(const GeodesicCache& cache, cplx lambda, const Target& target, int N = -1);

cplx zeta(const GeodesicCache& cache, cplx lambda, const Target& target, int N = -1);

// Truncated sum over closed geodesics with word length <= N; Re lambda >= 2.
cplx direct_zeta_sum(const SchottkySurface& s, const SymmetryGroup& G, cplx lambda, const WeightSpec& weight,
                     const Target& target, int N);

struct PoleInfo {
  cplx lambda0{0.0};
  std::vector<int> characters;  // factors vanishing at lambda0
};

// Finds the character factors with a zero at lambda0 and checks each is simple.
PoleInfo locate_pole(const GeodesicCache& cache, cplx lambda0, int N = -1);

cplx residue_simple(const GeodesicCache& cache, const PoleInfo& pole, const Target& target, int N = -1);
cplx residue_simple(const GeodesicCache& cache, cplx lambda0, const Target& target, int N = -1);

using ZetaFn = std::function<cplx(cplx)>;
using DetFn = std::function<Jet1(cplx)>;

// (1/2 pi i) of the contour integral of D'/D over a circle, trapezoid rule.
double circle_winding(const DetFn& det, cplx center, double radius, int Q);

cplx residue_contour(const ZetaFn& zeta_fn, const DetFn& det, cplx lambda0, double radius, int Q = 64);

enum class JetComponent { value, d_lambda, d_beta };

// |d_n| / |1 + d_1 + ... + d_n| for the chosen jet component.
double relative_error(const CoefficientSeries& series, int n, JetComponent component = JetComponent::value);

}  // namespace ruelle
