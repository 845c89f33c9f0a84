#pragma once

#include <complex>

namespace ruelle {

using cplx = std::complex<double>;

// Point of R ∪ {∞}.
struct BoundaryPoint {
  double value = 0.0;
  bool infinite = false;

  static BoundaryPoint finite(double x) { return {x, false}; }
  static BoundaryPoint infinity() { return {0.0, true}; }

  bool operator==(const BoundaryPoint& o) const {
    if (infinite || o.infinite) return infinite == o.infinite;
    return value == o.value;
  }
};

// z -> (az + b)/(cz + d) with real entries. The determinant is carried along
// explicitly so long products can be renormalized without recomputing ad - bc.
class MoebiusMap {
 public:
  MoebiusMap() : MoebiusMap(1.0, 0.0, 0.0, 1.0) {}
  MoebiusMap(double a, double b, double c, double d);

  static MoebiusMap identity() { return {}; }

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double det() const { return det_; }
  double trace() const { return a_ + d_; }
  bool normalized() const { return normalized_; }
  double max_abs_entry() const;

  // Scaled so that |det| = 1.
  MoebiusMap normalize() const;
  MoebiusMap inverse() const;
  MoebiusMap negated() const;

  cplx apply(cplx z) const;
  BoundaryPoint apply(BoundaryPoint x) const;

  friend MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);

 private:
  MoebiusMap(double a, double b, double c, double d, double det, bool normalized)
      : a_(a), b_(b), c_(c), d_(d), det_(det), normalized_(normalized) {}

  double a_, b_, c_, d_;
  double det_;
  bool normalized_;
};

// m1 after m2, normalized.
MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);
inline MoebiusMap operator*(const MoebiusMap& m1, const MoebiusMap& m2) { return compose(m1, m2); }

// Largest entrywise deviation between m1 and ±m2 after normalization.
double projective_distance(const MoebiusMap& m1, const MoebiusMap& m2);

enum class MapClass { hyperbolic, parabolic, elliptic };

MapClass classify(const MoebiusMap& m);

// Real fixed points with their multipliers g'(x). Works for negative
// determinants too (twisted compositions), where only |g'| orders the pair.
struct FixedPointPair {
  BoundaryPoint repelling;
  BoundaryPoint attracting;
  double mult_repelling = 0.0;
  double mult_attracting = 0.0;
};

FixedPointPair fixed_points(const MoebiusMap& m);

double displacement_length(const MoebiusMap& m);

cplx derivative(const MoebiusMap& m, cplx z);

enum class BoundaryMetric { cayley_angular, euclidean };

double boundary_distance(BoundaryPoint x, BoundaryPoint y,
                         BoundaryMetric metric = BoundaryMetric::cayley_angular);

// Angle of the Cayley image (x - i)/(x + i), up to a constant shift.
double cayley_angle(BoundaryPoint x);

// Chordal distance on the Riemann sphere restricted to R ∪ {∞}.
double chordal_distance(BoundaryPoint x, BoundaryPoint y);

}  // namespace ruelle
