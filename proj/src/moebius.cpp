#include "ruelle/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ruelle/errors.hpp"

namespace ruelle {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kClassTol = 1e-12;

}  // namespace

MoebiusMap::MoebiusMap(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d), det_(a * d - b * c), normalized_(false) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
    throw ValidationError("Moebius map with non-finite entries");
  if (det_ == 0.0 || !std::isfinite(det_))
    throw ValidationError("singular Moebius matrix");
  normalized_ = std::abs(std::abs(det_) - 1.0) <= kNormTol;
}

double MoebiusMap::max_abs_entry() const {
  return std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
}

MoebiusMap MoebiusMap::normalize() const {
  if (normalized_) return *this;
  double s = 1.0 / std::sqrt(std::abs(det_));
  return MoebiusMap(a_ * s, b_ * s, c_ * s, d_ * s, det_ > 0 ? 1.0 : -1.0, true);
}

MoebiusMap MoebiusMap::inverse() const {
  return MoebiusMap(d_ / det_, -b_ / det_, -c_ / det_, a_ / det_, 1.0 / det_, normalized_);
}

MoebiusMap MoebiusMap::negated() const {
  return MoebiusMap(-a_, -b_, -c_, -d_, det_, normalized_);
}

cplx MoebiusMap::apply(cplx z) const {
  cplx den = c_ * z + d_;
  if (den == 0.0) throw NumericalError("Moebius map evaluated at its pole");
  return (a_ * z + b_) / den;
}

BoundaryPoint MoebiusMap::apply(BoundaryPoint x) const {
  if (x.infinite) {
    if (c_ == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::finite(a_ / c_);
  }
  double den = c_ * x.value + d_;
  if (den == 0.0) return BoundaryPoint::infinity();
  return BoundaryPoint::finite((a_ * x.value + b_) / den);
}

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
  double a = m1.a_ * m2.a_ + m1.b_ * m2.c_;
  double b = m1.a_ * m2.b_ + m1.b_ * m2.d_;
  double c = m1.c_ * m2.a_ + m1.d_ * m2.c_;
  double d = m1.c_ * m2.b_ + m1.d_ * m2.d_;
  double det = m1.det_ * m2.det_;
  double s = 1.0 / std::sqrt(std::abs(det));
  return MoebiusMap(a * s, b * s, c * s, d * s, det > 0 ? 1.0 : -1.0, true);
}

double projective_distance(const MoebiusMap& m1, const MoebiusMap& m2) {
  MoebiusMap p = m1.normalize(), q = m2.normalize();
  auto dist = [&](double sign) {
    return std::max({std::abs(p.a() - sign * q.a()), std::abs(p.b() - sign * q.b()),
                     std::abs(p.c() - sign * q.c()), std::abs(p.d() - sign * q.d())});
  };
  return std::min(dist(1.0), dist(-1.0));
}

MapClass classify(const MoebiusMap& m) {
  MoebiusMap n = m.normalize();
  if (n.det() < 0) throw ValidationError("orientation-reversing map has no PSL(2,R) class");
  if (std::abs(n.b()) <= kClassTol && std::abs(n.c()) <= kClassTol &&
      std::abs(n.a() - n.d()) <= kClassTol)
    throw ValidationError("not an isometry class: map is the identity");
  double t = std::abs(n.trace());
  if (std::abs(t - 2.0) <= kClassTol) return MapClass::parabolic;
  return t > 2.0 ? MapClass::hyperbolic : MapClass::elliptic;
}

FixedPointPair fixed_points(const MoebiusMap& m) {
  MoebiusMap n = m.normalize();
  if (n.det() > 0 && classify(n) != MapClass::hyperbolic)
    throw NumericalError("fixed_points: map is not hyperbolic");
  double tr = n.trace();
  double disc = tr * tr - 4.0 * n.det();
  if (!(disc > 0.0)) throw NumericalError("fixed_points: no distinct real fixed points");
  double root = std::sqrt(disc);
  double mu_big = 0.5 * (tr + (tr >= 0 ? root : -root));
  double mu_small = n.det() / mu_big;

  // Eigenvector (x, y) of eigenvalue mu gives the fixed point x/y.
  auto point_for = [&](double mu) {
    double v0 = n.b(), v1 = mu - n.a();
    double w0 = mu - n.d(), w1 = n.c();
    if (std::max(std::abs(w0), std::abs(w1)) > std::max(std::abs(v0), std::abs(v1))) {
      v0 = w0;
      v1 = w1;
    }
    if (v1 == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::finite(v0 / v1);
  };

  FixedPointPair fp;
  fp.attracting = point_for(mu_big);
  fp.repelling = point_for(mu_small);
  fp.mult_attracting = n.det() / (mu_big * mu_big);
  fp.mult_repelling = n.det() / (mu_small * mu_small);
  return fp;
}

double displacement_length(const MoebiusMap& m) {
  MoebiusMap n = m.normalize();
  if (classify(n) != MapClass::hyperbolic)
    throw NumericalError("displacement_length: map is not hyperbolic");
  return 2.0 * std::acosh(0.5 * std::abs(n.trace()));
}

cplx derivative(const MoebiusMap& m, cplx z) {
  MoebiusMap n = m.normalize();
  cplx den = n.c() * z + n.d();
  if (den == 0.0) throw NumericalError("derivative evaluated at the pole of the map");
  return n.det() / (den * den);
}

double cayley_angle(BoundaryPoint x) {
  if (x.infinite) return std::numbers::pi;
  return 2.0 * std::atan(x.value);
}

double boundary_distance(BoundaryPoint x, BoundaryPoint y, BoundaryMetric metric) {
  if (metric == BoundaryMetric::euclidean) {
    if (x.infinite || y.infinite)
      return (x.infinite && y.infinite) ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(x.value - y.value);
  }
  double delta = std::abs(cayley_angle(x) - cayley_angle(y));
  return std::min(delta, 2.0 * std::numbers::pi - delta);
}

double chordal_distance(BoundaryPoint x, BoundaryPoint y) {
  if (x.infinite && y.infinite) return 0.0;
  if (x.infinite) std::swap(x, y);
  if (y.infinite) return 2.0 / std::sqrt(1.0 + x.value * x.value);
  return 2.0 * std::abs(x.value - y.value) /
         std::sqrt((1.0 + x.value * x.value) * (1.0 + y.value * y.value));
}

}  // namespace ruelle
