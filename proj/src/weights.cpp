#include "ruelle/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ruelle/errors.hpp"

namespace ruelle {

MoebiusMap axis_normalizer(const FixedPointPair& fp) {
  const BoundaryPoint& xm = fp.repelling;
  const BoundaryPoint& xp = fp.attracting;
  if (xp.infinite) return MoebiusMap(1.0, -xm.value, 0.0, 1.0);
  if (xm.infinite) return MoebiusMap(0.0, 1.0, 1.0, -xp.value).normalize();
  return MoebiusMap(1.0, -xm.value, 1.0, -xp.value).normalize();
}

WordGeometry precompute_geometry(const SchottkySurface& s, const SymmetryGroup& G, const Word& w,
                                 const WeightSpec& spec) {
  if (!is_closed(w, s.rank())) throw ValidationError("precompute_geometry: word " + to_string(w) + " is not closed");
  WordGeometry geo;
  geo.kind = spec.kind;
  geo.length = displacement_length(word_to_map(s, w));
  if (spec.kind == WeightKind::constant) return geo;

  std::vector<Word> words{w};
  if (spec.symmetrize && G.size() > 1) {
    words.clear();
    for (int h = 0; h < G.size(); ++h) words.push_back(G.act(h, w));
    // Sorted so that every word of a G-orbit sums the same terms in the same order.
    std::sort(words.begin(), words.end());
  }
  geo.translates = static_cast<int>(words.size());

  for (const Word& u : words) {
    GeodesicData gd = geodesic_data(s, u);
    if (spec.kind == WeightKind::gauss_base) {
      // The axis crosses the tiles P_j^{-1} F, P_j = g_{i_j} ... g_{i_1}. Up to a
      // diagonal factor g0 P_j^{-1} is the normalizer of the axis of rotate(u, j),
      // and using that directly keeps the center far from both fixed points.
      for (const auto& fp : gd.cyclic_points) geo.base_maps.push_back(axis_normalizer(fp));
    } else {
      for (const auto& fp : gd.cyclic_points)
        geo.section_pairs.push_back({fp.repelling, fp.attracting, cayley_angle(fp.repelling),
                                     cayley_angle(fp.attracting)});
    }
  }
  return geo;
}

double base_period_integral(const WordGeometry& geo, cplx center, double sigma) {
  if (!(center.imag() > 0.0)) throw ValidationError("base_period_integral: center must lie in the upper half-plane");
  if (!(sigma > 0.0)) throw ValidationError("base_period_integral: sigma must be positive");
  double sum = 0.0;
  for (const MoebiusMap& M : geo.base_maps) {
    cplx z = M.apply(center);
    double q = z.real() / (sigma * z.imag());
    sum += std::exp(-q * q);
  }
  return sum / (std::sqrt(std::numbers::pi) * sigma * geo.translates);
}

namespace {

double angle_gap(double t1, double t2) {
  double delta = std::abs(t1 - t2);
  return std::min(delta, 2.0 * std::numbers::pi - delta);
}

}  // namespace

double section_period_integral(const WordGeometry& geo, const SectionTarget& target, double sigma,
                               BoundaryMetric metric) {
  if (!(sigma > 0.0)) throw ValidationError("section_period_integral: sigma must be positive");
  double sum = 0.0;
  const double s2 = sigma * sigma;
  if (metric == BoundaryMetric::cayley_angular) {
    double tp = cayley_angle(target.x_plus), tm = cayley_angle(target.x_minus);
    for (const auto& p : geo.section_pairs) {
      double dp = angle_gap(tp, p.theta_plus), dm = angle_gap(tm, p.theta_minus);
      sum += std::exp(-(dp * dp + dm * dm) / s2);
    }
  } else {
    for (const auto& p : geo.section_pairs) {
      double dp = boundary_distance(target.x_plus, p.plus, metric);
      double dm = boundary_distance(target.x_minus, p.minus, metric);
      sum += std::exp(-(dp * dp + dm * dm) / s2);
    }
  }
  return sum / (std::numbers::pi * s2 * geo.translates);
}

double constant_period_integral(const WordGeometry& geo) { return geo.length; }

double period_integral(const WordGeometry& geo, const WeightSpec& spec, const Target& target) {
  if (spec.amplitude == 0.0) return 0.0;
  switch (spec.kind) {
    case WeightKind::constant:
      return spec.amplitude * constant_period_integral(geo);
    case WeightKind::gauss_base:
      if (!std::holds_alternative<cplx>(target)) throw ValidationError("gauss_base weight needs a point target");
      return spec.amplitude * base_period_integral(geo, std::get<cplx>(target), spec.sigma);
    case WeightKind::gauss_section:
      if (!std::holds_alternative<SectionTarget>(target))
        throw ValidationError("gauss_section weight needs a boundary-pair target");
      return spec.amplitude *
             section_period_integral(geo, std::get<SectionTarget>(target), spec.sigma, spec.metric);
  }
  return 0.0;
}

}  // namespace ruelle
