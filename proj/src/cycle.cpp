#include "ruelle/cycle.hpp"

#include <cmath>
#include <numbers>

#include "ruelle/errors.hpp"

namespace ruelle {

namespace {

int resolve_order(const GeodesicCache& cache, int N) {
  if (N < 0) return cache.N;
  if (N < 1 || N > cache.N)
    throw ValidationError("truncation order " + std::to_string(N) + " outside 1.." + std::to_string(cache.N));
  return N;
}

// log((e^t - 1)^2) without overflow.
double log_denominator(double t) { return 2.0 * (t + std::log1p(-std::exp(-t))); }

}  // namespace

GeodesicCache build_cache(const SchottkySurface& s, const SymmetryGroup& G, int N, const WeightSpec& weight) {
  if (N < 1) throw ValidationError("build_cache: truncation order must be >= 1");
  if (weight.kind != WeightKind::constant && !(weight.sigma > 0.0))
    throw ValidationError("build_cache: sigma must be positive");
  if (G.size() > 1 && weight.kind != WeightKind::constant && !weight.symmetrize)
    throw ValidationError("symmetrized weights required for symmetry reduction");
  GeodesicCache cache;
  cache.surface = s;
  cache.group = G;
  cache.N = N;
  cache.weight = weight;
  if (G.size() == 1) {
    for (int n = 1; n <= N; ++n) {
      for (const CyclicClass& c : cyclic_classes(s.rank(), n)) {
        if (!c.primitive) continue;
        CacheEntry e;
        e.rep = {c.rep, 0};
        e.n_w = n;
        e.m_w = 1;
        e.geometry = precompute_geometry(s, G, c.rep, weight);
        e.T = e.geometry.length;
        cache.entries.push_back(std::move(e));
      }
    }
  } else {
    for (const OrbitRep& r : orbit_representatives(s.rank(), G, N)) {
      CacheEntry e;
      e.rep = r.rep;
      e.n_w = r.n_w;
      e.m_w = r.m_w;
      e.geometry = precompute_geometry(s, G, r.iterate, weight);
      e.T = e.geometry.length;
      cache.entries.push_back(std::move(e));
    }
  }
  return cache;
}

std::vector<double> entry_integrals(const GeodesicCache& cache, const Target& target) {
  std::vector<double> out(cache.entries.size(), 0.0);
  if (cache.weight.kind != WeightKind::constant && std::holds_alternative<std::monostate>(target)) return out;
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = period_integral(cache.entries[i].geometry, cache.weight, target);
  return out;
}

std::vector<std::vector<Jet1>> character_coefficients(const GeodesicCache& cache, cplx lambda,
                                                      const std::vector<double>& integrals, int N) {
  const auto& chars = cache.group.characters();
  std::vector<std::vector<Jet1>> a(chars.size(), std::vector<Jet1>(static_cast<size_t>(N)));
  for (size_t i = 0; i < cache.entries.size(); ++i) {
    const CacheEntry& e = cache.entries[i];
    for (int k = 1; k * e.n_w <= N; ++k) {
      const int m = k * e.n_w;
      const double scale = static_cast<double>(k) / e.m_w;
      const double t = scale * e.T;
      const double I = scale * integrals[i];
      cplx v = std::exp(-(lambda - 1.0) * t - log_denominator(t)) * (-static_cast<double>(e.n_w) / m);
      Jet1 term{v, -t * v, -I * v};
      const int twist_k = cache.group.power(e.rep.twist, k);
      for (size_t c = 0; c < chars.size(); ++c) {
        cplx w = static_cast<double>(chars[c].dim) * chars[c].values[static_cast<size_t>(twist_k)];
        a[c][static_cast<size_t>(m - 1)] += term * w;
      }
    }
  }
  return a;
}

Jet1 coeff_a_chi(const GeodesicCache& cache, int m, cplx lambda, int chi, const Target& target) {
  if (m < 1 || m > cache.N) throw ValidationError("coeff_a_chi: index out of range");
  if (chi < 0 || chi >= cache.character_count()) throw ValidationError("coeff_a_chi: unknown character");
  if (cache.symmetry_mode() && cache.weight.kind != WeightKind::constant && !cache.weight.symmetrize)
    throw ValidationError("symmetrized weights required for symmetry reduction");
  auto a = character_coefficients(cache, lambda, entry_integrals(cache, target), m);
  return a[static_cast<size_t>(chi)][static_cast<size_t>(m - 1)];
}

Jet1 coeff_a(const GeodesicCache& cache, int k, cplx lambda, const Target& target) {
  if (k < 1 || k > cache.N) throw ValidationError("coeff_a: index out of range");
  auto a = character_coefficients(cache, lambda, entry_integrals(cache, target), k);
  Jet1 sum;
  for (const auto& row : a) sum += row[static_cast<size_t>(k - 1)];
  return sum;
}

CoefficientSeries bell_recursion(const std::vector<Jet1>& a) {
  CoefficientSeries s;
  s.a = a;
  const size_t N = a.size();
  s.d.assign(N + 1, Jet1{});
  s.partial.assign(N + 1, Jet1{});
  s.d[0] = Jet1::constant(1.0);
  s.partial[0] = s.d[0];
  for (size_t n = 1; n <= N; ++n) {
    Jet1 acc;
    for (size_t k = 1; k <= n; ++k) acc += (s.d[n - k] * a[k - 1]) * (static_cast<double>(k) / n);
    s.d[n] = acc;
    s.partial[n] = s.partial[n - 1] + acc;
  }
  return s;
}

std::vector<CoefficientSeries> character_series(const GeodesicCache& cache, cplx lambda, const Target& target,
                                                int N) {
  N = resolve_order(cache, N);
  auto a = character_coefficients(cache, lambda, entry_integrals(cache, target), N);
  std::vector<CoefficientSeries> out;
  for (size_t c = 0; c < a.size(); ++c) {
    out.push_back(bell_recursion(a[c]));
    out.back().lambda = lambda;
    out.back().label = cache.group.characters()[c].label;
  }
  return out;
}

CoefficientSeries coefficient_series(const GeodesicCache& cache, cplx lambda, int chi, const Target& target,
                                     int N) {
  if (chi < 0 || chi >= cache.character_count()) throw ValidationError("unknown character index");
  N = resolve_order(cache, N);
  auto a = character_coefficients(cache, lambda, entry_integrals(cache, target), N);
  CoefficientSeries s = bell_recursion(a[static_cast<size_t>(chi)]);
  s.lambda = lambda;
  s.label = cache.group.characters()[static_cast<size_t>(chi)].label;
  return s;
}

Jet1 determinant(const GeodesicCache& cache, cplx lambda, int chi, const Target& target, int N) {
  return coefficient_series(cache, lambda, chi, target, N).determinant();
}

Jet1 full_determinant(const GeodesicCache& cache, cplx lambda, const Target& target, int N) {
  Jet1 prod = Jet1::constant(1.0);
  for (const auto& s : character_series(cache, lambda, target, N)) prod = prod * s.determinant();
  return prod;
}

cplx zeta(const GeodesicCache& cache, cplx lambda, const Target& target, int N) {
  cplx sum = 0.0;
  for (const auto& s : character_series(cache, lambda, target, N)) {
    const Jet1& D = s.determinant();
    if (!(std::abs(D.value) > 1e-300)) throw NumericalError("pole proximity: determinant vanishes at lambda");
    sum += D.d_beta / D.value;
  }
  return sum;
}

cplx direct_zeta_sum(const SchottkySurface& s, const SymmetryGroup& G, cplx lambda, const WeightSpec& weight,
                     const Target& target, int N) {
  if (lambda.real() < 2.0) throw ValidationError("direct_zeta_sum: needs Re lambda >= 2");
  if (N < 1) throw ValidationError("direct_zeta_sum: N must be >= 1");
  cplx sum = 0.0;
  for (int n = 1; n <= N; ++n) {
    for (const Word& w : enumerate_closed_words(s.rank(), n)) {
      WordGeometry geo = precompute_geometry(s, G, w, weight);
      double T = geo.length;
      double I = period_integral(geo, weight, target);
      // Over the primitive: I / (n / period); each class has period members.
      sum += std::exp(-lambda * T) / ((std::expm1(T)) * (-std::expm1(-T))) * I / static_cast<double>(n);
    }
  }
  return sum;
}

double circle_winding(const DetFn& det, cplx center, double radius, int Q) {
  cplx sum = 0.0;
  for (int k = 0; k < Q; ++k) {
    cplx e = std::polar(1.0, 2.0 * std::numbers::pi * k / Q);
    Jet1 D = det(center + radius * e);
    if (D.value == 0.0) throw NumericalError("circle_winding: zero on the contour");
    sum += D.d_lambda / D.value * e;
  }
  return (sum * (radius / Q)).real();
}

PoleInfo locate_pole(const GeodesicCache& cache, cplx lambda0, int N) {
  N = resolve_order(cache, N);
  PoleInfo info{lambda0, {}};
  auto series = character_series(cache, lambda0, std::monostate{}, N);
  for (size_t c = 0; c < series.size(); ++c) {
    const Jet1& D = series[c].determinant();
    if (!(std::abs(D.value) <= 1e-6 * std::abs(D.d_lambda))) continue;
    int chi = static_cast<int>(c);
    DetFn f = [&, chi](cplx l) { return determinant(cache, l, chi, std::monostate{}, N); };
    double w = circle_winding(f, lambda0, 1e-4, 32);
    if (std::abs(w - 1.0) > 0.1)
      throw NumericalError("pole not simple or not located: factor " + series[c].label + " has winding " +
                           std::to_string(w) + " near lambda0");
    info.characters.push_back(chi);
  }
  if (info.characters.empty()) throw NumericalError("pole not simple or not located: no factor vanishes at lambda0");
  return info;
}

cplx residue_simple(const GeodesicCache& cache, const PoleInfo& pole, const Target& target, int N) {
  N = resolve_order(cache, N);
  auto a = character_coefficients(cache, pole.lambda0, entry_integrals(cache, target), N);
  cplx res = 0.0;
  for (int chi : pole.characters) {
    const Jet1& D = bell_recursion(a[static_cast<size_t>(chi)]).determinant();
    if (std::abs(D.d_lambda) < 1e-10 * std::abs(D.d_beta))
      throw NumericalError("pole not simple or not located");
    res += D.d_beta / D.d_lambda;
  }
  return res;
}

cplx residue_simple(const GeodesicCache& cache, cplx lambda0, const Target& target, int N) {
  return residue_simple(cache, locate_pole(cache, lambda0, N), target, N);
}

cplx residue_contour(const ZetaFn& zeta_fn, const DetFn& det, cplx lambda0, double radius, int Q) {
  if (Q < 64) throw ValidationError("residue_contour: needs at least 64 quadrature points");
  double w = circle_winding(det, lambda0, radius, Q);
  if (std::abs(w - 1.0) > 0.1 || std::lround(w) != 1)
    throw NumericalError("residue_contour: contour encloses " + std::to_string(w) + " zeros, expected 1");
  cplx sum = 0.0;
  for (int k = 0; k < Q; ++k) {
    cplx e = std::polar(1.0, 2.0 * std::numbers::pi * k / Q);
    sum += zeta_fn(lambda0 + radius * e) * e;
  }
  return sum * (radius / Q);
}

double relative_error(const CoefficientSeries& series, int n, JetComponent component) {
  if (n < 1 || n >= static_cast<int>(series.d.size())) throw ValidationError("relative_error: n out of range");
  auto pick = [&](const Jet1& j) {
    switch (component) {
      case JetComponent::value: return j.value;
      case JetComponent::d_lambda: return j.d_lambda;
      case JetComponent::d_beta: return j.d_beta;
    }
    return j.value;
  };
  double num = std::abs(pick(series.d[static_cast<size_t>(n)]));
  if (num == 0.0) return 0.0;
  return num / std::abs(pick(series.partial[static_cast<size_t>(n)]));
}

}  // namespace ruelle
