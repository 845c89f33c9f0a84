#include "ruelle/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ruelle/errors.hpp"

namespace ruelle {

std::string describe(const SurfaceParams& p) {
  std::ostringstream os;
  os.precision(17);
  switch (p.family) {
    case SurfaceFamily::three_funnel:
      os << "X(" << p.l1 << "," << p.l2 << "," << p.l3 << ")";
      break;
    case SurfaceFamily::funneled_torus:
      os << "Y(" << p.l1 << "," << p.l2 << "," << p.phi << ")";
      break;
    case SurfaceFamily::custom:
      os << "custom";
      break;
  }
  return os.str();
}

std::vector<Disc> isometric_discs(const std::vector<MoebiusMap>& gens) {
  std::vector<Disc> discs;
  discs.reserve(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    MoebiusMap g = gens[i].normalize();
    if (g.c() == 0.0)
      throw ValidationError("generator " + std::to_string(i + 1) +
                            " fixes infinity (c = 0): its disc would be a half-plane; "
                            "conjugate the group first");
    discs.push_back({-g.d() / g.c(), 1.0 / std::abs(g.c())});
  }
  return discs;
}

std::vector<Disc> isometric_discs(const SchottkySurface& s) { return isometric_discs(s.generators()); }

SchottkySurface SchottkySurface::from_generators(const std::vector<MoebiusMap>& gens,
                                                 SurfaceParams params) {
  if (gens.empty()) throw ValidationError("Schottky surface needs at least one generator");
  SchottkySurface s;
  s.rank_ = static_cast<int>(gens.size());
  s.params_ = params;
  for (const auto& g : gens) {
    MoebiusMap n = g.normalize();
    if (n.det() < 0 || classify(n) != MapClass::hyperbolic)
      throw ValidationError("invalid Schottky data: generator is not hyperbolic");
    s.gens_.push_back(n);
  }
  for (int i = 0; i < s.rank_; ++i) s.gens_.push_back(s.gens_[static_cast<size_t>(i)].inverse());

  s.discs_ = isometric_discs(s.gens_);
  const int L = s.letters();
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      const Disc& p = s.discs_[static_cast<size_t>(i)];
      const Disc& q = s.discs_[static_cast<size_t>(j)];
      if (!(std::abs(p.center - q.center) > p.radius + q.radius))
        throw ValidationError("invalid Schottky data: closures of discs D" + std::to_string(i + 1) +
                              " and D" + std::to_string(j + 1) + " intersect");
    }
  }
  // g_i maps the boundary of D_i onto the boundary of D_{i+r}.
  for (int i = 0; i < L; ++i) {
    const Disc& src = s.discs_[static_cast<size_t>(i)];
    const Disc& dst = s.discs_[static_cast<size_t>(s.inverse_letter(i))];
    for (int k = 0; k < 16; ++k) {
      double t = 2.0 * std::numbers::pi * (k + 0.5) / 16.0;
      cplx z = src.center + src.radius * std::polar(1.0, t);
      cplx w = s.gens_[static_cast<size_t>(i)].apply(z);
      if (std::abs(std::abs(w - dst.center) - dst.radius) > 1e-8)
        throw ValidationError("invalid Schottky data: g" + std::to_string(i + 1) +
                              " does not map the boundary of its disc onto the paired disc");
    }
  }
  return s;
}

int SchottkySurface::interval_of(double x) const {
  for (int i = 0; i < letters(); ++i)
    if (interval(i).contains(x)) return i;
  return -1;
}

int SchottkySurface::interval_of(BoundaryPoint x) const {
  return x.infinite ? -1 : interval_of(x.value);
}

int SchottkySurface::disc_of(cplx z) const {
  for (int i = 0; i < letters(); ++i)
    if (discs_[static_cast<size_t>(i)].contains(z)) return i;
  return -1;
}

double three_funnel_parameter(double l1, double l2, double l3) {
  double s1 = std::sinh(l1 / 2), s2 = std::sinh(l2 / 2);
  // a + 1/a = 2 + 2e with e written without cancellation.
  double e = (std::cosh((l1 - l2) / 2) + std::cosh(l3 / 2)) / (s1 * s2);
  if (!(e > 0.0) || !std::isfinite(e))
    throw ValidationError("three-funnel: no real a > 1 solves the trace condition");
  return 1.0 + e + std::sqrt(e * (2.0 + e));
}

SchottkySurface build_three_funnel(double l1, double l2, double l3) {
  if (!(l1 > 0 && l2 > 0 && l3 > 0))
    throw ValidationError("three-funnel: lengths must be positive");
  double a = three_funnel_parameter(l1, l2, l3);
  // g1 = [[ch1, sh1], [sh1, ch1]] and g2 = [[ch2, a sh2], [sh2 / a, ch2]], assembled
  // from their fixed points +-1 and +-a (see build_funneled_torus).
  MoebiusMap P1(1.0, -1.0, 1.0, 1.0), P2(a, -a, 1.0, 1.0);
  MoebiusMap g1 = P1 * MoebiusMap(std::exp(l1 / 2), 0.0, 0.0, std::exp(-l1 / 2)) * P1.inverse();
  MoebiusMap g2 = P2 * MoebiusMap(std::exp(l2 / 2), 0.0, 0.0, std::exp(-l2 / 2)) * P2.inverse();
  double tr = (g1 * g2.inverse()).trace();
  double want = -2.0 * std::cosh(l3 / 2);
  if (std::abs(tr - want) > 1e-9 * std::abs(want))
    throw ValidationError("three-funnel: trace condition tr(g1 g2^-1) = -2cosh(l3/2) violated");
  SurfaceParams p{SurfaceFamily::three_funnel, l1, l2, l3, 0.0, a};
  return SchottkySurface::from_generators({g1, g2}, p);
}

SchottkySurface build_funneled_torus(double l1, double l2, double phi) {
  if (!(l1 > 0 && l2 > 0)) throw ValidationError("funneled torus: lengths must be positive");
  if (!(phi > 0 && phi < std::numbers::pi))
    throw ValidationError("funneled torus: phi must lie in (0, pi)");
  double cp = std::cos(phi);
  MoebiusMap g1(std::exp(l1 / 2), 0.0, 0.0, std::exp(-l1 / 2));
  // g2 = [[ch - cos(phi) sh, sin^2(phi) sh], [sh, ch + cos(phi) sh]] (half lengths),
  // built from its fixed points 1 - cos(phi) and -(1 + cos(phi)) so that the
  // determinant is never recovered from a cancelling ch^2 - sh^2.
  MoebiusMap P(1.0 - cp, -(1.0 + cp), 1.0, 1.0);
  MoebiusMap g2 = P * MoebiusMap(std::exp(l2 / 2), 0.0, 0.0, std::exp(-l2 / 2)) * P.inverse();
  double t = std::numbers::pi / 8;
  MoebiusMap k(std::cos(t), std::sin(t), -std::sin(t), std::cos(t));
  MoebiusMap ki = k.inverse();
  SurfaceParams p{SurfaceFamily::funneled_torus, l1, l2, 0.0, phi, 0.0};
  return SchottkySurface::from_generators({ki * g1 * k, ki * g2 * k}, p);
}

std::string to_string(const Word& w) {
  std::string out = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(w[i] + 1);
  }
  return out + ")";
}

bool is_reduced(const Word& w, int rank) {
  for (size_t j = 0; j + 1 < w.size(); ++j)
    if (w[j] == (w[j + 1] + rank) % (2 * rank)) return false;
  return true;
}

bool is_closed(const Word& w, int rank) {
  if (w.size() == 0 || !is_reduced(w, rank)) return false;
  return w[w.size() - 1] != (w[0] + rank) % (2 * rank);
}

MoebiusMap word_to_map(const SchottkySurface& s, const Word& w) {
  if (!is_reduced(w, s.rank())) throw ValidationError("word_to_map: word " + to_string(w) + " is not reduced");
  MoebiusMap m;
  for (int letter : w.letters) {
    if (letter < 0 || letter >= s.letters()) throw ValidationError("word_to_map: letter out of range");
    m = s.generator(letter) * m;
  }
  return m;
}

Word rotate(const Word& w, size_t j) {
  Word r;
  size_t n = w.size();
  r.letters.resize(n);
  for (size_t i = 0; i < n; ++i) r.letters[i] = w.letters[(i + j) % n];
  return r;
}

Word concat_power(const Word& w, int k) {
  Word r;
  for (int i = 0; i < k; ++i) r.letters.insert(r.letters.end(), w.letters.begin(), w.letters.end());
  return r;
}

int cyclic_period(const Word& w) {
  size_t n = w.size();
  for (size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool same = true;
    for (size_t i = 0; i < n && same; ++i) same = w.letters[i] == w.letters[(i + p) % n];
    if (same) return static_cast<int>(p);
  }
  return static_cast<int>(n);
}

Word minimal_rotation(const Word& w) {
  Word best = w;
  for (size_t j = 1; j < w.size(); ++j) best = std::min(best, rotate(w, j));
  return best;
}

long long closed_word_count(int rank, int n) {
  const int L = 2 * rank;
  using Mat = std::vector<std::vector<long long>>;
  Mat A(L, std::vector<long long>(L, 1)), P(L, std::vector<long long>(L, 0));
  for (int i = 0; i < L; ++i) {
    A[i][(i + rank) % L] = 0;
    P[i][i] = 1;
  }
  for (int step = 0; step < n; ++step) {
    Mat Q(L, std::vector<long long>(L, 0));
    for (int i = 0; i < L; ++i)
      for (int k = 0; k < L; ++k)
        for (int j = 0; j < L; ++j) Q[i][j] += P[i][k] * A[k][j];
    P = Q;
  }
  long long tr = 0;
  for (int i = 0; i < L; ++i) tr += P[i][i];
  return tr;
}

std::vector<Word> enumerate_closed_words(int rank, int n) {
  std::vector<Word> out;
  if (n < 1) throw ValidationError("enumerate_closed_words: n must be >= 1");
  const int L = 2 * rank;
  Word w;
  w.letters.assign(static_cast<size_t>(n), 0);
  // Depth-first, so output is lexicographic.
  auto rec = [&](auto&& self, size_t pos) -> void {
    if (pos == static_cast<size_t>(n)) {
      if (w.letters.back() != (w.letters.front() + rank) % L) out.push_back(w);
      return;
    }
    for (int c = 0; c < L; ++c) {
      if (pos > 0 && w.letters[pos - 1] == (c + rank) % L) continue;
      w.letters[pos] = c;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<CyclicClass> cyclic_classes(int rank, int n) {
  std::vector<CyclicClass> out;
  for (const Word& w : enumerate_closed_words(rank, n)) {
    if (minimal_rotation(w) != w) continue;
    int p = cyclic_period(w);
    out.push_back({w, p, p, p == n});
  }
  return out;
}

GeodesicData geodesic_data(const SchottkySurface& s, const Word& w) {
  if (!is_closed(w, s.rank())) throw ValidationError("geodesic_data: word " + to_string(w) + " is not closed");
  GeodesicData g;
  g.word = w;
  g.element = word_to_map(s, w);
  if (classify(g.element) != MapClass::hyperbolic)
    throw NumericalError("geodesic_data: element of " + to_string(w) + " is not hyperbolic");
  g.length = displacement_length(g.element);
  g.fixed_points = fixed_points(g.element);
  g.cyclic_points.reserve(w.size());
  g.cyclic_points.push_back(g.fixed_points);
  for (size_t j = 1; j < w.size(); ++j) g.cyclic_points.push_back(fixed_points(word_to_map(s, rotate(w, j))));
  g.period = cyclic_period(w);
  g.primitive = g.period == static_cast<int>(w.size());
  return g;
}

}  // namespace ruelle
