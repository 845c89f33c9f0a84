#include "ruelle/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "ruelle/errors.hpp"

namespace ruelle {

namespace {

// Index k with g(D_i) = D_k, checked on boundary samples; -1 if the image is no disc.
int image_disc(const SchottkySurface& s, const MoebiusMap& g, int i) {
  const Disc& src = s.discs()[static_cast<size_t>(i)];
  cplx img = g.apply(cplx(src.center, 0.5 * src.radius));
  int k = s.disc_of(img);
  if (k < 0) return -1;
  const Disc& dst = s.discs()[static_cast<size_t>(k)];
  for (int t = 0; t < 8; ++t) {
    cplx z = src.center + src.radius * std::polar(1.0, 2.0 * std::numbers::pi * (t + 0.25) / 8.0);
    if (std::abs(std::abs(g.apply(z) - dst.center) - dst.radius) > 1e-8) return -1;
  }
  return k;
}

// Index k with g g_j g^{-1} = ±g_k, or -1.
int conjugate_letter(const SchottkySurface& s, const MoebiusMap& g, int j) {
  MoebiusMap m = g * s.generator(j) * g.inverse();
  for (int k = 0; k < s.letters(); ++k)
    if (projective_distance(m, s.generator(k)) <= 1e-9 * std::max(1.0, s.generator(k).max_abs_entry())) return k;
  return -1;
}

std::vector<Character> klein_characters() {
  return {{"A", 1, {1.0, 1.0, 1.0, 1.0}},
          {"B", 1, {1.0, -1.0, 1.0, -1.0}},
          {"C", 1, {1.0, 1.0, -1.0, -1.0}},
          {"D", 1, {1.0, -1.0, -1.0, 1.0}}};
}

}  // namespace

SymmetryGroup SymmetryGroup::from_maps(const SchottkySurface& s, const std::string& name,
                                       const std::vector<std::string>& names,
                                       const std::vector<MoebiusMap>& maps,
                                       const std::vector<Character>& characters) {
  if (maps.empty() || maps.size() != names.size())
    throw ValidationError("symmetry group: element names and maps do not match");
  if (projective_distance(maps[0], MoebiusMap::identity()) > 1e-12)
    throw ValidationError("symmetry group: first element must be the identity");

  SymmetryGroup G;
  G.name_ = name;
  const int L = s.letters();
  for (size_t e = 0; e < maps.size(); ++e) {
    GroupElement el{names[e], maps[e].normalize(), std::vector<int>(static_cast<size_t>(L)), 1};
    std::vector<bool> hit(static_cast<size_t>(L), false);
    for (int i = 0; i < L; ++i) {
      int k = conjugate_letter(s, el.map, i);
      if (k < 0 || hit[static_cast<size_t>(k)])
        throw ValidationError("symmetry group: " + el.name + " does not normalize the generating set");
      hit[static_cast<size_t>(k)] = true;
      el.perm[static_cast<size_t>(i)] = k;
      if (image_disc(s, el.map, i) != k) G.permutes_discs_ = false;
    }
    for (size_t f = 0; f < e; ++f)
      if (G.elements_[f].perm == el.perm)
        throw ValidationError("symmetry group: letter action is not faithful");
    G.elements_.push_back(el);
  }

  const size_t n = G.elements_.size();
  G.table_.assign(n, std::vector<int>(n, -1));
  for (size_t g = 0; g < n; ++g) {
    for (size_t h = 0; h < n; ++h) {
      std::vector<int> comp(static_cast<size_t>(L));
      for (int j = 0; j < L; ++j)
        comp[static_cast<size_t>(j)] =
            G.elements_[g].perm[static_cast<size_t>(G.elements_[h].perm[static_cast<size_t>(j)])];
      for (size_t k = 0; k < n; ++k) {
        if (G.elements_[k].perm != comp) continue;
        if (projective_distance(G.elements_[g].map * G.elements_[h].map, G.elements_[k].map) > 1e-10)
          throw ValidationError("symmetry group: maps do not compose like their letter actions");
        G.table_[g][h] = static_cast<int>(k);
      }
      if (G.table_[g][h] < 0) throw ValidationError("symmetry group: not closed under composition");
    }
  }
  for (size_t g = 0; g < n; ++g) {
    int x = static_cast<int>(g), k = 1;
    while (x != 0) {
      x = G.mul(x, static_cast<int>(g));
      ++k;
    }
    G.elements_[g].order = k;
  }

  // Letter action must commute with inversion i -> i + r.
  for (size_t g = 0; g < n; ++g)
    for (int i = 0; i < L; ++i)
      if (G.act(static_cast<int>(g), s.inverse_letter(i)) != s.inverse_letter(G.act(static_cast<int>(g), i)))
        throw ValidationError("symmetry group: letter action does not respect inverse pairs");

  G.relation_error_ = symmetry_relation_error(s, G);
  if (G.relation_error_ > 1e-8)
    throw ValidationError("symmetry group: relation g(g_j z) = g_{g.j}(g z) fails");
  G.characters_ = characters;
  check_character_table(G);
  return G;
}

int SymmetryGroup::inverse(int g) const {
  for (int h = 0; h < size(); ++h)
    if (mul(g, h) == 0) return h;
  throw ValidationError("symmetry group: element without inverse");
}

int SymmetryGroup::power(int g, int k) const {
  int x = 0;
  int m = element(g).order;
  k %= m;
  if (k < 0) k += m;
  for (int i = 0; i < k; ++i) x = mul(x, g);
  return x;
}

int SymmetryGroup::act(int g, int letter) const {
  const auto& perm = element(g).perm;
  return perm.empty() ? letter : perm[static_cast<size_t>(letter)];
}

Word SymmetryGroup::act(int g, const Word& w) const {
  Word r = w;
  for (auto& l : r.letters) l = act(g, l);
  return r;
}

int SymmetryGroup::character_index(const std::string& label) const {
  for (size_t i = 0; i < characters_.size(); ++i)
    if (characters_[i].label == label) return static_cast<int>(i);
  throw ValidationError("unknown character '" + label + "' for group " + name_);
}

SymmetryGroup trivial_group() {
  SymmetryGroup G;
  G.name_ = "trivial";
  G.elements_.push_back({"e", MoebiusMap::identity(), {}, 1});
  G.table_ = {{0}};
  G.characters_ = {{"triv", 1, {1.0}}};
  return G;
}

SymmetryGroup klein_four_three_funnel(const SchottkySurface& s) {
  const auto& p = s.params();
  if (p.family != SurfaceFamily::three_funnel)
    throw ValidationError("klein_four_three_funnel: surface is not a three-funnel surface");
  MoebiusMap e = MoebiusMap::identity();
  MoebiusMap s1(-1.0, 0.0, 0.0, 1.0);
  if (std::abs(p.l1 - p.l2) > 1e-12)
    return SymmetryGroup::from_maps(s, "Z2", {"e", "s1"}, {e, s1},
                                    {{"A", 1, {1.0, 1.0}}, {"B", 1, {1.0, -1.0}}});
  double ra = std::sqrt(p.a);
  MoebiusMap s2(0.0, ra, 1.0 / ra, 0.0);
  return SymmetryGroup::from_maps(s, "Klein4", {"e", "s1", "s2", "s1s2"}, {e, s1, s2, s1 * s2},
                                  klein_characters());
}

SymmetryGroup klein_four_torus(const SchottkySurface& s) {
  const auto& p = s.params();
  if (p.family != SurfaceFamily::funneled_torus || std::abs(p.l1 - p.l2) > 1e-12 ||
      std::abs(p.phi - std::numbers::pi / 2) > 1e-12)
    throw ValidationError("klein_four_torus: needs a funneled torus with l1 = l2 and phi = pi/2");
  MoebiusMap e = MoebiusMap::identity();
  // Ordered so the letter action matches the three-funnel one: s1 sends each
  // generator to its inverse, s2 swaps the two generators.
  MoebiusMap s1(0.0, 1.0, -1.0, 0.0);
  MoebiusMap s2(0.0, 1.0, 1.0, 0.0);
  return SymmetryGroup::from_maps(s, "Klein4", {"e", "s1", "s2", "s1s2"}, {e, s1, s2, s1 * s2},
                                  klein_characters());
}

bool has_nontrivial_symmetry(const SchottkySurface& s) {
  const auto& p = s.params();
  if (p.family == SurfaceFamily::three_funnel) return true;
  if (p.family == SurfaceFamily::funneled_torus)
    return std::abs(p.l1 - p.l2) <= 1e-12 && std::abs(p.phi - std::numbers::pi / 2) <= 1e-12;
  return false;
}

SymmetryGroup full_symmetry(const SchottkySurface& s) {
  if (!has_nontrivial_symmetry(s)) return trivial_group();
  if (s.params().family == SurfaceFamily::three_funnel) return klein_four_three_funnel(s);
  return klein_four_torus(s);
}

double symmetry_relation_error(const SchottkySurface& s, const SymmetryGroup& G, int samples_per_disc) {
  double worst = 0.0;
  const int L = s.letters();
  for (int g = 0; g < G.size(); ++g) {
    const MoebiusMap& m = G.element(g).map;
    for (int i = 0; i < L; ++i) {
      const Disc& D = s.discs()[static_cast<size_t>(i)];
      for (int t = 0; t < samples_per_disc; ++t) {
        double rho = 0.3 + 0.6 * ((t * 7) % samples_per_disc) / std::max(1, samples_per_disc - 1);
        cplx z = D.center + rho * D.radius * std::polar(1.0, 2.0 * std::numbers::pi * (t + 0.5) / samples_per_disc);
        for (int j = 0; j < L; ++j) {
          if (j == i) continue;
          cplx lhs = m.apply(s.generator(j).apply(z));
          cplx rhs = s.generator(G.act(g, j)).apply(m.apply(z));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
  }
  return worst;
}

void check_character_table(const SymmetryGroup& G) {
  const auto& chars = G.characters();
  const int n = G.size();
  int dim2 = 0;
  for (const auto& c : chars) {
    if (static_cast<int>(c.values.size()) != n)
      throw ValidationError("character " + c.label + " has the wrong number of values");
    if (std::abs(c.values[0] - cplx(c.dim)) > 1e-12)
      throw ValidationError("character " + c.label + ": value at identity differs from dimension");
    dim2 += c.dim * c.dim;
  }
  if (dim2 != n) throw ValidationError("character table: squared dimensions do not sum to |G|");
  for (size_t a = 0; a < chars.size(); ++a) {
    for (size_t b = 0; b < chars.size(); ++b) {
      cplx sum = 0.0;
      for (int g = 0; g < n; ++g) sum += chars[a].values[static_cast<size_t>(g)] * std::conj(chars[b].values[static_cast<size_t>(g)]);
      double want = a == b ? n : 0.0;
      if (std::abs(sum - want) > 1e-9) throw ValidationError("character table fails orthogonality");
    }
  }
}

bool is_twisted_closed(const SymmetryGroup& G, const TwistedWord& tw, int rank) {
  const Word& w = tw.word;
  if (w.size() == 0 || !is_reduced(w, rank)) return false;
  return G.act(tw.twist, w[w.size() - 1]) != (w[0] + rank) % (2 * rank);
}

std::vector<TwistedWord> enumerate_twisted_closed(int rank, const SymmetryGroup& G, int n, int g) {
  if (n < 1) throw ValidationError("enumerate_twisted_closed: n must be >= 1");
  const int L = 2 * rank;
  std::vector<TwistedWord> out;
  TwistedWord tw{Word{std::vector<int>(static_cast<size_t>(n), 0)}, g};
  auto rec = [&](auto&& self, size_t pos) -> void {
    auto& l = tw.word.letters;
    if (pos == l.size()) {
      if (G.act(g, l.back()) != (l.front() + rank) % L) out.push_back(tw);
      return;
    }
    for (int c = 0; c < L; ++c) {
      if (pos > 0 && l[pos - 1] == (c + rank) % L) continue;
      l[pos] = c;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

Word word_iterate(const SymmetryGroup& G, const TwistedWord& tw, int k) {
  if (k < 1) throw ValidationError("word_iterate: k must be >= 1");
  Word out;
  for (int b = k - 1; b >= 0; --b) {
    Word block = G.act(G.power(tw.twist, b), tw.word);
    out.letters.insert(out.letters.end(), block.letters.begin(), block.letters.end());
  }
  return out;
}

TwistedWord shift_right(const SymmetryGroup& G, const TwistedWord& tw) {
  TwistedWord r = tw;
  const auto& l = tw.word.letters;
  r.word.letters[0] = G.act(tw.twist, l.back());
  std::copy(l.begin(), l.end() - 1, r.word.letters.begin() + 1);
  return r;
}

TwistedWord shift_left(const SymmetryGroup& G, const TwistedWord& tw) {
  TwistedWord r = tw;
  const auto& l = tw.word.letters;
  std::copy(l.begin() + 1, l.end(), r.word.letters.begin());
  r.word.letters.back() = G.act(G.inverse(tw.twist), l.front());
  return r;
}

TwistedWord act(const SymmetryGroup& G, int h, const TwistedWord& tw) {
  return {G.act(h, tw.word), G.mul(G.mul(h, tw.twist), G.inverse(h))};
}

bool is_prime(const SymmetryGroup& G, const TwistedWord& tw) {
  const size_t n = tw.word.size();
  for (size_t k = 2; k <= n; ++k) {
    if (n % k) continue;
    TwistedWord u;
    u.word.letters.assign(tw.word.letters.end() - static_cast<long>(n / k), tw.word.letters.end());
    for (int h = 0; h < G.size(); ++h) {
      if (G.power(h, static_cast<int>(k)) != tw.twist) continue;
      u.twist = h;
      if (word_iterate(G, u, static_cast<int>(k)) == tw.word) return false;
    }
  }
  return true;
}

std::vector<OrbitRep> orbit_representatives(int rank, const SymmetryGroup& G, int N) {
  if (N < 1) throw ValidationError("orbit_representatives: N must be >= 1");
  std::vector<OrbitRep> out;
  for (int n = 1; n <= N; ++n) {
    std::set<TwistedWord> seen;
    std::vector<OrbitRep> level;
    for (int g = 0; g < G.size(); ++g) {
      for (const TwistedWord& start : enumerate_twisted_closed(rank, G, n, g)) {
        if (seen.count(start)) continue;
        std::vector<TwistedWord> stack{start};
        std::set<TwistedWord> orbit{start};
        while (!stack.empty()) {
          TwistedWord cur = stack.back();
          stack.pop_back();
          auto visit = [&](TwistedWord next) {
            if (orbit.insert(next).second) stack.push_back(std::move(next));
          };
          visit(shift_right(G, cur));
          for (int h = 1; h < G.size(); ++h) visit(act(G, h, cur));
        }
        seen.insert(orbit.begin(), orbit.end());
        const TwistedWord& rep = *orbit.begin();
        if (!is_prime(G, rep)) continue;
        int size = static_cast<int>(orbit.size());
        if (size != G.size() * n)
          throw ValidationError("non-free symmetry action: orbit of " + to_string(rep.word) + " has " +
                                std::to_string(size) + " elements, expected " +
                                std::to_string(G.size() * n));
        OrbitRep r;
        r.rep = rep;
        r.n_w = n;
        r.m_w = G.element(rep.twist).order;
        r.iterate = word_iterate(G, rep, r.m_w);
        r.orbit_size = size;
        if (!is_closed(r.iterate, rank))
          throw ValidationError("orbit_representatives: iterate of " + to_string(rep.word) + " is not closed");
        level.push_back(std::move(r));
      }
    }
    std::sort(level.begin(), level.end(), [](const OrbitRep& x, const OrbitRep& y) { return x.rep < y.rep; });
    for (auto& r : level) out.push_back(std::move(r));
  }
  return out;
}

FixedPointPair twisted_fixed_points(const SchottkySurface& s, const SymmetryGroup& G, const TwistedWord& tw) {
  if (!is_twisted_closed(G, tw, s.rank()))
    throw ValidationError("twisted_fixed_points: word is not twisted-closed");
  return fixed_points(word_to_map(s, tw.word) * G.element(tw.twist).map);
}

}  // namespace ruelle
