#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "ruelle/errors.hpp"
#include "ruelle/symmetry.hpp"

using namespace ruelle;

namespace {

Word W(std::initializer_list<int> one_based) {
  Word w;
  for (int k : one_based) w.letters.push_back(k - 1);
  return w;
}

std::vector<int> action_1based(const SymmetryGroup& G, int g) {
  std::vector<int> out;
  for (int i = 0; i < 4; ++i) out.push_back(G.act(g, i) + 1);
  return out;
}

SchottkySurface X() { return build_three_funnel(12, 12, 12); }
SchottkySurface Y() { return build_funneled_torus(10, 10, std::numbers::pi / 2); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_SUITE("symmetry") {
  TEST_CASE("three-funnel letter action") {
    SchottkySurface s = X();
    SymmetryGroup G = klein_four_three_funnel(s);
    REQUIRE(G.size() == 4);
    CHECK(action_1based(G, 1) == std::vector<int>{3, 4, 1, 2});
    CHECK(action_1based(G, 2) == std::vector<int>{2, 1, 4, 3});
    CHECK(G.relation_error() <= 1e-8);
    CHECK(symmetry_relation_error(s, G, 8) <= 1e-8);
    CHECK(G.permutes_discs());
  }

  TEST_CASE("unequal lengths keep only the reflection") {
    SchottkySurface s = build_three_funnel(12, 11, 10);
    SymmetryGroup G = full_symmetry(s);
    CHECK(G.size() == 2);
    CHECK(action_1based(G, 1) == std::vector<int>{3, 4, 1, 2});
    check_character_table(G);
  }

  TEST_CASE("torus group") {
    SchottkySurface s = Y();
    SymmetryGroup G = klein_four_torus(s);
    CHECK(action_1based(G, 1) == std::vector<int>{3, 4, 1, 2});
    CHECK(action_1based(G, 2) == std::vector<int>{2, 1, 4, 3});
    CHECK(symmetry_relation_error(s, G, 8) <= 1e-8);
    // z -> 1/z conjugates the first generator to the second.
    const MoebiusMap& swap = G.element(2).map;
    CHECK(projective_distance(swap * s.generator(0) * swap.inverse(), s.generator(1)) < 1e-10);
    for (int g = 1; g < 4; ++g) {
      CHECK(G.element(g).order == 2);
      CHECK(G.mul(g, g) == 0);
    }
    CHECK_THROWS_AS(klein_four_torus(build_funneled_torus(10, 10, 1.2)), ValidationError);
    CHECK(full_symmetry(build_funneled_torus(10, 11, std::numbers::pi / 2)).size() == 1);
  }

  TEST_CASE("character table") {
    SymmetryGroup G = klein_four_three_funnel(X());
    const std::vector<std::vector<double>> table{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
    const char* labels[] = {"A", "B", "C", "D"};
    REQUIRE(G.characters().size() == 4);
    for (int c = 0; c < 4; ++c) {
      const Character& ch = G.characters()[static_cast<size_t>(G.character_index(labels[c]))];
      CHECK(ch.dim == 1);
      for (int g = 0; g < 4; ++g) CHECK(ch.values[static_cast<size_t>(g)] == cplx(table[c][g]));
    }
    CHECK(G.element(3).name == "s1s2");
    CHECK(G.mul(1, 2) == 3);
    check_character_table(G);
    CHECK_THROWS_AS(G.character_index("E"), ValidationError);
  }

  TEST_CASE("trivial group") {
    SymmetryGroup G = trivial_group();
    CHECK(G.size() == 1);
    CHECK(G.characters().size() == 1);
    for (int n = 1; n <= 4; ++n) {
      auto tw = enumerate_twisted_closed(2, G, n, 0);
      auto plain = enumerate_closed_words(2, n);
      REQUIRE(tw.size() == plain.size());
      for (size_t i = 0; i < tw.size(); ++i) CHECK(tw[i].word == plain[i]);
    }
    auto reps = orbit_representatives(2, G, 2);
    int one = 0, two = 0;
    for (const auto& r : reps) (r.n_w == 1 ? one : two)++;
    CHECK(one == 4);
    CHECK(two == 4);
  }

  TEST_CASE("one-letter twisted words") {
    SymmetryGroup G = klein_four_three_funnel(X());
    CHECK(enumerate_twisted_closed(2, G, 1, 1).empty());
    CHECK(enumerate_twisted_closed(2, G, 1, 2).size() == 4);
  }

  TEST_CASE("twisted iteration") {
    SymmetryGroup G = klein_four_torus(Y());
    TwistedWord tw{W({1}), 2};
    CHECK(word_iterate(G, tw, 1) == W({1}));
    CHECK(word_iterate(G, tw, 2) == W({2, 1}));
    CHECK(is_closed(word_iterate(G, tw, 2), 2));
    CHECK(word_iterate(G, {W({1, 2}), 0}, 3) == W({1, 2, 1, 2, 1, 2}));
  }

  TEST_CASE("shifts are inverse to each other") {
    SymmetryGroup G = klein_four_three_funnel(X());
    for (int g = 0; g < 4; ++g)
      for (int n = 1; n <= 3; ++n)
        for (const auto& tw : enumerate_twisted_closed(2, G, n, g)) {
          CHECK(shift_left(G, shift_right(G, tw)) == tw);
          CHECK(shift_right(G, shift_left(G, tw)) == tw);
        }
  }

  TEST_CASE("property: orbits agree with brute-force closure") {
    for (const SchottkySurface& s : {X(), Y()}) {
      SymmetryGroup G = full_symmetry(s);
      std::vector<std::vector<int>> act(4, std::vector<int>(4)), mul(4, std::vector<int>(4));
      for (int g = 0; g < 4; ++g)
        for (int i = 0; i < 4; ++i) {
          act[g][i] = G.act(g, i);
          mul[g][i] = G.mul(g, i);
        }
      const int N = 5;
      oracle::OrbitCount brute = oracle::brute_orbits(2, act, mul, N);
      auto reps = orbit_representatives(s, G, N);
      std::map<int, int> by_length;
      std::set<oracle::Twisted> got;
      for (const auto& r : reps) {
        by_length[r.n_w]++;
        got.insert({r.rep.word.letters, r.rep.twist});
        CHECK(r.orbit_size == G.size() * r.n_w);
        CHECK(G.size() % r.m_w == 0);
        CHECK(r.m_w == G.element(r.rep.twist).order);
        CHECK(r.iterate.size() == static_cast<size_t>(r.n_w * r.m_w));
        CHECK(is_closed(r.iterate, 2));
        CHECK(is_prime(G, r.rep));
      }
      CHECK(by_length == brute.prime_orbits_by_length);
      CHECK(got == brute.representatives);
    }
  }

  TEST_CASE("property: group action preserves orbit invariants") {
    SymmetryGroup G = klein_four_three_funnel(X());
    auto reps = orbit_representatives(2, G, 4);
    for (const auto& r : reps)
      for (int h = 0; h < 4; ++h) {
        TwistedWord t = act(G, h, r.rep);
        CHECK(t.word.size() == r.rep.word.size());
        CHECK(G.element(t.twist).order == r.m_w);
        CHECK(is_twisted_closed(G, t, 2));
      }
  }

  TEST_CASE("property: representatives are stable under extension") {
    SymmetryGroup G = klein_four_three_funnel(X());
    auto small = orbit_representatives(2, G, 4);
    auto big = orbit_representatives(2, G, 5);
    REQUIRE(big.size() > small.size());
    for (size_t i = 0; i < small.size(); ++i) {
      CHECK(small[i].rep == big[i].rep);
      CHECK(small[i].m_w == big[i].m_w);
    }
  }

  TEST_CASE("property: twisted fixed points and the power identity") {
    for (const SchottkySurface& s : {X(), Y()}) {
      SymmetryGroup G = full_symmetry(s);
      for (const auto& r : orbit_representatives(s, G, 4)) {
        FixedPointPair fp = twisted_fixed_points(s, G, r.rep);
        MoebiusMap twisted = word_to_map(s, r.rep.word) * G.element(r.rep.twist).map;
        MoebiusMap iterate = word_to_map(s, r.iterate);
        // At the repelling point the inverse maps are contracting, which keeps
        // the derivative evaluation well conditioned.
        REQUIRE_FALSE(fp.attracting.infinite);
        REQUIRE_FALSE(fp.repelling.infinite);
        CHECK(rel(std::pow(std::abs(derivative(twisted, fp.attracting.value).real()), r.m_w),
                  std::abs(derivative(iterate, fp.attracting.value).real())) <= 1e-9);
        CHECK(rel(std::pow(std::abs(derivative(twisted.inverse(), fp.repelling.value).real()), r.m_w),
                  std::abs(derivative(iterate.inverse(), fp.repelling.value).real())) <= 1e-9);
        int first = r.rep.word.letters.front(), last = r.rep.word.letters.back();
        CHECK(s.interval(s.inverse_letter(last)).contains(fp.attracting.value));
        CHECK(s.interval(G.act(G.inverse(r.rep.twist), first)).contains(fp.repelling.value));
      }
    }
  }

  TEST_CASE("identity twist reproduces geodesic fixed points") {
    SchottkySurface s = X();
    SymmetryGroup G = klein_four_three_funnel(s);
    for (const Word& w : enumerate_closed_words(s, 3)) {
      FixedPointPair a = twisted_fixed_points(s, G, {w, 0});
      FixedPointPair b = geodesic_data(s, w).fixed_points;
      CHECK(std::abs(a.attracting.value - b.attracting.value) < 1e-12);
      CHECK(std::abs(a.repelling.value - b.repelling.value) < 1e-12);
    }
    CHECK_THROWS_AS(twisted_fixed_points(s, G, {W({1}), 1}), ValidationError);
  }
}
