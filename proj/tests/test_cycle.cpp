#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ruelle/errors.hpp"
#include "ruelle/spectra.hpp"

using namespace ruelle;

namespace {

SchottkySurface X() { return build_three_funnel(12, 12, 12); }
SchottkySurface Y() { return build_funneled_torus(10, 10, std::numbers::pi / 2); }

std::vector<oracle::Mat> letter_matrices(const SchottkySurface& s) {
  std::vector<oracle::Mat> out;
  for (const MoebiusMap& g : s.generators()) out.push_back({g.a(), g.b(), g.c(), g.d()});
  return out;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

WeightSpec section_weight(double sigma, bool symmetrize) {
  WeightSpec w;
  w.kind = WeightKind::gauss_section;
  w.sigma = sigma;
  w.symmetrize = symmetrize;
  return w;
}

// Plain complex Bell recursion: the determinant from a_1..a_N.
cplx bell_value(const std::vector<cplx>& a) {
  std::vector<cplx> d{1.0};
  cplx D = 1.0;
  for (size_t n = 1; n <= a.size(); ++n) {
    cplx s = 0.0;
    for (size_t k = 1; k <= n; ++k) s += static_cast<double>(k) / n * d[n - k] * a[k - 1];
    d.push_back(s);
    D += s;
  }
  return D;
}

// a_k(lambda, beta) by enumerating every closed word, with the period
// integral of each word's own geodesic.
std::vector<cplx> brute_coefficients(const SchottkySurface& s, const WeightSpec& w, const Target& target,
                                     cplx lambda, double beta, int N) {
  std::vector<cplx> a;
  for (int k = 1; k <= N; ++k) {
    cplx sum = 0.0;
    for (const auto& letters : oracle::brute_closed_words(s.rank(), k)) {
      double l = oracle::length(oracle::word_matrix(letter_matrices(s), letters));
      double I = period_integral(precompute_geometry(s, trivial_group(), Word{letters}, w), w, target);
      sum += std::exp(-(lambda - 1.0) * l - beta * I) / std::pow(std::expm1(l), 2);
    }
    a.push_back(-sum / static_cast<double>(k));
  }
  return a;
}

cplx first_resonance(const GeodesicCache& cache) {
  return newton(character_det(cache, 0), cplx(-0.88, 0.0)).location;
}

}  // namespace

TEST_SUITE("cycle") {
  TEST_CASE("cache construction") {
    SchottkySurface s = X();
    GeodesicCache c = build_cache(s, trivial_group(), 2, WeightSpec{});
    CHECK(c.entries.size() == 8);
    CHECK_THROWS_AS(build_cache(s, trivial_group(), 0, WeightSpec{}), ValidationError);
    CHECK_THROWS_WITH_AS(build_cache(s, full_symmetry(s), 3, section_weight(0.1, false)),
                         doctest::Contains("symmetrized weights required"), ValidationError);
    GeodesicCache d = build_cache(s, full_symmetry(s), 4, section_weight(0.1, true));
    GeodesicCache e = build_cache(s, full_symmetry(s), 4, section_weight(0.1, true));
    REQUIRE(d.entries.size() == e.entries.size());
    for (size_t i = 0; i < d.entries.size(); ++i) {
      CHECK(d.entries[i].rep == e.entries[i].rep);
      CHECK(d.entries[i].T == e.entries[i].T);
      CHECK(d.entries[i].geometry.section_pairs.size() == e.entries[i].geometry.section_pairs.size());
    }
  }

  TEST_CASE("first coefficient closed form") {
    GeodesicCache c = build_cache(X(), trivial_group(), 2, WeightSpec{});
    Jet1 a1 = coeff_a(c, 1, 1.0, {});
    double want = -4.0 / std::pow(std::expm1(12.0), 2);
    CHECK(std::abs(a1.value - want) < 1e-12 * std::abs(want));
    CHECK(std::abs(want + 1.510e-10) < 1e-13);
    CHECK(std::abs(a1.d_beta - (-12.0 * want)) < 1e-10 * std::abs(want) * 12);
    CHECK_THROWS_AS(coeff_a(c, 3, 1.0, {}), ValidationError);
  }

  TEST_CASE("the two exponent forms agree") {
    for (double l : {0.5, 3.0, 12.0, 40.0}) {
      cplx lambda(-0.7, 3.0);
      cplx a = std::exp(-(lambda - 1.0) * l) / std::pow(std::expm1(l), 2);
      cplx b = std::exp(-lambda * l) / (std::expm1(l) * -std::expm1(-l));
      CHECK(rel(a, b) < 1e-13);
    }
  }

  TEST_CASE("property: coefficients against full word enumeration") {
    for (const SchottkySurface& s : {X(), Y()}) {
      GeodesicCache triv = build_cache(s, trivial_group(), 6, WeightSpec{});
      GeodesicCache sym = build_cache(s, full_symmetry(s), 6, WeightSpec{});
      for (cplx lambda : {cplx(0.3, 2.0), cplx(-0.9, 9.0)}) {
        for (int k = 1; k <= 6; ++k) {
          oracle::AkValue b = oracle::brute_ak(letter_matrices(s), 2, k, lambda);
          Jet1 t = coeff_a(triv, k, lambda, {});
          // Word lengths reach ~70 at k = 6; the two summation orders agree to ~5e-13.
          CHECK(rel(t.value, b.value) <= 2e-12);
          CHECK(rel(t.d_lambda, b.d_lambda) <= 2e-12);
          CHECK(rel(t.d_beta, b.d_beta) <= 2e-12);
          Jet1 u = coeff_a(sym, k, lambda, {});
          CHECK(rel(u.value, b.value) <= 1e-12);
          CHECK(rel(coeff_a_chi(triv, k, lambda, 0, {}).value, t.value) <= 1e-14);
        }
      }
    }
  }

  TEST_CASE("character collapse on the torus") {
    SchottkySurface s = Y();
    GeodesicCache sym = build_cache(s, full_symmetry(s), 5, WeightSpec{});
    GeodesicCache triv = build_cache(s, trivial_group(), 5, WeightSpec{});
    cplx lambda(0.5, 1.5);
    for (int m = 1; m <= 5; ++m) {
      Jet1 sum;
      for (int chi = 0; chi < sym.character_count(); ++chi) sum += coeff_a_chi(sym, m, lambda, chi, {});
      CHECK(rel(sum.value, coeff_a(triv, m, lambda, {}).value) <= 1e-12);
    }
  }

  TEST_CASE("character B flips reflected contributions") {
    SchottkySurface s = X();
    GeodesicCache c = build_cache(s, full_symmetry(s), 3, WeightSpec{});
    // Keep only the reflection-twisted orbits of length 3, so that only the k = 1
    // terms reach a_3.
    std::vector<CacheEntry> kept;
    for (const auto& e : c.entries)
      if (e.n_w == 3 && e.rep.twist == 1) kept.push_back(e);
    REQUIRE_FALSE(kept.empty());
    c.entries = kept;
    int A = c.group.character_index("A"), B = c.group.character_index("B"), C = c.group.character_index("C");
    cplx lambda(0.2, 1.0);
    cplx a = coeff_a_chi(c, 3, lambda, A, {}).value;
    CHECK(std::abs(a) > 0.0);
    CHECK(coeff_a_chi(c, 3, lambda, B, {}).value == -a);
    CHECK(coeff_a_chi(c, 3, lambda, C, {}).value == a);
  }

  TEST_CASE("Bell recursion examples") {
    CoefficientSeries zero = bell_recursion(std::vector<Jet1>(5));
    CHECK(zero.determinant().value == cplx(1.0));
    for (size_t n = 1; n <= 5; ++n) CHECK(zero.d[n].value == cplx(0.0));
    CHECK(relative_error(zero, 3) == 0.0);
    cplx a(0.3, -0.2);
    std::vector<Jet1> one(6);
    one[0] = {a, cplx(1.5), 0.0};
    CoefficientSeries s = bell_recursion(one);
    double fact = 1.0;
    for (int n = 1; n <= 6; ++n) {
      fact *= n;
      CHECK(std::abs(s.d[static_cast<size_t>(n)].value - std::pow(a, n) / fact) < 1e-15);
      CHECK(s.d[static_cast<size_t>(n)].d_beta == cplx(0.0));
    }
    CHECK(s.d[0].value == cplx(1.0));
    CHECK(s.d[0].d_lambda == cplx(0.0));
  }

  TEST_CASE("determinant against exp of the coefficient sum") {
    GeodesicCache c = build_cache(X(), trivial_group(), 8, WeightSpec{});
    CoefficientSeries s = coefficient_series(c, 3.0, 0, {});
    cplx sum = 0.0;
    for (const auto& a : s.a) sum += a.value;
    CHECK(std::abs(s.determinant().value - std::exp(sum)) <= 1e-10);
  }

  TEST_CASE("property: factorization over characters") {
    SchottkySurface s = Y();
    GeodesicCache sym = build_cache(s, full_symmetry(s), 8, WeightSpec{});
    GeodesicCache triv = build_cache(s, trivial_group(), 8, WeightSpec{});
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> re(-1.0, 2.0), im(0.0, 20.0);
    std::vector<cplx> points{cplx(2, 1), cplx(1.5, 4)};
    for (int i = 0; i < 5; ++i) points.emplace_back(re(rng), im(rng));
    for (cplx lambda : points) {
      cplx prod = full_determinant(sym, lambda, {}).value;
      cplx plain = determinant(triv, lambda, 0, {}).value;
      CHECK(std::abs(prod - plain) <= 1e-8 * std::abs(plain));
    }
  }

  TEST_CASE("zeta against the direct sum") {
    for (const SchottkySurface& s : {X(), Y()}) {
      GeodesicCache c = build_cache(s, trivial_group(), 8, WeightSpec{});
      for (cplx lambda : {cplx(3.0, 0.0), cplx(3.0, 5.0)}) {
        cplx direct = direct_zeta_sum(s, trivial_group(), lambda, WeightSpec{}, {}, 8);
        CHECK(rel(zeta(c, lambda, {}), direct) <= 1e-8);
      }
    }
    SchottkySurface s = Y();
    CHECK_THROWS_AS(direct_zeta_sum(s, trivial_group(), 1.5, WeightSpec{}, {}, 4), ValidationError);
    cplx z6 = direct_zeta_sum(s, trivial_group(), 3.0, WeightSpec{}, {}, 6);
    cplx z8 = direct_zeta_sum(s, trivial_group(), 3.0, WeightSpec{}, {}, 8);
    CHECK(std::abs(z8 - z6) / std::abs(z6) < std::exp(-2.0 * 10.0 * 7));
  }

  TEST_CASE("symmetry-mode and trivial-mode zeta agree") {
    SchottkySurface s = Y();
    WeightSpec w = section_weight(0.05, true);
    SectionTarget t{BoundaryPoint::finite(-1.3), BoundaryPoint::finite(0.4)};
    GeodesicCache sym = build_cache(s, full_symmetry(s), 8, w);
    GeodesicCache triv = build_cache(s, trivial_group(), 8, w);
    // Cross-mode agreement holds for G-invariant integrals; the symmetrized weight
    // is invariant by construction, the plain one only up to the G-average.
    cplx zs = zeta(sym, cplx(2, 1), t);
    cplx zt = 0.0;
    WeightSpec plain = w;
    plain.symmetrize = false;
    GeodesicCache tp = build_cache(s, trivial_group(), 8, plain);
    const SymmetryGroup& G = sym.group;
    for (int g = 0; g < G.size(); ++g) {
      const MoebiusMap& m = G.element(g).map;
      SectionTarget tg{m.apply(t.x_minus), m.apply(t.x_plus)};
      zt += zeta(tp, cplx(2, 1), tg) / static_cast<double>(G.size());
    }
    CHECK(rel(zs, zt) <= 1e-7);
    CHECK(rel(zs, zeta(triv, cplx(2, 1), t)) <= 1e-7);
  }

  TEST_CASE("zero weight and weight linearity") {
    SchottkySurface s = Y();
    WeightSpec w = section_weight(0.05, false);
    SectionTarget t{BoundaryPoint::finite(-1.3), BoundaryPoint::finite(0.4)};
    GeodesicCache c = build_cache(s, trivial_group(), 5, w);
    WeightSpec zero = w;
    zero.amplitude = 0.0;
    GeodesicCache cz = build_cache(s, trivial_group(), 5, zero);
    for (int k = 1; k <= 5; ++k) CHECK(coeff_a(cz, k, cplx(0.1, 1.0), t).d_beta == cplx(0.0));
    CHECK(zeta(cz, cplx(0.1, 1.0), t) == cplx(0.0));
    CHECK(direct_zeta_sum(s, trivial_group(), 2.5, zero, t, 4) == cplx(0.0));
    WeightSpec scaled = w;
    scaled.amplitude = 2.5;
    GeodesicCache cs = build_cache(s, trivial_group(), 5, scaled);
    for (cplx lambda : {cplx(0.1, 1.0), cplx(-0.5, 7.0)})
      CHECK(rel(zeta(cs, lambda, t), 2.5 * zeta(c, lambda, t)) <= 1e-14);
  }

  TEST_CASE("property: jets against finite differences") {
    SchottkySurface s = Y();
    WeightSpec w = section_weight(0.2, false);
    const int N = 4;
    GeodesicCache c = build_cache(s, trivial_group(), N, w);
    // A target on a closed geodesic, so the beta-derivative is not lost under the FD noise.
    const auto& pair = c.entries[0].geometry.section_pairs[0];
    SectionTarget t{pair.minus, pair.plus};
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> re(-1.0, 0.0), im(0.0, 20.0);
    const double h = 1e-5;
    for (int i = 0; i < 10; ++i) {
      cplx lambda(re(rng), im(rng));
      Jet1 D = determinant(c, lambda, 0, t);
      cplx fd_lambda = (determinant(c, lambda + h, 0, t).value - determinant(c, lambda - h, 0, t).value) / (2 * h);
      CHECK(rel(D.d_lambda, fd_lambda) <= 1e-6);
      cplx fd_beta = (bell_value(brute_coefficients(s, w, t, lambda, h, N)) -
                      bell_value(brute_coefficients(s, w, t, lambda, -h, N))) /
                     (2 * h);
      CHECK(rel(D.d_beta, fd_beta) <= 1e-6);
      CHECK(rel(D.value, bell_value(brute_coefficients(s, w, t, lambda, 0.0, N))) <= 1e-12);
    }
  }

  // Least-squares slope of log|d_n| over [lo, hi], skipping values at the rounding floor.
  double log_slope(const CoefficientSeries& series, int lo, int hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int n = lo; n <= hi; ++n) {
      double v = std::abs(series.d[static_cast<size_t>(n)].value);
      if (v < 1e-14) continue;
      sx += n;
      sy += std::log(v);
      sxx += double(n) * n;
      sxy += n * std::log(v);
      ++m;
    }
    REQUIRE(m >= 2);
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }

  // Per-step decrements are irregular on both surfaces, so the decay rate is
  // compared over windows instead.
  TEST_CASE("property: super-exponential decay at the first resonance") {
    for (const SchottkySurface& s : {X(), Y()}) {
      GeodesicCache c = build_cache(s, trivial_group(), 9, WeightSpec{});
      cplx l0 = first_resonance(c);
      CoefficientSeries series = coefficient_series(c, l0, 0, {});
      double early = log_slope(series, 3, 5), late = log_slope(series, 6, 8);
      CHECK(early < -1.0);
      CHECK(late < early);
      for (int n = 4; n <= 8; ++n) {
        double v = std::abs(series.d[static_cast<size_t>(n)].value);
        if (v >= 1e-14) CHECK(std::log(v) / (n * n) < -0.15);
      }
    }
  }

  TEST_CASE("determinant vanishes at the first resonance") {
    SchottkySurface s = Y();
    GeodesicCache c = build_cache(s, trivial_group(), 8, WeightSpec{});
    cplx l0 = first_resonance(c);
    CHECK(std::abs(l0 - cplx(-0.8847, 0)) < 1e-3);
    double last = INFINITY;
    for (int N = 2; N <= 6; ++N) {
      double v = std::abs(determinant(c, l0, 0, {}, N).value);
      CHECK(v < last);
      last = v;
    }
    CHECK(last < 1e-13);
  }

  TEST_CASE("residues at the first resonance") {
    SchottkySurface s = Y();
    SymmetryGroup G = full_symmetry(s);
    WeightSpec w = section_weight(0.05, true);
    GeodesicCache c = build_cache(s, G, 6, w);
    cplx l0 = first_resonance(c);
    PoleInfo pole = locate_pole(c, l0);
    REQUIRE(pole.characters == std::vector<int>{0});

    const auto& pair = c.entries[0].geometry.section_pairs[0];
    SectionTarget t{pair.minus, pair.plus};
    cplx r = residue_simple(c, pole, t);
    CHECK(std::abs(r.imag()) <= 1e-10 * std::abs(r));
    CHECK(r.real() > 0.0);

    ZetaFn z = [&](cplx l) { return zeta(c, l, t); };
    DetFn d = character_det(c, 0);
    cplx r64 = residue_contour(z, d, l0, 0.05, 64);
    cplx r128 = residue_contour(z, d, l0, 0.05, 128);
    CHECK(rel(r64, r) <= 1e-6);
    CHECK(rel(r64, r128) <= 1e-9);
    CHECK_THROWS_AS(residue_contour(z, d, l0, 0.05, 32), ValidationError);

    WeightSpec zero = w;
    zero.amplitude = 0.0;
    GeodesicCache cz = build_cache(s, G, 6, zero);
    CHECK(residue_simple(cz, pole, t) == cplx(0.0));
    CHECK(residue_contour([](cplx) { return cplx(0.0); }, d, l0, 0.05) == cplx(0.0));
    CHECK_THROWS_AS(locate_pole(c, cplx(0.5, 0.0)), NumericalError);
  }

  TEST_CASE("relative error without reduction at the first named resonance") {
    SchottkySurface s = Y();
    GeodesicCache sym = build_cache(s, full_symmetry(s), 6, WeightSpec{});
    Resonance z = newton(character_det(sym, sym.group.character_index("C")), cplx(-0.9998, 9.118));
    WeightSpec w = section_weight(1e-3, false);
    GeodesicCache c = build_cache(s, trivial_group(), 6, w);
    const SectionPair& p = c.entries[0].geometry.section_pairs[0];
    CoefficientSeries series = coefficient_series(c, z.location, 0, SectionTarget{p.minus, p.plus});
    CHECK(relative_error(series, 6, JetComponent::d_beta) <= 1e-3);
  }
}
