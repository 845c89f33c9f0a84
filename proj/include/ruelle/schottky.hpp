#pragma once

#include <compare>
#include <string>
#include <vector>

#include "ruelle/moebius.hpp"

namespace ruelle {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

struct Disc {
  double center = 0.0;
  double radius = 0.0;
  Interval interval() const { return {center - radius, center + radius}; }
  bool contains(cplx z) const { return std::abs(z - center) < radius; }
};

enum class SurfaceFamily { custom, three_funnel, funneled_torus };

struct SurfaceParams {
  SurfaceFamily family = SurfaceFamily::custom;
  double l1 = 0.0, l2 = 0.0, l3 = 0.0;
  double phi = 0.0;
  double a = 0.0;  // three-funnel conjugation parameter, a > 1
};

std::string describe(const SurfaceParams& p);

// Letters are 0-based: generator i has inverse i + r (mod 2r). The paper's
// letter k corresponds to index k - 1.
class SchottkySurface {
 public:
  // gens are g_0..g_{r-1}; inverses are appended. Runs full validation.
  static SchottkySurface from_generators(const std::vector<MoebiusMap>& gens,
                                         SurfaceParams params = {});

  int rank() const { return rank_; }
  int letters() const { return 2 * rank_; }
  int inverse_letter(int i) const { return (i + rank_) % (2 * rank_); }
  const MoebiusMap& generator(int i) const { return gens_[static_cast<size_t>(i)]; }
  const std::vector<MoebiusMap>& generators() const { return gens_; }
  const std::vector<Disc>& discs() const { return discs_; }
  Interval interval(int i) const { return discs_[static_cast<size_t>(i)].interval(); }
  const SurfaceParams& params() const { return params_; }

  // Index of the fundamental interval containing x, or -1.
  int interval_of(double x) const;
  int interval_of(BoundaryPoint x) const;
  // Index of the open disc containing z, or -1.
  int disc_of(cplx z) const;

 private:
  int rank_ = 0;
  std::vector<MoebiusMap> gens_;
  std::vector<Disc> discs_;
  SurfaceParams params_;
};

// Isometric circles: center -d/c, radius 1/|c| of the normalized map.
std::vector<Disc> isometric_discs(const std::vector<MoebiusMap>& gens);
std::vector<Disc> isometric_discs(const SchottkySurface& s);

SchottkySurface build_three_funnel(double l1, double l2, double l3);
SchottkySurface build_funneled_torus(double l1, double l2, double phi);

// Solves a + 1/a = 2(ch1 ch2 + ch3)/(sh1 sh2) for the root a > 1.
double three_funnel_parameter(double l1, double l2, double l3);

struct Word {
  std::vector<int> letters;

  size_t size() const { return letters.size(); }
  int operator[](size_t i) const { return letters[i]; }
  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;
};

std::string to_string(const Word& w);  // 1-based, e.g. "(1,2)"

bool is_reduced(const Word& w, int rank);
bool is_closed(const Word& w, int rank);

// g_{i_n} ... g_{i_1}: earliest letter applied first.
MoebiusMap word_to_map(const SchottkySurface& s, const Word& w);

Word rotate(const Word& w, size_t j);  // (w_{j+1}, ..., w_n, w_1, ..., w_j)
Word concat_power(const Word& w, int k);
// Smallest p > 0 with rotate(w, p) == w.
int cyclic_period(const Word& w);
Word minimal_rotation(const Word& w);

// Number of reduced letter sequences with the given closing rule, by transfer matrix.
long long closed_word_count(int rank, int n);

std::vector<Word> enumerate_closed_words(int rank, int n);
inline std::vector<Word> enumerate_closed_words(const SchottkySurface& s, int n) {
  return enumerate_closed_words(s.rank(), n);
}

struct CyclicClass {
  Word rep;   // lexicographically minimal rotation
  int size;   // number of distinct rotations
  int period;
  bool primitive;
};

std::vector<CyclicClass> cyclic_classes(int rank, int n);
inline std::vector<CyclicClass> cyclic_classes(const SchottkySurface& s, int n) {
  return cyclic_classes(s.rank(), n);
}

struct GeodesicData {
  Word word;
  MoebiusMap element;
  double length = 0.0;
  FixedPointPair fixed_points;
  // Fixed points of rotate(word, j), j = 0..n-1.
  std::vector<FixedPointPair> cyclic_points;
  bool primitive = false;
  int period = 0;
};

GeodesicData geodesic_data(const SchottkySurface& s, const Word& w);

}  // namespace ruelle
