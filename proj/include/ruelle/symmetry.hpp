#pragma once

#include <string>
#include <vector>

#include "ruelle/schottky.hpp"

namespace ruelle {

struct GroupElement {
  std::string name;
  MoebiusMap map;
  std::vector<int> perm;  // letter action: g g_j g^{-1} = g_{perm[j]}
  int order = 1;
};

struct Character {
  std::string label;
  int dim = 1;
  std::vector<cplx> values;  // indexed like the group elements
};

class SymmetryGroup {
 public:
  // Letter action is read off from how each map conjugates the generators;
  // the relation g(g_j z) = g_{g.j}(g z) is then checked at sample points.
  static SymmetryGroup from_maps(const SchottkySurface& s, const std::string& name,
                                 const std::vector<std::string>& names,
                                 const std::vector<MoebiusMap>& maps,
                                 const std::vector<Character>& characters);

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(elements_.size()); }
  int identity() const { return 0; }
  const GroupElement& element(int g) const { return elements_[static_cast<size_t>(g)]; }
  int mul(int g, int h) const { return table_[static_cast<size_t>(g)][static_cast<size_t>(h)]; }
  int inverse(int g) const;
  int power(int g, int k) const;
  int act(int g, int letter) const;
  Word act(int g, const Word& w) const;
  const std::vector<Character>& characters() const { return characters_; }
  int character_index(const std::string& label) const;
  // Largest defect of the defining relation seen during validation.
  double relation_error() const { return relation_error_; }
  // Whether g(D_i) = D_{g.i} also holds for the surface's isometric discs.
  bool permutes_discs() const { return permutes_discs_; }

  friend SymmetryGroup trivial_group();

 private:
  std::string name_;
  std::vector<GroupElement> elements_;
  std::vector<std::vector<int>> table_;
  std::vector<Character> characters_;
  double relation_error_ = 0.0;
  bool permutes_discs_ = true;
};

SymmetryGroup trivial_group();
// Klein four-group {e, s1, s2, s1 s2} when l1 = l2, else {e, s1}.
SymmetryGroup klein_four_three_funnel(const SchottkySurface& s);
SymmetryGroup klein_four_torus(const SchottkySurface& s);
// Largest catalogued group for the surface family, trivial otherwise.
SymmetryGroup full_symmetry(const SchottkySurface& s);
bool has_nontrivial_symmetry(const SchottkySurface& s);

// Max over sampled z in D_i and j != i of |g(g_j z) - g_{g.j}(g z)|.
double symmetry_relation_error(const SchottkySurface& s, const SymmetryGroup& G,
                               int samples_per_disc = 8);

// Throws ValidationError unless the table's orthogonality relations hold.
void check_character_table(const SymmetryGroup& G);

struct TwistedWord {
  Word word;
  int twist = 0;
  auto operator<=>(const TwistedWord&) const = default;
  bool operator==(const TwistedWord&) const = default;
};

bool is_twisted_closed(const SymmetryGroup& G, const TwistedWord& tw, int rank);

std::vector<TwistedWord> enumerate_twisted_closed(int rank, const SymmetryGroup& G, int n, int g);
inline std::vector<TwistedWord> enumerate_twisted_closed(const SchottkySurface& s,
                                                         const SymmetryGroup& G, int n, int g) {
  return enumerate_twisted_closed(s.rank(), G, n, g);
}

// (g^{k-1} w, ..., g w, w) as one word.
Word word_iterate(const SymmetryGroup& G, const TwistedWord& tw, int k);

TwistedWord shift_right(const SymmetryGroup& G, const TwistedWord& tw);
TwistedWord shift_left(const SymmetryGroup& G, const TwistedWord& tw);
TwistedWord act(const SymmetryGroup& G, int h, const TwistedWord& tw);

bool is_prime(const SymmetryGroup& G, const TwistedWord& tw);

struct OrbitRep {
  TwistedWord rep;   // lexicographic minimum of the orbit
  int n_w = 0;
  int m_w = 1;       // order of the twist
  Word iterate;      // w^{m_w}, a closed word
  int orbit_size = 0;
};

// All prime orbits with n_w <= N, ordered by (n_w, rep).
std::vector<OrbitRep> orbit_representatives(int rank, const SymmetryGroup& G, int N);
inline std::vector<OrbitRep> orbit_representatives(const SchottkySurface& s, const SymmetryGroup& G,
                                                   int N) {
  return orbit_representatives(s.rank(), G, N);
}

FixedPointPair twisted_fixed_points(const SchottkySurface& s, const SymmetryGroup& G,
                                    const TwistedWord& tw);

}  // namespace ruelle
