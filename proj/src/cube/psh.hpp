#ifndef CUBECK_CUBE_PSH_HPP
#define CUBECK_CUBE_PSH_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "box.hpp"

// Finite, dimension-truncated presheaves over the cube category, with just
// enough structure to run the desk-scale semantic checks: constant and
// codiscrete presheaves, representables, products, coproducts, exponentials
// by enumeration of natural families, and the discreteness test.

namespace ctt::cube {

struct Psh {
  const BoxCat* box = nullptr;
  std::vector<int> card; // carrier size per level 0..dim
  // res[n][m][fIdx][e]: restriction of e in P(n) along f : m -> n.
  std::vector<std::vector<std::vector<std::vector<int>>>> res;

  int dim() const { return (int)card.size() - 1; }
  int restrict_along(int n, int m, int f_idx, int e) const {
    return res[n][m][f_idx][e];
  }
  // identity restricts to identity; restriction along g.f composes
  bool check_functorial(std::string* why = nullptr) const;
};

// Build a presheaf from carrier sizes and a restriction callback.
Psh make_psh(const BoxCat& box, std::vector<int> card,
             const std::function<int(int n, int m, int f_idx, int e)>& f);

Psh psh_delta(const BoxCat& box, int s);         // constant presheaf
Psh psh_nabla(const BoxCat& box, int s);         // codiscrete: S^(Box(0,n))
Psh psh_representable(const BoxCat& box, int c); // y_c
Psh psh_interval(const BoxCat& box);             // y_1
Psh psh_product(const Psh& a, const Psh& b);
Psh psh_coproduct(const Psh& a, const Psh& b);

inline int pair_index(int i, int j, int jcard) { return i * jcard + j; }

int eval_at0(const Psh& p); // carrier size at level 0

// Natural transformations D => X, each given as a flat vector indexed by
// (level, element) with offsets sum(card[<m]).
std::vector<std::vector<int>> nat_transformations(const Psh& dom,
                                                  const Psh& cod);
int slot_offset(const Psh& p, int level);

// Exponential (X^B)(n) := Nat(y_n x B, X); also returns, per level, the
// table of families so elements can be inspected.
struct ExpPsh {
  Psh psh;
  // families[n][e] = flat family vector over product(y_n, B)
  std::vector<std::vector<std::vector<int>>> families;
  // the product domains per level, kept for slot arithmetic
  std::vector<Psh> doms;
};
ExpPsh psh_exp(const Psh& base, const Psh& target); // target^base

// The canonical map X -> X^I, x |-> constant family; returns the image
// element index per level, or nullopt if some image is missing (not a
// family — would indicate a bug).
struct DiscreteReport {
  bool discrete = false;
  std::string detail;
};
DiscreteReport is_discrete(const Psh& x);

// Is the unique map B -> 1 a levelwise surjection?
bool well_supported(const Psh& b);
// Any two elements at each level joined by a path (an element of B^I with
// the given endpoints)?
bool psh_proposition(const Psh& b);

// lambda x. lambda b. x : X -> X^B bijective levelwise?
DiscreteReport null_structure_check(const Psh& b, const Psh& x);

// Factorization map ((B->X) + (B->Y)) -> (B -> (X+Y)) bijective levelwise?
DiscreteReport coproduct_null_check(const Psh& b, const Psh& x, const Psh& y);

// Counting checks for the adjunctions Delta -| (-)_0 -| Nabla, plus the
// triangle identities on concrete elements.
struct AdjunctionReport {
  bool ok = false;
  std::string detail;
};
AdjunctionReport check_delta_eval_adjunction(const BoxCat& box, int s_card,
                                             const Psh& p);
AdjunctionReport check_eval_nabla_adjunction(const BoxCat& box, int s_card,
                                             const Psh& p);

} // namespace ctt::cube

#endif
