#ifndef CUBECK_CUBE_WPRIME_HPP
#define CUBECK_CUBE_WPRIME_HPP

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "psh.hpp"

// Pointwise construction of strict W-types with reductions over the cube
// category at a fixed truncation: depth-bounded normal-form trees sup(y, a)
// with non-reducible heads, the case-split restriction action, and the
// hereditary-naturality filter.

namespace ctt::cube {

// A finite polynomial with reductions over the terminal context.
struct FinPoly {
  Psh Y;
  std::vector<std::vector<int>> xcard; // xcard[n][y]
  // xres[n][m][fIdx][y] : X(n,y) -> X(m, Y(f)(y))
  std::vector<std::vector<std::vector<std::vector<std::vector<int>>>>> xres;
  std::vector<std::vector<char>> in_r; // reducible heads
  std::vector<std::vector<int>> kmap;  // reduction targets, in X(n,y)

  int x_restrict(int n, int m, int f_idx, int y, int x) const {
    return xres[n][m][f_idx][y][x];
  }
  // R is a subpresheaf and k is natural; throws on violation.
  void validate() const;
};

// slot key: (child level e, morphism g : e -> level, arity element x)
using SlotKey = std::tuple<int, int, int>;

struct WTree {
  int head = -1;
  std::vector<std::pair<SlotKey, int>> kids; // sorted by key; value: tree id
  int depth = 0;

  bool operator<(const WTree& o) const {
    if (head != o.head) return head < o.head;
    return kids < o.kids;
  }
};

struct WPrime {
  const BoxCat* box = nullptr;
  const FinPoly* poly = nullptr;
  int depth_bound = 0;
  std::vector<std::vector<WTree>> pool; // all depth-bounded trees, per level
  std::vector<std::vector<char>> hnat;
  Psh carrier;                            // hereditarily natural trees
  std::vector<std::vector<int>> to_psh;   // pool id -> carrier id (or -1)
  std::vector<std::vector<int>> from_psh; // carrier id -> pool id

  // restriction with the defining case split; returns a pool id at level m
  int restrict_tree(int n, int tree, int m, int f_idx) const;
};

// Throws std::runtime_error("depth exhausted: ...") if the bounded
// enumeration would not close under the pool cap.
WPrime build_wprime(const BoxCat& box, const FinPoly& poly, int depth_bound,
                    int pool_cap = 20000);

// An algebra on a presheaf W: the structure map takes the level, a head
// (possibly reducible), and the children's values keyed by slot.
struct WAlgebra {
  const Psh* w = nullptr;
  std::function<int(int level, int head,
                    const std::map<SlotKey, int>& kid_values)>
      s;
};

// Reduction equation + naturality of the structure map, checked on all
// depth-bounded instances drawn from the W' pool.
bool check_algebra(const WPrime& wp, const WAlgebra& alg, std::string* why);

// Structural-recursion fold into the algebra, per carrier element.
std::vector<std::vector<int>> wprime_fold(const WPrime& wp,
                                          const WAlgebra& alg);

// All natural transformations carrier -> W that commute with the algebra
// structure on every tree; fold uniqueness wants exactly one.
std::vector<std::vector<int>> wprime_algebra_maps(const WPrime& wp,
                                                  const WAlgebra& alg);

// The restriction case-split equations, re-derived and compared on every
// element; nonempty string on failure.
std::string check_case_split(const WPrime& wp);

} // namespace ctt::cube

#endif
