#ifndef CUBECK_CUBE_BOX_HPP
#define CUBECK_CUBE_BOX_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

// The cube category with objects 0..dim and morphisms n -> m the
// order-preserving functions Bool^n -> Bool^m. A morphism is stored as m
// truth tables, one per output coordinate; table bit x is the coordinate's
// value on the input pattern x in [0, 2^n).

namespace ctt::cube {

using Table = uint16_t; // truth table over at most 2^4 inputs

struct BoxMor {
  int src = 0, dst = 0;
  std::vector<Table> comp; // dst tables over 2^src inputs

  bool operator==(const BoxMor& o) const {
    return src == o.src && dst == o.dst && comp == o.comp;
  }
  bool operator<(const BoxMor& o) const {
    if (src != o.src) return src < o.src;
    if (dst != o.dst) return dst < o.dst;
    return comp < o.comp;
  }
};

// Apply to an input bit pattern.
int box_apply(const BoxMor& f, int x);
BoxMor box_compose(const BoxMor& f, const BoxMor& g); // f after g
BoxMor box_identity(int n);

class BoxCat {
 public:
  explicit BoxCat(int dim);

  int dim() const { return dim_; }
  // Monotone Boolean functions in n variables (the hom-set n -> 1 up to
  // table identification); Dedekind-sized.
  const std::vector<Table>& mono(int n) const { return mono_.at(n); }
  const std::vector<BoxMor>& hom(int n, int m) const {
    return hom_.at(key(n, m));
  }
  int hom_size(int n, int m) const { return (int)hom(n, m).size(); }
  int index_of(const BoxMor& f) const;
  int compose_idx(int n, int m, int k, int f_idx, int g_idx) const;
  int id_idx(int n) const;

  // Exhaustive identity/associativity audits; throw on failure.
  void check_identities() const;
  // Associativity over all composable triples whose count stays below
  // `budget`; table-vs-pointwise composition is checked for every pair,
  // which covers the rest.
  void check_associativity(long budget = 20'000'000) const;
  void check_tables_match_pointwise() const;

 private:
  int key(int n, int m) const { return n * (dim_ + 1) + m; }
  int dim_;
  std::vector<std::vector<Table>> mono_;
  std::map<int, std::vector<BoxMor>> hom_;
  std::map<BoxMor, int> index_;
};

bool table_monotone(Table t, int n);

} // namespace ctt::cube

#endif
