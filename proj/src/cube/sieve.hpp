#ifndef CUBECK_CUBE_SIEVE_HPP
#define CUBECK_CUBE_SIEVE_HPP

#include <vector>

#include "../interval.hpp"
#include "box.hpp"

// Sieve semantics of cofibrations: the sieve of phi at object n collects the
// morphisms under which phi becomes true. Inclusion of sieves is the
// semantic entailment order against which the syntactic solver is audited.

namespace ctt::cube {

struct Sieve {
  int at = 0; // the object the sieve sits on
  // member[m][fIdx] for f : m -> at
  std::vector<std::vector<char>> member;

  bool operator==(const Sieve& o) const {
    return at == o.at && member == o.member;
  }
};

Sieve cof_sieve(const BoxCat& box, const Dnf& phi, int n);
Sieve maximal_sieve(const BoxCat& box, int n);
bool sieve_leq(const Sieve& a, const Sieve& b);
bool sieve_closed(const BoxCat& box, const Sieve& s);

// Enumerate every canonical DNF over variables 0..nvars-1 (antichains of
// consistent partial assignments). Sizes grow quickly; nvars <= 3.
std::vector<Dnf> enumerate_canonical_cofs(int nvars);

} // namespace ctt::cube

#endif
