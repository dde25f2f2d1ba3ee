#include <doctest.h>

#include <map>
#include <random>

#include "interval.hpp"

using namespace ctt;

namespace {

// Independent oracle: evaluate the raw term as a Boolean function, never
// touching the canonical forms under test.
bool eval_term(const IvPtr& t, const std::map<int, bool>& tt) {
  switch (t->kind) {
    case Iv::Kind::Zero: return false;
    case Iv::Kind::One: return true;
    case Iv::Kind::Var: return tt.at(t->var);
    case Iv::Kind::Meet: return eval_term(t->lhs, tt) && eval_term(t->rhs, tt);
    case Iv::Kind::Join: return eval_term(t->lhs, tt) || eval_term(t->rhs, tt);
  }
  return false;
}

bool same_function(const IvPtr& s, const IvPtr& t, int n) {
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::map<int, bool> tt;
    for (int v = 0; v < n; ++v) tt[v] = (mask >> v) & 1;
    if (eval_term(s, tt) != eval_term(t, tt)) return false;
  }
  return true;
}

bool matches_function(const IvElem& e, const IvPtr& t, int n) {
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::map<int, bool> tt;
    for (int v = 0; v < n; ++v) tt[v] = (mask >> v) & 1;
    if (e.eval(tt) != eval_term(t, tt)) return false;
  }
  return true;
}

IvPtr random_term(std::mt19937_64& rng, int n, int depth) {
  std::uniform_int_distribution<int> leaf(0, n + 1);
  if (depth == 0) {
    int k = leaf(rng);
    if (k == 0) return Iv::zero();
    if (k == 1) return Iv::one();
    return Iv::mkvar(k - 2);
  }
  std::uniform_int_distribution<int> shape(0, 3);
  switch (shape(rng)) {
    case 0: return random_term(rng, n, 0);
    case 1: return random_term(rng, n, 0);
    case 2:
      return Iv::meet(random_term(rng, n, depth - 1),
                      random_term(rng, n, depth - 1));
    default:
      return Iv::join(random_term(rng, n, depth - 1),
                      random_term(rng, n, depth - 1));
  }
}

// every term of depth <= 1 over n variables
std::vector<IvPtr> small_terms(int n) {
  std::vector<IvPtr> leaves{Iv::zero(), Iv::one()};
  for (int v = 0; v < n; ++v) leaves.push_back(Iv::mkvar(v));
  std::vector<IvPtr> out = leaves;
  for (auto& a : leaves)
    for (auto& b : leaves) {
      out.push_back(Iv::meet(a, b));
      out.push_back(Iv::join(a, b));
    }
  return out;
}

} // namespace

TEST_CASE("interval normal forms denote the same monotone function") {
  std::mt19937_64 rng(20240811);
  for (int n = 1; n <= 4; ++n) {
    for (int iter = 0; iter < 400; ++iter) {
      IvPtr t = random_term(rng, n, 4);
      IvElem e = iv_normalize(t, n);
      CHECK(matches_function(e, t, n));
    }
  }
}

TEST_CASE("iv_eq is sound and complete against truth tables") {
  // exhaustive on depth <= 1 terms in 2 variables
  auto ts = small_terms(2);
  for (auto& a : ts)
    for (auto& b : ts) CHECK(iv_eq(a, b, 2) == same_function(a, b, 2));
  // random terms up to 4 variables
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 1500; ++iter) {
    IvPtr a = random_term(rng, 4, 3), b = random_term(rng, 4, 3);
    CHECK(iv_eq(a, b, 4) == same_function(a, b, 4));
  }
}

TEST_CASE("lattice laws") {
  IvPtr i = Iv::mkvar(0), j = Iv::mkvar(1), k = Iv::mkvar(2);
  CHECK(iv_normalize(Iv::meet(i, Iv::one()), 1) == IvElem::var(0));
  CHECK(iv_normalize(Iv::join(i, i), 1) == IvElem::var(0));
  // distributivity, frozen from the full truth table over Bool^3
  IvElem lhs = iv_normalize(Iv::meet(i, Iv::join(j, k)), 3);
  IvElem rhs = iv_normalize(Iv::join(Iv::meet(i, j), Iv::meet(i, k)), 3);
  CHECK(lhs == rhs);
  CHECK(lhs.clauses == std::vector<IvClause>{{0, 1}, {0, 2}});
  CHECK(iv_eq(Iv::meet(i, j), Iv::meet(j, i), 2));
  // witness i=0, j=1 separates them
  CHECK(!iv_eq(Iv::join(i, j), i, 2));
}

TEST_CASE("normalization is idempotent and homomorphic") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 500; ++iter) {
    IvPtr a = random_term(rng, 3, 3), b = random_term(rng, 3, 3);
    IvElem ea = iv_normalize(a, 3), eb = iv_normalize(b, 3);
    CHECK(iv_meet(ea, eb) == iv_normalize(Iv::meet(a, b), 3));
    CHECK(iv_join(ea, eb) == iv_normalize(Iv::join(a, b), 3));
    // antichain property
    for (size_t x = 0; x < ea.clauses.size(); ++x)
      for (size_t y = 0; y < ea.clauses.size(); ++y) {
        if (x == y) continue;
        CHECK(!std::includes(ea.clauses[y].begin(), ea.clauses[y].end(),
                             ea.clauses[x].begin(), ea.clauses[x].end()));
      }
  }
}

TEST_CASE("scope errors") {
  CHECK_THROWS_AS(iv_normalize(Iv::mkvar(3), 3), ScopeError);
  CHECK_THROWS_AS(
      cof_normalize(Cof::eq(Iv::mkvar(5), true), 2), ScopeError);
}

TEST_CASE("cof normalization pins the spec forms") {
  IvPtr i = Iv::mkvar(0), j = Iv::mkvar(1);
  // (i=0) /\ (i=1) -> bot
  Dnf d = cof_normalize(
      Cof::conj(Cof::eq(i, false), Cof::eq(i, true)), 1);
  CHECK(d.is_false());
  // (i/\j = 1) -> {i->1, j->1}
  Dnf d2 = cof_normalize(Cof::eq(Iv::meet(i, j), true), 2);
  CHECK(d2.clauses == std::vector<Assign>{{{0, true}, {1, true}}});
  // (i/\j = 0) -> (i=0) \/ (j=0)
  Dnf d3 = cof_normalize(Cof::eq(Iv::meet(i, j), false), 2);
  CHECK(d3.clauses == std::vector<Assign>{{{0, false}}, {{1, false}}});
  // top /\ phi -> dnf(phi)
  CofPtr phi = Cof::disj(Cof::eq(i, false), Cof::eq(j, true));
  CHECK(cof_normalize(Cof::conj(Cof::top(), phi), 2) ==
        cof_normalize(phi, 2));
}

TEST_CASE("entailment") {
  IvPtr i = Iv::mkvar(0), j = Iv::mkvar(1);
  Dnf i0 = cof_normalize(Cof::eq(i, false), 2);
  Dnf i1 = cof_normalize(Cof::eq(i, true), 2);
  Dnf faces = dnf_or(i0, i1);
  CHECK(cof_entails(i0, faces));
  CHECK(!cof_entails(Dnf::top(), faces));
  Dnf both = dnf_and(i0, cof_normalize(Cof::eq(j, true), 2));
  CHECK(cof_entails(both, cof_normalize(Cof::eq(j, true), 2)));
  CHECK(!cof_entails(cof_normalize(Cof::eq(j, true), 2), both));
}

TEST_CASE("normalization mutually entails the input and is idempotent") {
  std::mt19937_64 rng(1234);
  auto random_cof = [&](auto&& self, int n, int depth) -> CofPtr {
    std::uniform_int_distribution<int> shape(0, depth == 0 ? 2 : 4);
    switch (shape(rng)) {
      case 0: return Cof::top();
      case 1: return Cof::bot();
      case 2: {
        std::uniform_int_distribution<int> pick(0, 2 * n - 1);
        int k = pick(rng);
        return Cof::eq(Iv::mkvar(k / 2), k % 2);
      }
      case 3:
        return Cof::conj(self(self, n, depth - 1), self(self, n, depth - 1));
      default:
        return Cof::disj(self(self, n, depth - 1), self(self, n, depth - 1));
    }
  };
  for (int iter = 0; iter < 800; ++iter) {
    CofPtr c = random_cof(random_cof, 3, 3);
    Dnf d = cof_normalize(c, 3);
    // rebuild a formula from the DNF and renormalize
    CofPtr back = Cof::bot();
    for (const auto& clause : d.clauses) {
      CofPtr conj = Cof::top();
      for (auto& [v, val] : clause)
        conj = Cof::conj(conj, Cof::eq(Iv::mkvar(v), val));
      back = Cof::disj(back, conj);
    }
    Dnf d2 = cof_normalize(back, 3);
    CHECK(d == d2);
    CHECK(cof_entails(d, d2));
    CHECK(cof_entails(d2, d));
  }
}

TEST_CASE("forall") {
  IvPtr i = Iv::mkvar(1), j = Iv::mkvar(0); // quantify the last variable
  // forall i. (j=0) -> (j=0)
  Dnf a = cof_forall(cof_normalize(Cof::eq(j, false), 2), 1);
  CHECK(a == cof_normalize(Cof::eq(j, false), 1));
  // forall i. (i=0) -> bot
  CHECK(cof_forall(cof_normalize(Cof::eq(i, false), 2), 1).is_false());
  // forall i. ((i=0)\/(j=1)) /\ ((i=1)\/(j=1)) -> (j=1)
  CofPtr phi = Cof::conj(Cof::disj(Cof::eq(i, false), Cof::eq(j, true)),
                         Cof::disj(Cof::eq(i, true), Cof::eq(j, true)));
  CHECK(cof_forall(cof_normalize(phi, 2), 1) ==
        cof_normalize(Cof::eq(j, true), 1));
}

TEST_CASE("forall result entails the endpoint and fresh substitutions") {
  std::mt19937_64 rng(55);
  auto random_dnf = [&](int n) {
    std::uniform_int_distribution<int> nc(0, 3);
    Dnf d = Dnf::bot();
    int k = nc(rng);
    for (int c = 0; c < k; ++c) {
      Dnf clause = Dnf::top();
      std::uniform_int_distribution<int> nb(0, n);
      int bs = nb(rng);
      for (int b = 0; b < bs; ++b) {
        std::uniform_int_distribution<int> pv(0, 2 * n - 1);
        int x = pv(rng);
        clause = dnf_and(clause, Dnf{{Assign{{x / 2, x % 2 == 1}}}});
      }
      d = dnf_or(d, clause);
    }
    return d;
  };
  for (int iter = 0; iter < 600; ++iter) {
    Dnf phi = random_dnf(3); // over vars 0,1,2; quantify 2
    Dnf psi = cof_forall(phi, 2);
    // substitution by endpoints
    CHECK(cof_entails(psi, cof_restrict(phi, Assign{{2, false}})));
    CHECK(cof_entails(psi, cof_restrict(phi, Assign{{2, true}})));
    // substitution by a fresh variable (rename 2 -> 3); psi must entail it
    CHECK(cof_entails(psi, cof_rename(phi, {{2, 3}})));
    // and psi is the largest: psi itself entails phi with the variable left
    // generic only if phi has clauses free of it, which is what cof_forall
    // keeps, so psi |- phi as formulas over n+1 variables
    CHECK(cof_entails(psi, phi));
  }
}

TEST_CASE("restriction") {
  IvPtr i = Iv::mkvar(0), j = Iv::mkvar(1);
  Dnf d = cof_normalize(
      Cof::disj(Cof::conj(Cof::eq(i, false), Cof::eq(j, true)),
                Cof::eq(j, false)),
      2);
  Dnf r = cof_restrict(d, Assign{{0, false}});
  CHECK(r == cof_normalize(Cof::disj(Cof::eq(j, true), Cof::eq(j, false)), 2));
  Dnf r2 = cof_restrict(d, Assign{{0, true}});
  CHECK(r2 == cof_normalize(Cof::eq(j, false), 2));
  IvElem e = iv_normalize(Iv::join(Iv::meet(i, j), i), 2);
  CHECK(iv_restrict(e, Assign{{0, true}}).is_one());
  CHECK(iv_restrict(e, Assign{{0, false}}).is_zero());
}
