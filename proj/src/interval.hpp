#ifndef CUBECK_INTERVAL_HPP
#define CUBECK_INTERVAL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

// Interval lattice and cofibration solver.
//
// Interval elements are kept in a canonical form: an antichain of
// meet-clauses (each clause a set of variables), joined together. Such an
// antichain is exactly a monotone Boolean function of its variables, so
// equality of canonical forms is complete for the lattice generated by
// 0, 1, meet and join with no reversals.
//
// Cofibrations are kept as a canonical disjunctive normal form over partial
// endpoint assignments. Entailment is clause-by-clause instantiation.

namespace ctt {

// ---------------------------------------------------------------- interval

struct Iv;
using IvPtr = std::shared_ptr<const Iv>;

struct Iv {
  enum class Kind { Zero, One, Var, Meet, Join };
  Kind kind;
  int var = -1;      // Var
  IvPtr lhs, rhs;    // Meet / Join

  static IvPtr zero();
  static IvPtr one();
  static IvPtr mkvar(int v);
  static IvPtr meet(IvPtr a, IvPtr b);
  static IvPtr join(IvPtr a, IvPtr b);
};

// A meet-clause: sorted, duplicate-free set of variable identifiers.
using IvClause = std::vector<int>;

// Canonical interval element: antichain of clauses, sorted.
// {} is the constant 0, {{}} is the constant 1.
struct IvElem {
  std::vector<IvClause> clauses;

  bool operator==(const IvElem& o) const { return clauses == o.clauses; }
  bool operator<(const IvElem& o) const { return clauses < o.clauses; }

  bool is_zero() const { return clauses.empty(); }
  bool is_one() const { return clauses.size() == 1 && clauses[0].empty(); }
  // The sole variable, if this element is a bare variable.
  std::optional<int> as_var() const;

  static IvElem zero() { return {}; }
  static IvElem one() { return {{IvClause{}}}; }
  static IvElem var(int v) { return {{IvClause{v}}}; }

  // Evaluate as a monotone Boolean function; `tt` maps variable id -> bool.
  bool eval(const std::map<int, bool>& tt) const;

  // Largest variable id mentioned, or -1.
  int max_var() const;

  void collect_vars(std::vector<int>& out) const;
};

IvElem iv_meet(const IvElem& a, const IvElem& b);
IvElem iv_join(const IvElem& a, const IvElem& b);

// Normalize a term whose variables must all be < n; throws ScopeError.
IvElem iv_normalize(const IvPtr& t, int n);
bool iv_eq(const IvPtr& s, const IvPtr& t, int n);

// Substitute: replace variable v by 0/1, renormalize.
IvElem iv_assign(const IvElem& e, int v, bool val);
// Substitute a whole element for a variable.
IvElem iv_subst(const IvElem& e, int v, const IvElem& r);
// Rename variables through a map (used when quoting levels to indices).
IvElem iv_rename(const IvElem& e, const std::map<int, int>& ren);

std::string iv_show(const IvElem& e,
                    const std::vector<std::string>* names = nullptr);

// ------------------------------------------------------------ cofibrations

struct Cof;
using CofPtr = std::shared_ptr<const Cof>;

struct Cof {
  enum class Kind { Top, Bot, Eq, And, Or };
  Kind kind;
  IvPtr arg;        // Eq
  bool eps = false; // Eq: the endpoint
  CofPtr lhs, rhs;  // And / Or

  static CofPtr top();
  static CofPtr bot();
  static CofPtr eq(IvPtr r, bool eps);
  static CofPtr conj(CofPtr a, CofPtr b);
  static CofPtr disj(CofPtr a, CofPtr b);
};

// A consistent partial endpoint assignment, sorted by variable.
using Assign = std::vector<std::pair<int, bool>>;

// Canonical DNF: antichain of assignments under extension, sorted.
// {} is false, {{}} is true.
struct Dnf {
  std::vector<Assign> clauses;

  bool operator==(const Dnf& o) const { return clauses == o.clauses; }
  bool operator<(const Dnf& o) const { return clauses < o.clauses; }
  bool is_false() const { return clauses.empty(); }
  bool is_true() const { return clauses.size() == 1 && clauses[0].empty(); }

  static Dnf top() { return {{Assign{}}}; }
  static Dnf bot() { return {}; }

  int max_var() const;
  void collect_vars(std::vector<int>& out) const;
};

// Atom over an already-normalized interval element; composite terms are
// broken down to variable atoms here.
Dnf dnf_eq(const IvElem& e, bool eps);
Dnf dnf_and(const Dnf& a, const Dnf& b);
Dnf dnf_or(const Dnf& a, const Dnf& b);

// Normalize a cofibration formula with variables < n; throws ScopeError.
Dnf cof_normalize(const CofPtr& phi, int n);

// phi entails psi: every clause of phi fully satisfies some clause of psi.
bool cof_entails(const Dnf& phi, const Dnf& psi);

// Universal quantification over variable v (the right adjoint to
// weakening): clauses mentioning v never survive.
Dnf cof_forall(const Dnf& phi, int v);

// Restrict by a partial assignment: satisfied bindings are dropped,
// contradicted clauses removed.
Dnf cof_restrict(const Dnf& phi, const Assign& a);
IvElem iv_restrict(const IvElem& e, const Assign& a);

// Substitute interval elements for variables (parallel).
Dnf cof_subst(const Dnf& phi, const std::map<int, IvElem>& sub);
Dnf cof_rename(const Dnf& phi, const std::map<int, int>& ren);

std::string cof_show(const Dnf& d,
                     const std::vector<std::string>* names = nullptr);

struct ScopeError : std::exception {
  std::string msg;
  explicit ScopeError(std::string m) : msg(std::move(m)) {}
  const char* what() const noexcept override { return msg.c_str(); }
};

} // namespace ctt

#endif
