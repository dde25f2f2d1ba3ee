#include "interval.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ctt {

IvPtr Iv::zero() {
  static IvPtr z = std::make_shared<Iv>(Iv{Kind::Zero});
  return z;
}
IvPtr Iv::one() {
  static IvPtr o = std::make_shared<Iv>(Iv{Kind::One});
  return o;
}
IvPtr Iv::mkvar(int v) {
  auto t = std::make_shared<Iv>(Iv{Kind::Var});
  const_cast<Iv*>(t.get())->var = v;
  return t;
}
IvPtr Iv::meet(IvPtr a, IvPtr b) {
  auto t = std::make_shared<Iv>(Iv{Kind::Meet});
  auto* m = const_cast<Iv*>(t.get());
  m->lhs = std::move(a);
  m->rhs = std::move(b);
  return t;
}
IvPtr Iv::join(IvPtr a, IvPtr b) {
  auto t = std::make_shared<Iv>(Iv{Kind::Join});
  auto* m = const_cast<Iv*>(t.get());
  m->lhs = std::move(a);
  m->rhs = std::move(b);
  return t;
}

std::optional<int> IvElem::as_var() const {
  if (clauses.size() == 1 && clauses[0].size() == 1) return clauses[0][0];
  return std::nullopt;
}

bool IvElem::eval(const std::map<int, bool>& tt) const {
  for (const auto& c : clauses) {
    bool all = true;
    for (int v : c) {
      auto it = tt.find(v);
      if (it == tt.end() || !it->second) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

int IvElem::max_var() const {
  int m = -1;
  for (const auto& c : clauses)
    for (int v : c) m = std::max(m, v);
  return m;
}

void IvElem::collect_vars(std::vector<int>& out) const {
  for (const auto& c : clauses)
    for (int v : c) out.push_back(v);
}

namespace {

// c1 subsumes c2 (as meets: c1 >= c2) iff c1 is a subset of c2.
bool clause_subset(const IvClause& c1, const IvClause& c2) {
  return std::includes(c2.begin(), c2.end(), c1.begin(), c1.end());
}

IvElem prune(std::vector<IvClause> cs) {
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  std::vector<IvClause> keep;
  for (size_t i = 0; i < cs.size(); ++i) {
    bool subsumed = false;
    for (size_t j = 0; j < cs.size(); ++j) {
      if (i == j) continue;
      if (clause_subset(cs[j], cs[i]) && cs[j] != cs[i]) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) keep.push_back(cs[i]);
  }
  std::sort(keep.begin(), keep.end());
  return IvElem{std::move(keep)};
}

IvClause clause_union(const IvClause& a, const IvClause& b) {
  IvClause out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

} // namespace

IvElem iv_join(const IvElem& a, const IvElem& b) {
  std::vector<IvClause> cs = a.clauses;
  cs.insert(cs.end(), b.clauses.begin(), b.clauses.end());
  return prune(std::move(cs));
}

IvElem iv_meet(const IvElem& a, const IvElem& b) {
  std::vector<IvClause> cs;
  for (const auto& ca : a.clauses)
    for (const auto& cb : b.clauses) cs.push_back(clause_union(ca, cb));
  return prune(std::move(cs));
}

IvElem iv_normalize(const IvPtr& t, int n) {
  switch (t->kind) {
    case Iv::Kind::Zero: return IvElem::zero();
    case Iv::Kind::One: return IvElem::one();
    case Iv::Kind::Var:
      if (t->var < 0 || t->var >= n)
        throw ScopeError("interval variable out of scope: #" +
                         std::to_string(t->var));
      return IvElem::var(t->var);
    case Iv::Kind::Meet:
      return iv_meet(iv_normalize(t->lhs, n), iv_normalize(t->rhs, n));
    case Iv::Kind::Join:
      return iv_join(iv_normalize(t->lhs, n), iv_normalize(t->rhs, n));
  }
  return IvElem::zero();
}

bool iv_eq(const IvPtr& s, const IvPtr& t, int n) {
  return iv_normalize(s, n) == iv_normalize(t, n);
}

IvElem iv_assign(const IvElem& e, int v, bool val) {
  std::vector<IvClause> cs;
  for (const auto& c : e.clauses) {
    auto it = std::find(c.begin(), c.end(), v);
    if (it == c.end()) {
      cs.push_back(c);
    } else if (val) {
      IvClause c2;
      for (int x : c)
        if (x != v) c2.push_back(x);
      cs.push_back(std::move(c2));
    } // val == false: clause dies
  }
  return prune(std::move(cs));
}

IvElem iv_subst(const IvElem& e, int v, const IvElem& r) {
  IvElem acc = IvElem::zero();
  for (const auto& c : e.clauses) {
    IvElem m = IvElem::one();
    for (int x : c) m = iv_meet(m, x == v ? r : IvElem::var(x));
    acc = iv_join(acc, m);
  }
  return acc;
}

IvElem iv_rename(const IvElem& e, const std::map<int, int>& ren) {
  std::vector<IvClause> cs;
  for (const auto& c : e.clauses) {
    IvClause c2;
    for (int v : c) {
      auto it = ren.find(v);
      c2.push_back(it == ren.end() ? v : it->second);
    }
    std::sort(c2.begin(), c2.end());
    c2.erase(std::unique(c2.begin(), c2.end()), c2.end());
    cs.push_back(std::move(c2));
  }
  return prune(std::move(cs));
}

std::string iv_show(const IvElem& e, const std::vector<std::string>* names) {
  auto var_name = [&](int v) -> std::string {
    if (names && v >= 0 && v < (int)names->size()) return (*names)[v];
    return "i" + std::to_string(v);
  };
  if (e.is_zero()) return "0";
  if (e.is_one()) return "1";
  std::ostringstream o;
  bool firstc = true;
  for (const auto& c : e.clauses) {
    if (!firstc) o << " \\/ ";
    firstc = false;
    if (c.size() > 1 && e.clauses.size() > 1) o << "(";
    bool firstv = true;
    for (int v : c) {
      if (!firstv) o << " /\\ ";
      firstv = false;
      o << var_name(v);
    }
    if (c.size() > 1 && e.clauses.size() > 1) o << ")";
  }
  return o.str();
}

// ------------------------------------------------------------ cofibrations

CofPtr Cof::top() {
  static CofPtr t = std::make_shared<Cof>(Cof{Kind::Top});
  return t;
}
CofPtr Cof::bot() {
  static CofPtr b = std::make_shared<Cof>(Cof{Kind::Bot});
  return b;
}
CofPtr Cof::eq(IvPtr r, bool eps) {
  auto c = std::make_shared<Cof>(Cof{Kind::Eq});
  auto* m = const_cast<Cof*>(c.get());
  m->arg = std::move(r);
  m->eps = eps;
  return c;
}
CofPtr Cof::conj(CofPtr a, CofPtr b) {
  auto c = std::make_shared<Cof>(Cof{Kind::And});
  auto* m = const_cast<Cof*>(c.get());
  m->lhs = std::move(a);
  m->rhs = std::move(b);
  return c;
}
CofPtr Cof::disj(CofPtr a, CofPtr b) {
  auto c = std::make_shared<Cof>(Cof{Kind::Or});
  auto* m = const_cast<Cof*>(c.get());
  m->lhs = std::move(a);
  m->rhs = std::move(b);
  return c;
}

int Dnf::max_var() const {
  int m = -1;
  for (const auto& a : clauses)
    for (auto& [v, _] : a) m = std::max(m, v);
  return m;
}

void Dnf::collect_vars(std::vector<int>& out) const {
  for (const auto& a : clauses)
    for (auto& [v, _] : a) out.push_back(v);
}

namespace {

// a extends b: every binding of b appears in a.
bool assign_extends(const Assign& a, const Assign& b) {
  size_t i = 0;
  for (const auto& bind : b) {
    while (i < a.size() && a[i].first < bind.first) ++i;
    if (i == a.size() || a[i] != bind) return false;
  }
  return true;
}

// Merge two assignments; nullopt on clash.
std::optional<Assign> assign_merge(const Assign& a, const Assign& b) {
  Assign out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      if (a[i].second != b[j].second) return std::nullopt;
      out.push_back(a[i++]);
      ++j;
    }
  }
  return out;
}

Dnf dnf_prune(std::vector<Assign> cs) {
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  std::vector<Assign> keep;
  for (size_t i = 0; i < cs.size(); ++i) {
    bool subsumed = false;
    for (size_t j = 0; j < cs.size(); ++j) {
      if (i == j) continue;
      if (assign_extends(cs[i], cs[j]) && cs[i] != cs[j]) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) keep.push_back(cs[i]);
  }
  std::sort(keep.begin(), keep.end());
  return Dnf{std::move(keep)};
}

} // namespace

Dnf dnf_or(const Dnf& a, const Dnf& b) {
  std::vector<Assign> cs = a.clauses;
  cs.insert(cs.end(), b.clauses.begin(), b.clauses.end());
  return dnf_prune(std::move(cs));
}

Dnf dnf_and(const Dnf& a, const Dnf& b) {
  std::vector<Assign> cs;
  for (const auto& ca : a.clauses)
    for (const auto& cb : b.clauses)
      if (auto m = assign_merge(ca, cb)) cs.push_back(*m);
  return dnf_prune(std::move(cs));
}

Dnf dnf_eq(const IvElem& e, bool eps) {
  if (eps) {
    // (join of meet-clauses = 1): one DNF clause per meet-clause,
    // all of its variables pinned to 1.
    std::vector<Assign> cs;
    for (const auto& c : e.clauses) {
      Assign a;
      for (int v : c) a.emplace_back(v, true);
      cs.push_back(std::move(a));
    }
    return dnf_prune(std::move(cs));
  }
  // (join = 0): every meet-clause is 0, i.e. a conjunction over clauses of
  // disjunctions (some variable in the clause is 0).
  Dnf acc = Dnf::top();
  for (const auto& c : e.clauses) {
    Dnf d = Dnf::bot();
    for (int v : c) d = dnf_or(d, Dnf{{Assign{{v, false}}}});
    acc = dnf_and(acc, d);
    if (acc.is_false()) break;
  }
  return acc;
}

Dnf cof_normalize(const CofPtr& phi, int n) {
  switch (phi->kind) {
    case Cof::Kind::Top: return Dnf::top();
    case Cof::Kind::Bot: return Dnf::bot();
    case Cof::Kind::Eq: return dnf_eq(iv_normalize(phi->arg, n), phi->eps);
    case Cof::Kind::And:
      return dnf_and(cof_normalize(phi->lhs, n), cof_normalize(phi->rhs, n));
    case Cof::Kind::Or:
      return dnf_or(cof_normalize(phi->lhs, n), cof_normalize(phi->rhs, n));
  }
  return Dnf::bot();
}

bool cof_entails(const Dnf& phi, const Dnf& psi) {
  for (const auto& alpha : phi.clauses) {
    bool ok = false;
    for (const auto& beta : psi.clauses) {
      if (assign_extends(alpha, beta)) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

Dnf cof_forall(const Dnf& phi, int v) {
  // A clause binding the quantified variable holds at no substitution
  // instance that leaves the variable generic, so only clauses not
  // mentioning it survive.
  std::vector<Assign> cs;
  for (const auto& a : phi.clauses) {
    bool mentions = false;
    for (auto& [x, _] : a)
      if (x == v) {
        mentions = true;
        break;
      }
    if (!mentions) cs.push_back(a);
  }
  return dnf_prune(std::move(cs));
}

Dnf cof_restrict(const Dnf& phi, const Assign& as) {
  std::vector<Assign> cs;
  for (const auto& clause : phi.clauses) {
    Assign residual;
    bool dead = false;
    for (const auto& bind : clause) {
      auto it =
          std::find_if(as.begin(), as.end(),
                       [&](const auto& p) { return p.first == bind.first; });
      if (it == as.end()) {
        residual.push_back(bind);
      } else if (it->second != bind.second) {
        dead = true;
        break;
      }
    }
    if (!dead) cs.push_back(std::move(residual));
  }
  return dnf_prune(std::move(cs));
}

IvElem iv_restrict(const IvElem& e, const Assign& as) {
  IvElem out = e;
  for (const auto& [v, val] : as) out = iv_assign(out, v, val);
  return out;
}

Dnf cof_subst(const Dnf& phi, const std::map<int, IvElem>& sub) {
  Dnf acc = Dnf::bot();
  for (const auto& clause : phi.clauses) {
    Dnf c = Dnf::top();
    for (const auto& [v, val] : clause) {
      auto it = sub.find(v);
      IvElem e = it == sub.end() ? IvElem::var(v) : it->second;
      c = dnf_and(c, dnf_eq(e, val));
      if (c.is_false()) break;
    }
    acc = dnf_or(acc, c);
  }
  return acc;
}

Dnf cof_rename(const Dnf& phi, const std::map<int, int>& ren) {
  std::vector<Assign> cs;
  for (const auto& clause : phi.clauses) {
    Assign a;
    for (auto [v, val] : clause) {
      auto it = ren.find(v);
      a.emplace_back(it == ren.end() ? v : it->second, val);
    }
    std::sort(a.begin(), a.end());
    cs.push_back(std::move(a));
  }
  return dnf_prune(std::move(cs));
}

std::string cof_show(const Dnf& d, const std::vector<std::string>* names) {
  auto var_name = [&](int v) -> std::string {
    if (names && v >= 0 && v < (int)names->size()) return (*names)[v];
    return "i" + std::to_string(v);
  };
  if (d.is_false()) return "bot";
  if (d.is_true()) return "top";
  std::ostringstream o;
  bool firstc = true;
  for (const auto& clause : d.clauses) {
    if (!firstc) o << " \\/ ";
    firstc = false;
    if (clause.size() > 1 && d.clauses.size() > 1) o << "(";
    bool firstb = true;
    for (auto& [v, val] : clause) {
      if (!firstb) o << " /\\ ";
      firstb = false;
      o << var_name(v) << "=" << (val ? "1" : "0");
    }
    if (clause.size() > 1 && d.clauses.size() > 1) o << ")";
  }
  return o.str();
}

} // namespace ctt
