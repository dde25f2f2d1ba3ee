#include "term.hpp"

namespace ctt {

Tm mk(Term::K k) {
  auto t = std::make_shared<Term>();
  const_cast<Term*>(t.get())->k = k;
  return t;
}

Tm mk(Term::K k, std::vector<Tm> ts) {
  auto t = std::make_shared<Term>();
  auto* m = const_cast<Term*>(t.get());
  m->k = k;
  m->ts = std::move(ts);
  return t;
}

Tm mk_var(int idx, std::string name) {
  auto t = std::make_shared<Term>();
  auto* m = const_cast<Term*>(t.get());
  m->k = Term::K::Var;
  m->i0 = idx;
  m->s = std::move(name);
  return t;
}

Tm mk_def(std::string name) {
  auto t = std::make_shared<Term>();
  auto* m = const_cast<Term*>(t.get());
  m->k = Term::K::Def;
  m->s = std::move(name);
  return t;
}

Tm mk_u(int level) {
  auto t = std::make_shared<Term>();
  auto* m = const_cast<Term*>(t.get());
  m->k = Term::K::U;
  m->i0 = level;
  return t;
}

Tm mk_natlit(uint64_t n) {
  auto t = std::make_shared<Term>();
  auto* m = const_cast<Term*>(t.get());
  m->k = Term::K::NatLit;
  m->n64 = n;
  return t;
}

Tm mk_iapp(Tm fn, IvPtr arg) {
  auto t = std::make_shared<Term>();
  auto* m = const_cast<Term*>(t.get());
  m->k = Term::K::IApp;
  m->ts = {std::move(fn)};
  m->iv = std::move(arg);
  return t;
}

Tm mk_iapp(Tm fn, IvPtr arg, Tm lhs, Tm rhs) {
  auto t = std::make_shared<Term>();
  auto* m = const_cast<Term*>(t.get());
  m->k = Term::K::IApp;
  m->ts = {std::move(fn), std::move(lhs), std::move(rhs)};
  m->iv = std::move(arg);
  return t;
}

Tm mk_cof_term(Term::K k, CofPtr c) {
  auto t = std::make_shared<Term>();
  auto* m = const_cast<Term*>(t.get());
  m->k = k;
  m->cof = std::move(c);
  return t;
}

Tm mk_hcomp(int eps, Tm a, std::vector<std::pair<CofPtr, Tm>> sys, Tm cap) {
  auto t = std::make_shared<Term>();
  auto* m = const_cast<Term*>(t.get());
  m->k = Term::K::HComp;
  m->i0 = eps;
  m->ts = {std::move(a), std::move(cap)};
  m->sys = std::move(sys);
  return t;
}

Tm mk_transp(int dir, Tm line, CofPtr phi, Tm arg) {
  auto t = std::make_shared<Term>();
  auto* m = const_cast<Term*>(t.get());
  m->k = Term::K::Transp;
  m->i0 = dir;
  m->cof = std::move(phi);
  m->ts = {std::move(line), std::move(arg)};
  return t;
}

namespace {

IvPtr shift_iv(const IvPtr& t, int delta, int cutoff) {
  if (!t) return t;
  switch (t->kind) {
    case Iv::Kind::Zero:
    case Iv::Kind::One: return t;
    case Iv::Kind::Var:
      return t->var >= cutoff ? Iv::mkvar(t->var + delta) : t;
    case Iv::Kind::Meet:
      return Iv::meet(shift_iv(t->lhs, delta, cutoff),
                      shift_iv(t->rhs, delta, cutoff));
    case Iv::Kind::Join:
      return Iv::join(shift_iv(t->lhs, delta, cutoff),
                      shift_iv(t->rhs, delta, cutoff));
  }
  return t;
}

CofPtr shift_cof(const CofPtr& c, int delta, int cutoff) {
  if (!c) return c;
  switch (c->kind) {
    case Cof::Kind::Top:
    case Cof::Kind::Bot: return c;
    case Cof::Kind::Eq: return Cof::eq(shift_iv(c->arg, delta, cutoff), c->eps);
    case Cof::Kind::And:
      return Cof::conj(shift_cof(c->lhs, delta, cutoff),
                       shift_cof(c->rhs, delta, cutoff));
    case Cof::Kind::Or:
      return Cof::disj(shift_cof(c->lhs, delta, cutoff),
                       shift_cof(c->rhs, delta, cutoff));
  }
  return c;
}

int binder_arity(Term::K k, size_t child_index) {
  using K = Term::K;
  switch (k) {
    case K::Pi:
    case K::Sigma: return child_index == 1 ? 1 : 0;
    case K::Lam:
    case K::ILam:
    case K::LineT:
    case K::Transp: return child_index == 0 ? 1 : 0;
    default: return 0;
  }
}

} // namespace

Tm shift(const Tm& t, int delta, int cutoff) {
  if (!t) return t;
  using K = Term::K;
  if (t->k == K::Var)
    return t->i0 >= cutoff ? mk_var(t->i0 + delta, t->s) : t;
  auto out = std::make_shared<Term>(*t);
  auto* m = const_cast<Term*>(out.get());
  m->iv = shift_iv(t->iv, delta, cutoff);
  m->cof = shift_cof(t->cof, delta, cutoff);
  for (size_t i = 0; i < m->ts.size(); ++i)
    m->ts[i] = shift(t->ts[i], delta, cutoff + binder_arity(t->k, i));
  for (auto& [c, b] : m->sys) {
    c = shift_cof(c, delta, cutoff);
    // system branches bind one interval variable
    b = shift(b, delta, cutoff + 1);
  }
  return out;
}

} // namespace ctt
