#ifndef CUBECK_TERM_HPP
#define CUBECK_TERM_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "interval.hpp"

// Core syntax, de Bruijn indices. One node struct for every former; the
// payload conventions are listed next to each kind.

namespace ctt {

struct Term;
using Tm = std::shared_ptr<const Term>;

struct Term {
  enum class K {
    Var,     // i0 = index, s = name hint
    Def,     // s = global name
    U,       // i0 = level
    Pi,      // ts = {dom, cod<1>}, s = binder
    Lam,     // ts = {body<1>}, s = binder
    App,     // ts = {fn, arg}
    Sigma,   // ts = {dom, cod<1>}, s
    Pair,    // ts = {fst, snd}
    Fst,     // ts = {pair}
    Snd,     // ts = {pair}
    PathT,   // ts = {A, lhs, rhs}
    LineT,   // ts = {cod<1 interval>}, s
    ILam,    // ts = {body<1 interval>}, s
    IApp,    // ts = {fn} or {fn, lhs, rhs} when endpoints known; iv = arg
    Nat,     //
    NatLit,  // n64
    Suc,     // ts = {n}
    NatRec,  // ts = {motive, z, s, n}
    Unit,    //
    Star,    //
    Empty,   //
    EmptyRec,// ts = {motive, arg}
    Sum,     // ts = {A, B}
    Inl,     // ts = {a}
    Inr,     // ts = {b}
    SumCase, // ts = {motive, onl, onr, scrut}
    IdT,     // ts = {A, a, b}
    IdIn,    // cof, ts = {path}; refl is IdIn(top, <_> a)
    IdJ,     // ts = {A, a, motive<2>, d, b, prf}
    LiftT,   // ts = {A}
    LiftUp,  // ts = {a}
    LiftDown,// ts = {a}
    GlueT,   // ts = {base}; sys branches: Pair(T, equiv)
    GlueI,   // ts = {base, glueTy}; sys branches: partial element
    Unglue,  // ts = {g, glueTy}
    HComp,   // i0 = eps; ts = {A, cap}; sys branches bind one interval var
    Transp,  // i0 = dir (0 fwd / 1 bwd); cof; ts = {line<1 interval>, a}
    HitT,    // s = decl; ts = params
    HitCtor, // s = decl; i0 = ctor idx; i1 = #params; ts = params ++ args
    HitElim, // s = decl; i1 = #params; ts = params ++ {motive} ++ clauses ++ {scrut}
    CofT,    // cof
    CofTT,   // cof (the sole element of [cof])
    IvArg,   // iv (an interval in an argument list)
    CofArg,  // cof (a cofibration in an argument list)
  };

  K k;
  int i0 = 0;
  int i1 = 0;
  uint64_t n64 = 0;
  std::string s;
  IvPtr iv;
  CofPtr cof;
  std::vector<Tm> ts;
  std::vector<std::pair<CofPtr, Tm>> sys;
};

Tm mk(Term::K k);
Tm mk(Term::K k, std::vector<Tm> ts);
Tm mk_var(int idx, std::string name = "");
Tm mk_def(std::string name);
Tm mk_u(int level);
Tm mk_natlit(uint64_t n);
Tm mk_iapp(Tm fn, IvPtr arg);
Tm mk_iapp(Tm fn, IvPtr arg, Tm lhs, Tm rhs);
Tm mk_cof_term(Term::K k, CofPtr c);
Tm mk_hcomp(int eps, Tm a, std::vector<std::pair<CofPtr, Tm>> sys, Tm cap);
Tm mk_transp(int dir, Tm line, CofPtr phi, Tm arg);

// shift free variables >= cutoff by delta
Tm shift(const Tm& t, int delta, int cutoff = 0);

} // namespace ctt

#endif
