#ifndef CUBECK_VALUE_HPP
#define CUBECK_VALUE_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "term.hpp"

// Semantic domain for normalization by evaluation. Values use de Bruijn
// levels; interval data lives in canonical IvElem / Dnf form over levels.

namespace ctt {

struct Value;
using Val = std::shared_ptr<const Value>;

struct Globals;
struct HitDecl;

struct EnvEntry {
  // Generic entries stand for "the variable at this level, whichever kind";
  // they let quoted values be re-evaluated under interval substitutions
  // without tracking binder kinds separately.
  enum class K { Term, Interval, Generic } k;
  Val v;
  IvElem iv;
  int glvl = -1;
};

struct Env {
  std::vector<EnvEntry> entries;
  std::shared_ptr<const Globals> globals;

  Env push_val(Val v) const {
    Env e = *this;
    e.entries.push_back(EnvEntry{EnvEntry::K::Term, std::move(v), {}, -1});
    return e;
  }
  Env push_iv(IvElem iv) const {
    Env e = *this;
    e.entries.push_back(
        EnvEntry{EnvEntry::K::Interval, nullptr, std::move(iv), -1});
    return e;
  }
  Env push_generic(int lvl) const {
    Env e = *this;
    e.entries.push_back(EnvEntry{EnvEntry::K::Generic, nullptr, {}, lvl});
    return e;
  }
  const EnvEntry& lookup(int idx) const { return entries[entries.size() - 1 - idx]; }
};

struct Closure {
  Tm body;
  Env env;
  // natives receive the ambient level so they can mint fresh variables
  std::function<Val(int, Val)> native; // used when body == nullptr
  std::function<Val(int, const IvElem&)> inative;
};

Closure make_native(std::function<Val(int, Val)> f);
Closure make_inative(std::function<Val(int, const IvElem&)> f);

// hcomp/glue system branch over a value cofibration
struct VBranch {
  Dnf cof;
  Closure clo; // binds one interval variable for hcomp; none for glue parts
};

struct GlueBranch {
  Dnf cof;
  Val ty;
  Val equiv;
};

// argument of a HIT type/constructor: a term value, interval, or cof
struct HArg {
  enum class K { Term, Interval, Cof } k;
  Val v;
  IvElem iv;
  Dnf cof;
  static HArg term(Val x) { return {K::Term, std::move(x), {}, {}}; }
  static HArg interval(IvElem e) { return {K::Interval, nullptr, std::move(e), {}}; }
  static HArg cofib(Dnf d) { return {K::Cof, nullptr, {}, std::move(d)}; }
};

struct SpineElem {
  enum class K {
    App,      // v
    IApp,     // iv; lhs/rhs endpoint values may be null
    Fst,
    Snd,
    NatRec,   // vs = {motive, z, s}
    EmptyRec, // vs = {motive}
    SumCase,  // vs = {motive, onl, onr}
    IdJ,      // vs = {A, a, motive, d, b}
    Unglue,   // vs = {glue type}
    LiftDown,
    HitElim,  // decl; vs = params ++ {motive} ++ clauses
  } k;
  Val v;
  IvElem iv;
  Val lhs, rhs;
  std::vector<Val> vs;
  const HitDecl* decl = nullptr;
};

struct Neutral {
  int head_lvl = -1;    // variable level, or
  std::string head_def; // axiom / opaque global, or
  Val head_v;           // a stuck canonical value (hcomp at a sum, ...)
  std::vector<SpineElem> spine;
};

struct Value {
  enum class K {
    U,        // i0 = level
    Pi,       // dom, clo
    Lam,      // clo
    Sigma,    // dom, clo
    Pair,     // v0, v1
    PathT,    // v0 = A, v1, v2
    LineT,    // clo (interval)
    ILam,     // clo (interval)
    Nat,
    Num,      // n64 + optional v0 tail (suc^n64 tail)
    Unit,
    Star,
    Empty,
    Sum,      // v0, v1
    Inl,      // v0
    Inr,      // v0
    IdT,      // v0, v1, v2
    IdIn,     // cof, v0 = path
    LiftT,    // v0
    LiftUp,   // v0
    GlueT,    // v0 = base; gsys
    GlueI,    // v0 = base; branches (partial element); v1 = glue type
    HComp,    // i0 = eps; v0 = type; branches; v1 = cap   (canonical or stuck)
    Transp,   // i0 = dir; clo = line; cof; v0 = arg        (stuck)
    HitT,     // decl; hargs
    Ctor,     // decl; i0 = ctor idx; hargs = type params; args = ctor args
    CofT,     // cof
    CofTT,
    Ne,       // neutral
  } k;

  int i0 = 0;
  uint64_t n64 = 0;
  Val v0, v1, v2;
  Closure clo;
  Dnf cof;
  std::vector<VBranch> branches;
  std::vector<GlueBranch> gsys;
  const HitDecl* decl = nullptr;
  std::vector<HArg> hargs; // HIT type parameters
  std::vector<HArg> cargs; // constructor arguments
  Neutral ne;
};

Val mkv(Value::K k);
Val vU(int level);
Val vNat();
Val vUnit();
Val vStar();
Val vEmpty();
Val vNum(uint64_t n, Val tail = nullptr);
Val vVar(int lvl); // neutral variable
Val vPair(Val a, Val b);
Val vInl(Val a);
Val vInr(Val b);
Val vLam(Closure c);
Val vILam(Closure c);
Val vPi(Val dom, Closure cod);
Val vSigma(Val dom, Closure cod);
Val vPathT(Val a, Val l, Val r);
Val vNe(Neutral n);

bool is_neutral(const Val& v);

} // namespace ctt

#endif
