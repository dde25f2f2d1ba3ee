#ifndef CUBECK_HIT_HPP
#define CUBECK_HIT_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "term.hpp"
#include "value.hpp"

// Higher inductive types as cofibrant polynomials with reductions: a list of
// constructors, each with parameter arguments (term / interval / cofibration
// kinded), recursive children indexed by term telescopes, and reductions
// (cofibration, target) that fire eagerly during evaluation. Fibrant
// declarations compose through kernel-level hcomp values rather than a
// dedicated constructor.

namespace ctt {

struct HitArgSpec {
  enum class K { Term, Interval, Cof, Child } k;
  std::string name;
  Tm type;              // Term kind: type in scope of decl params + earlier args
  std::vector<Tm> tele; // Child kind: index telescope (term types), same scope
                        // extended by the telescope prefix
};

struct HitRed {
  CofPtr cof; // in scope of decl params + ctor args
  Tm target;  // same scope, of type self
};

struct HitCtorSpec {
  std::string name;
  std::vector<HitArgSpec> args;
  std::vector<HitRed> reds;
};

struct HitDecl {
  std::string name;
  std::vector<std::pair<std::string, Tm>> params; // telescope
  int level = 0; // universe of the type former
  int fib = 2;   // 0: no composition, 1: hcomp from 0 only, 2: both ends
  std::vector<HitCtorSpec> ctors;
  bool kernel_transport = false; // bespoke transport (the K family)

  int ctor_index(const std::string& n) const;
};

struct GlobalDef {
  std::string name;
  Val type;
  Val value; // null for axioms/opaque
  Tm type_tm;
  Tm body_tm; // null for axioms
  std::string ref_tag;
  std::string origin_file;
};

struct Globals {
  std::map<std::string, GlobalDef> defs;
  std::map<std::string, std::shared_ptr<const HitDecl>> hits;
  std::vector<std::string> def_order;

  const GlobalDef* find_def(const std::string& n) const {
    auto it = defs.find(n);
    return it == defs.end() ? nullptr : &it->second;
  }
  const HitDecl* find_hit(const std::string& n) const {
    auto it = hits.find(n);
    return it == hits.end() ? nullptr : it->second.get();
  }
};

// registers the five builtin declarations
void install_builtin_hits(Globals& g);

// environment for interpreting a constructor/reduction body: decl params
// then ctor args, in declaration order
Env hit_scope_env(const std::shared_ptr<const Globals>& g,
                  const std::vector<HArg>& params,
                  const std::vector<HArg>& args);

struct CheckError : std::exception {
  std::string msg;
  explicit CheckError(std::string m) : msg(std::move(m)) {}
  const char* what() const noexcept override { return msg.c_str(); }
};

} // namespace ctt

#endif
