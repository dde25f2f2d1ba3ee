#ifndef CUBECK_RAW_HPP
#define CUBECK_RAW_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

// Surface syntax tree with names and source positions; the elaborator turns
// it into core terms, resolving term/interval/cofibration kinds from types.

namespace ctt {

struct Pos {
  int line = 0, col = 0;
};

struct Raw;
using Rw = std::shared_ptr<const Raw>;

struct Raw {
  enum class K {
    Var,     // s
    U,       // i0 = level
    Num,     // n64 (numeral or interval endpoint, by kind)
    App,     // rs = {fn, arg}
    Lam,     // s, rs = {body}
    Pi,      // s, rs = {dom, cod}; also used for lines when dom is IKw
    Sigma,   // s, rs = {dom, cod}
    Pair,    // rs = {a, b}
    Fst,     // rs = {p}
    Snd,     // rs = {p}
    PathT,   // rs = {A, a, b}
    IKw,     // the interval keyword in binder positions
    Meet,    // rs = {a, b}
    Join,    // rs = {a, b}
    CofEq,   // rs = {r}; i0 = endpoint
    CofTop,
    CofBot,
    Nat,
    Suc,      // rs = {n}
    NatRec,   // rs = {motive, z, s, n}
    Unit,
    Star,
    Empty,
    EmptyRec, // rs = {motive, arg}
    Sum,      // rs = {A, B}
    Inl,      // rs = {a}
    Inr,      // rs = {b}
    SumCase,  // rs = {motive, f, g, scrut}
    Refl,
    IdT,      // rs = {A, a, b}
    IdJ,      // rs = {motive, d, prf}
    LiftT,    // rs = {A}
    LiftUp,   // rs = {a}
    LiftDown, // rs = {a}
    GlueT,    // rs = {base}; sys (branch: pair term)
    GlueI,    // rs = {base}; sys
    Unglue,   // rs = {g}
    HComp,    // i0 = eps; rs = {A, cap}; sys (branches bind s2 as interval)
    Comp,     // i0 = eps; rs = {line, cap}; sys
    Transp,   // i0 = dir; rs = {line, cofr, a}
    Ann,      // rs = {tm, ty}
  };

  K k;
  int i0 = 0;
  uint64_t n64 = 0;
  std::string s;
  std::vector<Rw> rs;
  std::vector<std::pair<Rw, Rw>> sys; // (cof, branch)
  std::string s2;                     // binder name for system branches
  Pos pos;
};

Rw mkraw(Raw::K k, Pos pos, std::vector<Rw> rs = {});

// ----------------------------------------------------------- declarations

struct RawHitArg {
  std::string name;
  Rw type;     // null for interval args
  bool is_interval = false;
  bool is_self = false;              // child: iterated Pi ending in self
  std::vector<std::pair<std::string, Rw>> tele; // child index telescope
  Pos pos;
};

struct RawHitRed {
  Rw cof;
  Rw target;
  Pos pos;
};

struct RawHitCtor {
  std::string name;
  std::vector<RawHitArg> args;
  std::vector<RawHitRed> reds;
  Pos pos;
};

struct RawDecl {
  enum class K { Def, Axiom, Hit, Import } k;
  std::string name;
  Rw type;
  Rw body;
  std::vector<std::pair<std::string, Rw>> params; // hit parameters
  std::vector<RawHitCtor> ctors;
  bool fib = true; // hit: add the composition layer
  std::string ref_tag;
  Pos pos;
};

struct RawFile {
  std::string path;
  std::vector<RawDecl> decls;
};

struct ParseError : std::exception {
  std::string msg;
  Pos pos;
  ParseError(std::string m, Pos p) : msg(std::move(m)), pos(p) {}
  const char* what() const noexcept override { return msg.c_str(); }
};

RawFile parse_file(const std::string& path, const std::string& text);

} // namespace ctt

#endif
