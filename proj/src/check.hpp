#ifndef CUBECK_CHECK_HPP
#define CUBECK_CHECK_HPP

#include "conv.hpp"
#include "raw.hpp"

// Bidirectional elaboration from surface syntax to core terms. The context
// carries one telescope with kind tags plus the conjunction of cofibration
// assumptions in canonical form.

namespace ctt {

struct CtxEntry {
  enum class K { Term, Interval } k;
  std::string name;
  Val type; // Term entries
};

struct Ctx {
  std::shared_ptr<const Globals> globals;
  std::vector<CtxEntry> entries;
  Env env;
  Dnf assumptions = Dnf::top();

  int lvl() const { return (int)entries.size(); }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (auto& e : entries) out.push_back(e.name);
    return out;
  }
  Ctx bind_term(const std::string& n, Val ty) const;
  Ctx bind_interval(const std::string& n) const;
  Ctx assume(const Dnf& d) const;
  int find(const std::string& n) const; // de Bruijn index or -1
  ConvCtx cc() const { return ConvCtx{lvl(), globals, assumptions}; }
};

Ctx make_ctx(std::shared_ptr<const Globals> g);

struct ElabError : std::exception {
  std::string msg;
  Pos pos;
  std::string expected, actual; // printed normal forms when applicable
  ElabError(std::string m, Pos p) : msg(std::move(m)), pos(p) {}
  const char* what() const noexcept override { return msg.c_str(); }
};

Val eval_ctx(const Ctx& ctx, const Tm& t);

std::pair<Tm, Val> elab_infer(const Ctx& ctx, const Rw& r);
Tm elab_check(const Ctx& ctx, const Rw& r, const Val& ty);
// a type together with its universe level
std::pair<Tm, int> elab_type(const Ctx& ctx, const Rw& r);
IvPtr elab_iv(const Ctx& ctx, const Rw& r);
CofPtr elab_cof(const Ctx& ctx, const Rw& r);

// expected type of the eliminator clause for one constructor
Val hit_clause_type(int lvl, const std::shared_ptr<const Globals>& g,
                    const HitDecl* d, int cidx,
                    const std::vector<HArg>& params, const Val& motive);

// the eliminator's boundary conditions for every reduction of the ctor
void check_elim_boundaries(const Ctx& ctx, const HitDecl* d,
                           const std::vector<HArg>& params,
                           const Val& motive, const std::vector<Val>& clauses,
                           Pos pos);

// register a user HIT declaration (type checks components)
std::shared_ptr<const HitDecl> elab_hit_decl(const Ctx& ctx,
                                             const RawDecl& rd);

} // namespace ctt

#endif
