#include "check.hpp"

#include <sstream>

#include "pretty.hpp"

namespace ctt {

Ctx make_ctx(std::shared_ptr<const Globals> g) {
  Ctx c;
  c.globals = std::move(g);
  c.env.globals = c.globals;
  return c;
}

Ctx Ctx::bind_term(const std::string& n, Val ty) const {
  Ctx c = *this;
  c.entries.push_back(CtxEntry{CtxEntry::K::Term, n, std::move(ty)});
  c.env = c.env.push_val(vVar(lvl()));
  return c;
}

Ctx Ctx::bind_interval(const std::string& n) const {
  Ctx c = *this;
  c.entries.push_back(CtxEntry{CtxEntry::K::Interval, n, nullptr});
  c.env = c.env.push_iv(IvElem::var(lvl()));
  return c;
}

Ctx Ctx::assume(const Dnf& d) const {
  Ctx c = *this;
  c.assumptions = dnf_and(c.assumptions, d);
  return c;
}

int Ctx::find(const std::string& n) const {
  for (int i = (int)entries.size() - 1; i >= 0; --i)
    if (entries[i].name == n) return (int)entries.size() - 1 - i;
  return -1;
}

Val eval_ctx(const Ctx& ctx, const Tm& t) {
  return eval(ctx.lvl(), ctx.env, t);
}

namespace {

[[noreturn]] void err(const Ctx& ctx, Pos pos, const std::string& msg) {
  (void)ctx;
  throw ElabError(msg, pos);
}

[[noreturn]] void mismatch(const Ctx& ctx, Pos pos, const Val& expected,
                           const Val& actual) {
  ElabError e("type mismatch", pos);
  e.expected = show_term(quote(ctx.lvl(), expected), ctx.names());
  e.actual = show_term(quote(ctx.lvl(), actual), ctx.names());
  e.msg = "type mismatch: expected " + e.expected + ", got " + e.actual;
  throw e;
}

void require_conv(const Ctx& ctx, Pos pos, const Val& got, const Val& want) {
  if (!conv(ctx.cc(), got, want, nullptr)) mismatch(ctx, pos, want, got);
}

void require_conv_at(const Ctx& ctx, Pos pos, const Val& a, const Val& b,
                     const Val& ty, const std::string& what) {
  if (!conv(ctx.cc(), a, b, ty)) {
    ElabError e(what, pos);
    e.expected = show_term(quote(ctx.lvl(), b), ctx.names());
    e.actual = show_term(quote(ctx.lvl(), a), ctx.names());
    e.msg = what + ": " + e.actual + " is not " + e.expected;
    throw e;
  }
}

int level_of_type(const Ctx& ctx, Pos pos, const Val& ty) {
  if (ty->k == Value::K::U) return ty->i0;
  err(ctx, pos, "expected a universe");
}

bool is_interval_raw(const Ctx& ctx, const Rw& r) {
  switch (r->k) {
    case Raw::K::Num: return r->n64 <= 1;
    case Raw::K::Meet:
    case Raw::K::Join: return true;
    case Raw::K::Var: {
      int idx = ctx.find(r->s);
      return idx >= 0 &&
             ctx.entries[ctx.entries.size() - 1 - idx].k ==
                 CtxEntry::K::Interval;
    }
    default: return false;
  }
}

Tm ivarg_term(IvPtr iv) {
  auto t = std::make_shared<Term>();
  auto* m = const_cast<Term*>(t.get());
  m->k = Term::K::IvArg;
  m->iv = std::move(iv);
  return t;
}

// ---------------------------------------------------------------- HIT use

struct CtorRef {
  const HitDecl* decl = nullptr;
  int cidx = -1;
};

CtorRef find_ctor(const Globals& g, const std::string& name) {
  for (auto& [dn, d] : g.hits) {
    int i = d->ctor_index(name);
    if (i >= 0) return CtorRef{d.get(), i};
  }
  return {};
}

const HitDecl* find_elim(const Globals& g, const std::string& name) {
  if (name.size() < 6 || name.substr(name.size() - 5) != "-elim")
    return nullptr;
  return g.find_hit(name.substr(0, name.size() - 5));
}

// value of the child function type Pi(tele) -> self
Val child_type_value(int lvl, const std::shared_ptr<const Globals>& g,
                     const std::vector<Tm>& tele, size_t idx, Env scope,
                     const Val& self) {
  if (idx == tele.size()) return self;
  Val dom = eval(lvl, scope, tele[idx]);
  auto telec = tele;
  auto gg = g;
  Val selfc = self;
  return vPi(dom, make_native([telec, idx, scope, selfc, gg](int l, Val x) {
               return child_type_value(l, gg, telec, idx + 1,
                                       scope.push_val(x), selfc);
             }));
}

// induction-hypothesis type Pi(tele). P (f xs)
Val ih_type_value(int lvl, const std::shared_ptr<const Globals>& g,
                  const std::vector<Tm>& tele, size_t idx, Env scope,
                  const Val& motive, const Val& f, std::vector<Val> xs) {
  if (idx == tele.size()) {
    Val fx = f;
    for (const Val& x : xs) fx = apply(lvl, fx, x);
    return apply(lvl, motive, fx);
  }
  Val dom = eval(lvl, scope, tele[idx]);
  auto telec = tele;
  auto gg = g;
  return vPi(dom, make_native([telec, idx, scope, motive, f, xs,
                               gg](int l, Val x) {
               auto xs2 = xs;
               xs2.push_back(x);
               return ih_type_value(l, gg, telec, idx + 1, scope.push_val(x),
                                    motive, f, xs2);
             }));
}

std::vector<Val> paramVals(const std::vector<HArg>& params) {
  std::vector<Val> out;
  for (const HArg& p : params) out.push_back(p.v);
  return out;
}

} // namespace

Val hit_clause_type(int lvl, const std::shared_ptr<const Globals>& g,
                    const HitDecl* d, int cidx,
                    const std::vector<HArg>& params, const Val& motive) {
  const HitCtorSpec& cs = d->ctors[cidx];
  // recursive construction over the args, collecting values
  std::function<Val(int, size_t, std::vector<HArg>)> go =
      [&, g, d, cidx, params, motive](int l, size_t idx,
                                      std::vector<HArg> collected) -> Val {
    const HitCtorSpec& cs2 = d->ctors[cidx];
    if (idx == cs2.args.size()) {
      // then the induction hypotheses, then the motive at the constructor
      std::function<Val(int, size_t)> ihs = [&, collected](int l2,
                                                           size_t cidx2) -> Val {
        // find next child at position >= cidx2
        size_t p = cidx2;
        while (p < cs2.args.size() && cs2.args[p].k != HitArgSpec::K::Child)
          ++p;
        if (p == cs2.args.size()) {
          Val ctor = hit_ctor(l2, g, d, cidx, params, collected);
          return apply(l2, motive, ctor);
        }
        // scope env for the child's telescope: params ++ args before p
        Env scope = hit_scope_env(g, params,
                                  std::vector<HArg>(collected.begin(),
                                                    collected.begin() + p));
        Val ihty = ih_type_value(l2, g, cs2.args[p].tele, 0, scope, motive,
                                 collected[p].v, {});
        size_t pnext = p + 1;
        auto ihs2 = ihs;
        return vPi(ihty, make_native([ihs2, pnext](int l3, Val) {
                     return ihs2(l3, pnext);
                   }));
      };
      return ihs(l, 0);
    }
    const HitArgSpec& spec = cs2.args[idx];
    Env scope = hit_scope_env(g, params, collected);
    switch (spec.k) {
      case HitArgSpec::K::Term: {
        Val dom = eval(l, scope, spec.type);
        auto goc = go;
        return vPi(dom, make_native([goc, idx, collected](int l2, Val x) {
                     auto c2 = collected;
                     c2.push_back(HArg::term(x));
                     return goc(l2, idx + 1, c2);
                   }));
      }
      case HitArgSpec::K::Interval: {
        auto goc = go;
        auto v = mkv(Value::K::LineT);
        const_cast<Value*>(v.get())->clo =
            make_inative([goc, idx, collected](int l2, const IvElem& i) {
              auto c2 = collected;
              c2.push_back(HArg::interval(i));
              return goc(l2, idx + 1, c2);
            });
        return v;
      }
      case HitArgSpec::K::Child: {
        Val self = hit_type(l, d, params);
        Val cty = child_type_value(l, g, spec.tele, 0, scope, self);
        auto goc = go;
        return vPi(cty, make_native([goc, idx, collected](int l2, Val f) {
                     auto c2 = collected;
                     c2.push_back(HArg::term(f));
                     return goc(l2, idx + 1, c2);
                   }));
      }
      case HitArgSpec::K::Cof:
        throw CheckError("cof constructor arguments unsupported");
    }
    throw CheckError("hit_clause_type");
  };
  return go(lvl, 0, {});
}

void check_elim_boundaries(const Ctx& ctx, const HitDecl* d,
                           const std::vector<HArg>& params,
                           const Val& motive, const std::vector<Val>& clauses,
                           Pos pos) {
  auto g = ctx.globals;
  for (size_t ci = 0; ci < d->ctors.size(); ++ci) {
    const HitCtorSpec& cs = d->ctors[ci];
    if (cs.reds.empty()) continue;
    // bind fresh variables for the constructor arguments
    Ctx c2 = ctx;
    std::vector<HArg> args;
    for (const HitArgSpec& spec : cs.args) {
      Env scope = hit_scope_env(g, params, args);
      switch (spec.k) {
        case HitArgSpec::K::Term: {
          Val ty = eval(c2.lvl(), scope, spec.type);
          args.push_back(HArg::term(vVar(c2.lvl())));
          c2 = c2.bind_term(spec.name, ty);
          break;
        }
        case HitArgSpec::K::Interval: {
          args.push_back(HArg::interval(IvElem::var(c2.lvl())));
          c2 = c2.bind_interval(spec.name);
          break;
        }
        case HitArgSpec::K::Child: {
          Val self = hit_type(c2.lvl(), d, params);
          Val cty =
              child_type_value(c2.lvl(), g, spec.tele, 0, scope, self);
          args.push_back(HArg::term(vVar(c2.lvl())));
          c2 = c2.bind_term(spec.name, cty);
          break;
        }
        case HitArgSpec::K::Cof:
          throw CheckError("cof constructor arguments unsupported");
      }
    }
    for (const HitRed& red : cs.reds) {
      Env scope = hit_scope_env(g, params, args);
      Dnf cof = eval_cof(scope, red.cof);
      if (cof.is_false()) continue;
      Ctx c3 = c2.assume(cof);
      // the eliminator value applied to the (reducing) constructor
      Val target = eval(c3.lvl(), scope, red.target);
      Val rhs = hit_elim(c3.lvl(), g, d, paramVals(params), motive, clauses,
                         target);
      // the clause applied to args and induction hypotheses
      Val ctorv = hit_ctor(c3.lvl(), g, d, (int)ci, params, args);
      // note: under the assumed cof the constructor reduces, so eliminate
      // the unreduced form by hand: clause args ++ ihs
      Val lhs = clauses[ci];
      for (const HArg& a : args) {
        if (a.k == HArg::K::Interval)
          lhs = iapply(c3.lvl(), lhs, a.iv);
        else
          lhs = apply(c3.lvl(), lhs, a.v);
      }
      for (size_t p = 0; p < cs.args.size(); ++p) {
        if (cs.args[p].k != HitArgSpec::K::Child) continue;
        int arity = (int)cs.args[p].tele.size();
        Val f = args[p].v;
        // \xs. elim (f xs)
        std::function<Val(int, std::vector<Val>)> ih =
            [&, f, arity](int l, std::vector<Val> xs) -> Val {
          if ((int)xs.size() == arity) {
            Val fx = f;
            for (const Val& x : xs) fx = apply(l, fx, x);
            return hit_elim(l, g, d, paramVals(params), motive, clauses, fx);
          }
          auto ihc = ih;
          return vLam(make_native([ihc, xs](int l2, Val x) {
            auto xs2 = xs;
            xs2.push_back(x);
            return ihc(l2, xs2);
          }));
        };
        lhs = apply(c3.lvl(), lhs, ih(c3.lvl(), {}));
      }
      Val at = apply(c3.lvl(), motive, ctorv);
      if (!conv(c3.cc(), lhs, rhs, at)) {
        ElabError e("eliminator clause for '" + cs.name +
                        "' breaks its boundary",
                    pos);
        e.actual = show_term(quote(c3.lvl(), lhs), c3.names());
        e.expected = show_term(quote(c3.lvl(), rhs), c3.names());
        e.msg = "eliminator clause for '" + cs.name +
                "' fails its boundary: " + e.actual + " is not " + e.expected;
        throw e;
      }
    }
  }
}

} // namespace ctt

// --------------------------------------------------------------- elaborate

namespace {

std::vector<Rw> spine_of(Rw r, Rw& head) {
  std::vector<Rw> args;
  while (r->k == Raw::K::App) {
    args.push_back(r->rs[1]);
    r = r->rs[0];
  }
  std::reverse(args.begin(), args.end());
  head = r;
  return args;
}

Tm quote_ctx(const Ctx& ctx, const Val& v) { return quote(ctx.lvl(), v); }

// apply an elaborated function (term + type) to one raw argument
std::pair<Tm, Val> apply_one(const Ctx& ctx, Pos pos, Tm fn_tm, Val fn_ty,
                             Val fn_val_unused, const Rw& arg) {
  (void)fn_val_unused;
  switch (fn_ty->k) {
    case Value::K::Pi: {
      Tm a = elab_check(ctx, arg, fn_ty->v0);
      Val av = eval_ctx(ctx, a);
      return {mk(Term::K::App, {fn_tm, a}),
              capply(ctx.lvl(), fn_ty->clo, av)};
    }
    case Value::K::PathT: {
      IvPtr r = elab_iv(ctx, arg);
      Tm lhs = quote_ctx(ctx, fn_ty->v1), rhs = quote_ctx(ctx, fn_ty->v2);
      return {mk_iapp(fn_tm, r, lhs, rhs), fn_ty->v0};
    }
    case Value::K::LineT: {
      IvPtr r = elab_iv(ctx, arg);
      IvElem rv = eval_iv(ctx.env, r);
      return {mk_iapp(fn_tm, r), capply(ctx.lvl(), fn_ty->clo, rv)};
    }
    default:
      err(ctx, pos, "application of a non-function");
  }
}

std::pair<Tm, Val> elab_hit_former(const Ctx& ctx, Pos pos, const HitDecl* d,
                                   const std::vector<Rw>& args) {
  if (args.size() != d->params.size())
    err(ctx, pos,
        d->name + " expects " + std::to_string(d->params.size()) +
            " parameter(s)");
  std::vector<Tm> ps;
  std::vector<HArg> pvals;
  for (size_t i = 0; i < args.size(); ++i) {
    Env scope = hit_scope_env(ctx.globals, pvals, {});
    Val pty = eval(ctx.lvl(), scope, d->params[i].second);
    Tm p = elab_check(ctx, args[i], pty);
    ps.push_back(p);
    pvals.push_back(HArg::term(eval_ctx(ctx, p)));
  }
  Tm t = mk(Term::K::HitT, std::move(ps));
  const_cast<Term*>(t.get())->s = d->name;
  return {t, vU(d->level)};
}

std::pair<Tm, Val> elab_elim(const Ctx& ctx, Pos pos, const HitDecl* d,
                             const std::vector<Rw>& args) {
  size_t nclauses = d->ctors.size();
  if (args.size() != nclauses + 2)
    err(ctx, pos,
        d->name + "-elim expects a motive, " + std::to_string(nclauses) +
            " clause(s) and a scrutinee");
  // elaborate the scrutinee first to learn the parameters
  auto [scrut_tm, scrut_ty] = elab_infer(ctx, args.back());
  if (scrut_ty->k != Value::K::HitT || scrut_ty->decl != d)
    err(ctx, pos, "eliminator scrutinee is not of type " + d->name);
  const std::vector<HArg>& params = scrut_ty->hargs;
  // motive : (x : T) -> U_k for some k
  Val self = hit_type(ctx.lvl(), d, params);
  auto [motive_tm, motive_ty] = elab_infer(ctx, args[0]);
  Val mv = eval_ctx(ctx, motive_tm);
  {
    bool ok = motive_ty->k == Value::K::Pi &&
              conv(ctx.cc(), motive_ty->v0, self, nullptr);
    if (ok) {
      Val cod = capply(ctx.lvl() + 1, motive_ty->clo, vVar(ctx.lvl()));
      ok = cod->k == Value::K::U;
    }
    if (!ok) err(ctx, pos, "eliminator motive must map " + d->name +
                               " into a universe");
  }
  std::vector<Tm> clause_tms;
  std::vector<Val> clause_vals;
  for (size_t i = 0; i < nclauses; ++i) {
    Val cty = hit_clause_type(ctx.lvl(), ctx.globals, d, (int)i, params, mv);
    Tm c = elab_check(ctx, args[1 + i], cty);
    clause_tms.push_back(c);
    clause_vals.push_back(eval_ctx(ctx, c));
  }
  check_elim_boundaries(ctx, d, params, mv, clause_vals, pos);
  std::vector<Tm> ts;
  for (const HArg& p : params) ts.push_back(quote_ctx(ctx, p.v));
  ts.push_back(motive_tm);
  for (Tm& c : clause_tms) ts.push_back(c);
  ts.push_back(scrut_tm);
  Tm t = mk(Term::K::HitElim, std::move(ts));
  auto* m = const_cast<Term*>(t.get());
  m->s = d->name;
  m->i1 = (int)params.size();
  Val sv = eval_ctx(ctx, scrut_tm);
  return {t, apply(ctx.lvl(), mv, sv)};
}

Tm elab_ctor(const Ctx& ctx, Pos pos, const CtorRef& cr,
             const std::vector<Rw>& args, const Val& want) {
  const HitDecl* d = cr.decl;
  const HitCtorSpec& cs = d->ctors[cr.cidx];
  if (want->k != Value::K::HitT || want->decl != d)
    err(ctx, pos, "constructor '" + cs.name + "' checked against a type "
                  "that is not " + d->name);
  if (args.size() != cs.args.size())
    err(ctx, pos, "constructor '" + cs.name + "' expects " +
                      std::to_string(cs.args.size()) + " argument(s)");
  const std::vector<HArg>& params = want->hargs;
  std::vector<Tm> ts;
  for (const HArg& p : params) ts.push_back(quote_ctx(ctx, p.v));
  std::vector<HArg> avals;
  for (size_t i = 0; i < args.size(); ++i) {
    const HitArgSpec& spec = cs.args[i];
    Env scope = hit_scope_env(ctx.globals, params, avals);
    switch (spec.k) {
      case HitArgSpec::K::Term: {
        Val ty = eval(ctx.lvl(), scope, spec.type);
        Tm a = elab_check(ctx, args[i], ty);
        ts.push_back(a);
        avals.push_back(HArg::term(eval_ctx(ctx, a)));
        break;
      }
      case HitArgSpec::K::Interval: {
        IvPtr r = elab_iv(ctx, args[i]);
        ts.push_back(ivarg_term(r));
        avals.push_back(HArg::interval(eval_iv(ctx.env, r)));
        break;
      }
      case HitArgSpec::K::Child: {
        Val self = hit_type(ctx.lvl(), d, params);
        Val cty = child_type_value(ctx.lvl(), ctx.globals, spec.tele, 0,
                                   scope, self);
        Tm a = elab_check(ctx, args[i], cty);
        ts.push_back(a);
        avals.push_back(HArg::term(eval_ctx(ctx, a)));
        break;
      }
      case HitArgSpec::K::Cof:
        err(ctx, pos, "cof constructor arguments unsupported");
    }
  }
  Tm t = mk(Term::K::HitCtor, std::move(ts));
  auto* m = const_cast<Term*>(t.get());
  m->s = d->name;
  m->i0 = cr.cidx;
  m->i1 = (int)params.size();
  return t;
}

// pairwise compatibility and cap agreement for hcomp systems
void check_system(const Ctx& ctx, Pos pos, const Val& type,
                  const std::vector<std::pair<Dnf, Tm>>& branches, int eps,
                  const Val& capv) {
  for (size_t i = 0; i < branches.size(); ++i) {
    Ctx ci = ctx.bind_interval("i");
    Val vi = eval_ctx(ci, branches[i].second);
    // boundary with the cap at the eps end
    Ctx c0 = ctx.assume(branches[i].first);
    Env env0 = ctx.env.push_iv(eps == 0 ? IvElem::zero() : IvElem::one());
    Val at_eps = eval(ctx.lvl(), env0, branches[i].second);
    require_conv_at(c0, pos, at_eps, capv, type,
                    "system branch disagrees with the cap");
    for (size_t j = i + 1; j < branches.size(); ++j) {
      Dnf both = dnf_and(branches[i].first, branches[j].first);
      if (both.is_false()) continue;
      Ctx cij = ci.assume(both);
      Val vj = eval_ctx(ci, branches[j].second);
      require_conv_at(cij, pos, vi, vj, type,
                      "system branches disagree on their overlap");
    }
  }
}

// substitute an interval raw expression for a name inside a raw term
Rw raw_subst(const Rw& r, const std::string& name, const Rw& repl) {
  if (!r) return r;
  if (r->k == Raw::K::Var && r->s == name) return repl;
  bool binds = (r->k == Raw::K::Lam || r->k == Raw::K::Pi ||
                r->k == Raw::K::Sigma) &&
               r->s == name;
  auto out = std::make_shared<Raw>(*r);
  auto* m = const_cast<Raw*>(out.get());
  for (size_t i = 0; i < m->rs.size(); ++i) {
    // binders scope over their last child only
    bool is_body = (r->k == Raw::K::Lam && i == 0) ||
                   ((r->k == Raw::K::Pi || r->k == Raw::K::Sigma) && i == 1);
    if (binds && is_body) continue;
    m->rs[i] = raw_subst(r->rs[i], name, repl);
  }
  for (auto& [c, b] : m->sys) {
    c = raw_subst(c, name, repl);
    if (!(r->s2 == name)) b = raw_subst(b, name, repl);
  }
  return out;
}

Rw raw_op(Raw::K k, Pos pos, std::vector<Rw> rs) {
  auto r = std::make_shared<Raw>();
  auto* m = const_cast<Raw*>(r.get());
  m->k = k;
  m->pos = pos;
  m->rs = std::move(rs);
  return r;
}

Rw raw_var(const std::string& s, Pos pos) {
  auto r = std::make_shared<Raw>();
  auto* m = const_cast<Raw*>(r.get());
  m->k = Raw::K::Var;
  m->pos = pos;
  m->s = s;
  return r;
}

Rw raw_num(uint64_t n, Pos pos) {
  auto r = std::make_shared<Raw>();
  auto* m = const_cast<Raw*>(r.get());
  m->k = Raw::K::Num;
  m->pos = pos;
  m->n64 = n;
  return r;
}

// comp sugar: heterogeneous composition from transp + hcomp
Rw desugar_comp(const Ctx& ctx, const Rw& r) {
  // comp eps (\i. A) [phi -> \i. u] cap
  Pos pos = r->pos;
  int eps = r->i0;
  const Rw& line = r->rs[0];
  if (line->k != Raw::K::Lam)
    err(ctx, pos, "comp expects an interval-binder line");
  std::string iname = line->s;
  const Rw& body = line->rs[0];
  const Rw& cap = r->rs[1];
  auto line_at = [&](const Rw& at) { return raw_subst(body, iname, at); };
  // forward (eps=0): squeeze(v, i) = transp (\k. A[i \/ k]) (i=1) v
  // backward (eps=1): transp (\k. A[i /\ k]) (i=0) v
  auto squeeze = [&](const Rw& v, const Rw& at) {
    std::string k = "_sqk";
    Rw joined = eps == 0
                    ? raw_op(Raw::K::Join, pos, {at, raw_var(k, pos)})
                    : raw_op(Raw::K::Meet, pos, {at, raw_var(k, pos)});
    Rw linek = raw_op(Raw::K::Lam, pos, {raw_subst(body, iname, joined)});
    const_cast<Raw*>(linek.get())->s = k;
    Rw cofr = raw_op(Raw::K::CofEq, pos, {at});
    const_cast<Raw*>(cofr.get())->i0 = eps == 0 ? 1 : 0;
    Rw tr = raw_op(Raw::K::Transp, pos, {linek, cofr, v});
    return tr;
  };
  Rw cap2 = squeeze(cap, raw_num(eps == 0 ? 0 : 1, pos));
  Rw out = raw_op(Raw::K::HComp, pos,
                  {line_at(raw_num(eps == 0 ? 1 : 0, pos)), cap2});
  auto* m = const_cast<Raw*>(out.get());
  m->i0 = eps;
  for (auto& [c, b] : r->sys) {
    // branch binds its own interval name; squeeze pointwise
    std::string bi = "_cbi";
    Rw bb = b;
    std::string bname;
    if (b->k == Raw::K::Lam) {
      bname = b->s;
      bb = b->rs[0];
    } else {
      err(ctx, pos, "comp branches must bind an interval variable");
    }
    Rw vb = raw_subst(bb, bname, raw_var(bi, pos));
    Rw sq = squeeze(vb, raw_var(bi, pos));
    Rw lam = raw_op(Raw::K::Lam, pos, {sq});
    const_cast<Raw*>(lam.get())->s = bi;
    m->sys.emplace_back(c, lam);
  }
  return out;
}

} // namespace

IvPtr elab_iv(const Ctx& ctx, const Rw& r) {
  switch (r->k) {
    case Raw::K::Num:
      if (r->n64 == 0) return Iv::zero();
      if (r->n64 == 1) return Iv::one();
      err(ctx, r->pos, "interval endpoints are 0 and 1");
    case Raw::K::Var: {
      int idx = ctx.find(r->s);
      if (idx < 0) err(ctx, r->pos, "unknown variable '" + r->s + "'");
      if (ctx.entries[ctx.entries.size() - 1 - idx].k != CtxEntry::K::Interval)
        err(ctx, r->pos, "'" + r->s + "' is not an interval variable");
      return Iv::mkvar(idx);
    }
    case Raw::K::Meet:
      return Iv::meet(elab_iv(ctx, r->rs[0]), elab_iv(ctx, r->rs[1]));
    case Raw::K::Join:
      return Iv::join(elab_iv(ctx, r->rs[0]), elab_iv(ctx, r->rs[1]));
    default: err(ctx, r->pos, "expected an interval expression");
  }
}

CofPtr elab_cof(const Ctx& ctx, const Rw& r) {
  switch (r->k) {
    case Raw::K::CofTop: return Cof::top();
    case Raw::K::CofBot: return Cof::bot();
    case Raw::K::CofEq:
      return Cof::eq(elab_iv(ctx, r->rs[0]), r->i0 == 1);
    case Raw::K::Meet:
      return Cof::conj(elab_cof(ctx, r->rs[0]), elab_cof(ctx, r->rs[1]));
    case Raw::K::Join:
      return Cof::disj(elab_cof(ctx, r->rs[0]), elab_cof(ctx, r->rs[1]));
    default: err(ctx, r->pos, "expected a cofibration");
  }
}

std::pair<Tm, int> elab_type(const Ctx& ctx, const Rw& r) {
  auto [tm, ty] = elab_infer(ctx, r);
  if (ty->k == Value::K::U) return {tm, ty->i0};
  err(ctx, r->pos, "expected a type, got an element of " +
                       show_term(quote(ctx.lvl(), ty), ctx.names()));
}

std::pair<Tm, Val> elab_infer(const Ctx& ctx, const Rw& r) {
  using K = Raw::K;
  switch (r->k) {
    case K::Var: {
      int idx = ctx.find(r->s);
      if (idx >= 0) {
        const CtxEntry& e = ctx.entries[ctx.entries.size() - 1 - idx];
        if (e.k != CtxEntry::K::Term)
          err(ctx, r->pos, "interval variable '" + r->s +
                               "' used in a term position");
        return {mk_var(idx, r->s), e.type};
      }
      if (const GlobalDef* d = ctx.globals->find_def(r->s))
        return {mk_def(r->s), d->type};
      if (const HitDecl* d = ctx.globals->find_hit(r->s))
        return elab_hit_former(ctx, r->pos, d, {});
      if (const HitDecl* d = find_elim(*ctx.globals, r->s))
        return elab_elim(ctx, r->pos, d, {});
      if (find_ctor(*ctx.globals, r->s).decl)
        err(ctx, r->pos, "constructor '" + r->s +
                             "' needs a checked position or an annotation");
      err(ctx, r->pos, "unknown identifier '" + r->s + "'");
    }
    case K::U: return {mk_u(r->i0), vU(r->i0 + 1)};
    case K::Num: return {mk_natlit(r->n64), vNat()};
    case K::App: {
      Rw head;
      std::vector<Rw> args = spine_of(r, head);
      if (head->k == K::Var && ctx.find(head->s) < 0) {
        if (const HitDecl* d = ctx.globals->find_hit(head->s))
          return elab_hit_former(ctx, r->pos, d, args);
        if (const HitDecl* d = find_elim(*ctx.globals, head->s))
          return elab_elim(ctx, r->pos, d, args);
        if (find_ctor(*ctx.globals, head->s).decl)
          err(ctx, r->pos, "constructor application '" + head->s +
                               "' needs a checked position");
      }
      auto [tm, ty] = elab_infer(ctx, head);
      for (const Rw& a : args) {
        auto [tm2, ty2] = apply_one(ctx, r->pos, tm, ty, nullptr, a);
        tm = tm2;
        ty = ty2;
      }
      return {tm, ty};
    }
    case K::Lam: err(ctx, r->pos, "cannot infer the type of a lambda");
    case K::Pi: {
      if (r->rs[0]->k == K::IKw) {
        Ctx c2 = ctx.bind_interval(r->s);
        auto [cod, k] = elab_type(c2, r->rs[1]);
        Tm t = mk(Term::K::LineT, {cod});
        const_cast<Term*>(t.get())->s = r->s;
        return {t, vU(k)};
      }
      auto [dom, kd] = elab_type(ctx, r->rs[0]);
      Ctx c2 = ctx.bind_term(r->s, eval_ctx(ctx, dom));
      auto [cod, kc] = elab_type(c2, r->rs[1]);
      Tm t = mk(Term::K::Pi, {dom, cod});
      const_cast<Term*>(t.get())->s = r->s;
      return {t, vU(std::max(kd, kc))};
    }
    case K::Sigma: {
      auto [dom, kd] = elab_type(ctx, r->rs[0]);
      Ctx c2 = ctx.bind_term(r->s, eval_ctx(ctx, dom));
      auto [cod, kc] = elab_type(c2, r->rs[1]);
      Tm t = mk(Term::K::Sigma, {dom, cod});
      const_cast<Term*>(t.get())->s = r->s;
      return {t, vU(std::max(kd, kc))};
    }
    case K::Pair: err(ctx, r->pos, "cannot infer the type of a pair");
    case K::Fst: {
      auto [tm, ty] = elab_infer(ctx, r->rs[0]);
      if (ty->k != Value::K::Sigma)
        err(ctx, r->pos, "projection from a non-pair");
      return {mk(Term::K::Fst, {tm}), ty->v0};
    }
    case K::Snd: {
      auto [tm, ty] = elab_infer(ctx, r->rs[0]);
      if (ty->k != Value::K::Sigma)
        err(ctx, r->pos, "projection from a non-pair");
      Val fst = eval_ctx(ctx, mk(Term::K::Fst, {tm}));
      return {mk(Term::K::Snd, {tm}), capply(ctx.lvl(), ty->clo, fst)};
    }
    case K::PathT: {
      auto [a, k] = elab_type(ctx, r->rs[0]);
      Val av = eval_ctx(ctx, a);
      Tm l = elab_check(ctx, r->rs[1], av);
      Tm rr = elab_check(ctx, r->rs[2], av);
      return {mk(Term::K::PathT, {a, l, rr}), vU(k)};
    }
    case K::Nat: return {mk(Term::K::Nat), vU(0)};
    case K::Suc: {
      Tm n = elab_check(ctx, r->rs[0], vNat());
      return {mk(Term::K::Suc, {n}), vNat()};
    }
    case K::NatRec: {
      auto [motive, mty] = elab_infer(ctx, r->rs[0]);
      if (mty->k != Value::K::Pi || mty->v0->k != Value::K::Nat)
        err(ctx, r->pos, "natrec motive must have type Nat -> U");
      Val mv = eval_ctx(ctx, motive);
      Tm z = elab_check(ctx, r->rs[1], apply(ctx.lvl(), mv, vNum(0)));
      // s : (n : Nat) -> motive n -> motive (suc n)
      Val sty = vPi(vNat(), make_native([mv](int l, Val n) {
                      Val mn = apply(l, mv, n);
                      Val msn = apply(l, mv, vNum(1, n));
                      return vPi(mn, make_native([msn](int, Val) {
                                   return msn;
                                 }));
                    }));
      Tm s = elab_check(ctx, r->rs[2], sty);
      Tm n = elab_check(ctx, r->rs[3], vNat());
      return {mk(Term::K::NatRec, {motive, z, s, n}),
              apply(ctx.lvl(), mv, eval_ctx(ctx, n))};
    }
    case K::Unit: return {mk(Term::K::Unit), vU(0)};
    case K::Star: return {mk(Term::K::Star), vUnit()};
    case K::Empty: return {mk(Term::K::Empty), vU(0)};
    case K::EmptyRec: {
      auto [motive, mty] = elab_infer(ctx, r->rs[0]);
      if (mty->k != Value::K::Pi || mty->v0->k != Value::K::Empty)
        err(ctx, r->pos, "absurd motive must have type Empty -> U");
      Tm a = elab_check(ctx, r->rs[1], vEmpty());
      Val mv = eval_ctx(ctx, motive);
      return {mk(Term::K::EmptyRec, {motive, a}),
              apply(ctx.lvl(), mv, eval_ctx(ctx, a))};
    }
    case K::Sum: {
      auto [a, ka] = elab_type(ctx, r->rs[0]);
      auto [b, kb] = elab_type(ctx, r->rs[1]);
      Tm t = mk(Term::K::Sum, {a, b});
      return {t, vU(std::max(ka, kb))};
    }
    case K::Inl:
    case K::Inr: err(ctx, r->pos, "cannot infer the type of an injection");
    case K::SumCase: {
      auto [scrut, sty] = elab_infer(ctx, r->rs[3]);
      if (sty->k != Value::K::Sum)
        err(ctx, r->pos, "case scrutinee is not a sum");
      auto [motive, mty] = elab_infer(ctx, r->rs[0]);
      if (mty->k != Value::K::Pi ||
          !conv(ctx.cc(), mty->v0, sty, nullptr))
        err(ctx, r->pos, "case motive must map the sum into a universe");
      Val mv = eval_ctx(ctx, motive);
      Val A = sty->v0, B = sty->v1;
      Val fty = vPi(A, make_native([mv](int l, Val a) {
                      return apply(l, mv, vInl(a));
                    }));
      Val gty = vPi(B, make_native([mv](int l, Val b) {
                      return apply(l, mv, vInr(b));
                    }));
      Tm f = elab_check(ctx, r->rs[1], fty);
      Tm g = elab_check(ctx, r->rs[2], gty);
      return {mk(Term::K::SumCase, {motive, f, g, scrut}),
              apply(ctx.lvl(), mv, eval_ctx(ctx, scrut))};
    }
    case K::Refl: err(ctx, r->pos, "refl needs a checked position");
    case K::IdT: {
      auto [a, k] = elab_type(ctx, r->rs[0]);
      Val av = eval_ctx(ctx, a);
      Tm l = elab_check(ctx, r->rs[1], av);
      Tm rr = elab_check(ctx, r->rs[2], av);
      return {mk(Term::K::IdT, {a, l, rr}), vU(k)};
    }
    case K::IdJ: {
      // idJ motive d prf
      auto [prf, pty] = elab_infer(ctx, r->rs[2]);
      if (pty->k != Value::K::IdT)
        err(ctx, r->pos, "idJ eliminates an Id proof");
      Val A = pty->v0, a = pty->v1, b = pty->v2;
      // motive : (x : A) -> Id A a x -> U_k
      auto [motive, mty] = elab_infer(ctx, r->rs[0]);
      Val mv = eval_ctx(ctx, motive);
      {
        bool ok = mty->k == Value::K::Pi &&
                  conv(ctx.cc(), mty->v0, A, nullptr);
        if (!ok) err(ctx, r->pos, "idJ motive must quantify over the base");
      }
      // d : motive a refl
      Val refl;
      {
        auto v = mkv(Value::K::IdIn);
        auto* m2 = const_cast<Value*>(v.get());
        m2->cof = Dnf::top();
        Val aa = a;
        m2->v0 = vILam(make_inative([aa](int, const IvElem&) { return aa; }));
        refl = v;
      }
      Tm d = elab_check(ctx, r->rs[1],
                        apply(ctx.lvl(), apply(ctx.lvl(), mv, a), refl));
      Tm aq = quote_ctx(ctx, A), atm = quote_ctx(ctx, a),
         btm = quote_ctx(ctx, b);
      Tm t = mk(Term::K::IdJ, {aq, atm, motive, d, btm, prf});
      Val pv = eval_ctx(ctx, prf);
      return {t, apply(ctx.lvl(), apply(ctx.lvl(), mv, b), pv)};
    }
    case K::LiftT: {
      auto [a, k] = elab_type(ctx, r->rs[0]);
      return {mk(Term::K::LiftT, {a}), vU(k + 1)};
    }
    case K::LiftUp: {
      auto [a, ty] = elab_infer(ctx, r->rs[0]);
      auto v = mkv(Value::K::LiftT);
      const_cast<Value*>(v.get())->v0 = ty;
      return {mk(Term::K::LiftUp, {a}), v};
    }
    case K::LiftDown: {
      auto [a, ty] = elab_infer(ctx, r->rs[0]);
      if (ty->k != Value::K::LiftT)
        err(ctx, r->pos, "lower expects a lifted element");
      return {mk(Term::K::LiftDown, {a}), ty->v0};
    }
    case K::GlueT: {
      auto [base, k] = elab_type(ctx, r->rs[0]);
      Val bv = eval_ctx(ctx, base);
      Tm t = mk(Term::K::GlueT, {base});
      auto* m = const_cast<Term*>(t.get());
      for (auto& [cr, br] : r->sys) {
        CofPtr c = elab_cof(ctx, cr);
        Dnf dv = eval_cof(ctx.env, c);
        Ctx c2 = ctx.assume(dv);
        if (br->k != K::Pair)
          err(ctx, r->pos, "Glue branches are pairs (T, equivalence)");
        auto [tty, tk] = elab_type(c2, br->rs[0]);
        if (tk > k) err(ctx, r->pos, "Glue branch type exceeds the level");
        Val tv = eval_ctx(c2, tty);
        Val ety = equiv_type(c2.lvl(), tv, bv);
        Tm e = elab_check(c2, br->rs[1], ety);
        m->sys.emplace_back(c, mk(Term::K::Pair, {tty, e}));
      }
      return {t, vU(k)};
    }
    case K::Unglue: {
      auto [g, gty] = elab_infer(ctx, r->rs[0]);
      if (gty->k != Value::K::GlueT)
        err(ctx, r->pos, "unglue expects an element of a Glue type");
      Tm ann = quote_ctx(ctx, gty);
      return {mk(Term::K::Unglue, {g, ann}), gty->v0};
    }
    case K::GlueI: err(ctx, r->pos, "glue needs a checked position");
    case K::HComp: {
      auto [a, k] = elab_type(ctx, r->rs[0]);
      (void)k;
      Val av = eval_ctx(ctx, a);
      Tm cap = elab_check(ctx, r->rs[1], av);
      Val capv = eval_ctx(ctx, cap);
      std::vector<std::pair<CofPtr, Tm>> sys;
      std::vector<std::pair<Dnf, Tm>> dsys;
      for (auto& [cr, br] : r->sys) {
        CofPtr c = elab_cof(ctx, cr);
        Dnf dv = eval_cof(ctx.env, c);
        Rw body = br;
        std::string bn = "i";
        if (br->k == K::Lam) {
          bn = br->s;
          body = br->rs[0];
        } else {
          err(ctx, r->pos, "hcomp branches bind an interval variable");
        }
        Ctx c2 = ctx.bind_interval(bn).assume(dv);
        Tm b = elab_check(c2, body, av);
        sys.emplace_back(c, b);
        dsys.emplace_back(dv, b);
      }
      check_system(ctx, r->pos, av, dsys, r->i0, capv);
      return {mk_hcomp(r->i0, a, std::move(sys), cap), av};
    }
    case K::Comp: return elab_infer(ctx, desugar_comp(ctx, r));
    case K::Transp: {
      const Rw& liner = r->rs[0];
      if (liner->k != K::Lam)
        err(ctx, r->pos, "transp expects an interval-binder line");
      Ctx c2 = ctx.bind_interval(liner->s);
      auto [line, k] = elab_type(c2, liner->rs[0]);
      (void)k;
      CofPtr phi = elab_cof(ctx, r->rs[1]);
      Dnf phiv = eval_cof(ctx.env, phi);
      // the line must be constant on phi
      Val at_generic = eval_ctx(c2, line);
      Val at_zero = eval(ctx.lvl(), ctx.env.push_iv(IvElem::zero()), line);
      {
        ConvCtx cc = c2.cc();
        cc.assumptions = dnf_and(cc.assumptions, phiv);
        if (!conv(cc, at_generic, at_zero, nullptr))
          err(ctx, r->pos, "transp line is not constant on the cofibration");
      }
      Tm arg = elab_check(ctx, r->rs[2], at_zero);
      int dir = r->i0;
      Val src = dir == 0 ? at_zero
                         : eval(ctx.lvl(), ctx.env.push_iv(IvElem::one()),
                                line);
      if (dir == 1) arg = elab_check(ctx, r->rs[2], src);
      Val dst = dir == 0
                    ? eval(ctx.lvl(), ctx.env.push_iv(IvElem::one()), line)
                    : at_zero;
      return {mk_transp(dir, line, phi, arg), dst};
    }
    case K::Ann: {
      auto [ty, k] = elab_type(ctx, r->rs[1]);
      (void)k;
      Val tv = eval_ctx(ctx, ty);
      Tm tm = elab_check(ctx, r->rs[0], tv);
      return {tm, tv};
    }
    case K::Meet:
    case K::Join:
    case K::CofEq:
    case K::CofTop:
    case K::CofBot:
    case K::IKw:
      err(ctx, r->pos, "interval/cofibration expression in a term position");
  }
  err(ctx, r->pos, "cannot infer this expression");
}

Tm elab_check(const Ctx& ctx, const Rw& r, const Val& ty) {
  using K = Raw::K;
  switch (r->k) {
    case K::Lam: {
      if (ty->k == Value::K::Pi) {
        Ctx c2 = ctx.bind_term(r->s, ty->v0);
        Tm body =
            elab_check(c2, r->rs[0], capply(c2.lvl(), ty->clo, vVar(ctx.lvl())));
        Tm t = mk(Term::K::Lam, {body});
        const_cast<Term*>(t.get())->s = r->s;
        return t;
      }
      if (ty->k == Value::K::LineT) {
        Ctx c2 = ctx.bind_interval(r->s);
        Tm body = elab_check(c2, r->rs[0],
                             capply(c2.lvl(), ty->clo, IvElem::var(ctx.lvl())));
        Tm t = mk(Term::K::ILam, {body});
        const_cast<Term*>(t.get())->s = r->s;
        return t;
      }
      if (ty->k == Value::K::PathT) {
        Ctx c2 = ctx.bind_interval(r->s);
        Tm body = elab_check(c2, r->rs[0], ty->v0);
        // endpoint boundaries
        Val at0 = eval(ctx.lvl(), ctx.env.push_iv(IvElem::zero()), body);
        Val at1 = eval(ctx.lvl(), ctx.env.push_iv(IvElem::one()), body);
        require_conv_at(ctx, r->pos, at0, ty->v1, ty->v0,
                        "path left endpoint mismatch");
        require_conv_at(ctx, r->pos, at1, ty->v2, ty->v0,
                        "path right endpoint mismatch");
        Tm t = mk(Term::K::ILam, {body});
        const_cast<Term*>(t.get())->s = r->s;
        return t;
      }
      err(ctx, r->pos, "lambda checked against a non-function type");
    }
    case K::Pair: {
      if (ty->k != Value::K::Sigma)
        err(ctx, r->pos, "pair checked against a non-pair type");
      Tm a = elab_check(ctx, r->rs[0], ty->v0);
      Val av = eval_ctx(ctx, a);
      Tm b = elab_check(ctx, r->rs[1], capply(ctx.lvl(), ty->clo, av));
      return mk(Term::K::Pair, {a, b});
    }
    case K::Inl: {
      if (ty->k != Value::K::Sum)
        err(ctx, r->pos, "inl checked against a non-sum type");
      return mk(Term::K::Inl, {elab_check(ctx, r->rs[0], ty->v0)});
    }
    case K::Inr: {
      if (ty->k != Value::K::Sum)
        err(ctx, r->pos, "inr checked against a non-sum type");
      return mk(Term::K::Inr, {elab_check(ctx, r->rs[0], ty->v1)});
    }
    case K::Refl: {
      if (ty->k == Value::K::IdT) {
        require_conv_at(ctx, r->pos, ty->v1, ty->v2, ty->v0,
                        "refl endpoints differ");
        Tm path = mk(Term::K::ILam, {quote(ctx.lvl() + 1, ty->v1)});
        Tm t = mk(Term::K::IdIn, {path});
        const_cast<Term*>(t.get())->cof = Cof::top();
        return t;
      }
      if (ty->k == Value::K::PathT) {
        require_conv_at(ctx, r->pos, ty->v1, ty->v2, ty->v0,
                        "refl endpoints differ");
        return mk(Term::K::ILam, {quote(ctx.lvl() + 1, ty->v1)});
      }
      err(ctx, r->pos, "refl checked against a non-identity type");
    }
    case K::GlueI: {
      if (ty->k != Value::K::GlueT)
        err(ctx, r->pos, "glue checked against a non-Glue type");
      Tm base = elab_check(ctx, r->rs[0], ty->v0);
      Val basev = eval_ctx(ctx, base);
      if (r->sys.size() != ty->gsys.size())
        err(ctx, r->pos, "glue must give one part per Glue branch");
      Tm ann = quote_ctx(ctx, ty);
      Tm t = mk(Term::K::GlueI, {base, ann});
      auto* m = const_cast<Term*>(t.get());
      for (size_t i = 0; i < r->sys.size(); ++i) {
        CofPtr c = elab_cof(ctx, r->sys[i].first);
        Dnf dv = eval_cof(ctx.env, c);
        if (!conv_cof(ctx.cc(), dv, ty->gsys[i].cof))
          err(ctx, r->pos, "glue part cofibration differs from the type's");
        Ctx c2 = ctx.assume(dv);
        Tm part = elab_check(c2, r->sys[i].second, ty->gsys[i].ty);
        Val pv = eval_ctx(c2, part);
        require_conv_at(c2, r->pos,
                        equiv_fun(c2.lvl(), ty->gsys[i].equiv, pv), basev,
                        ty->v0, "glue part does not project to the base");
        m->sys.emplace_back(c, part);
      }
      return t;
    }
    case K::App: {
      Rw head;
      std::vector<Rw> args = spine_of(r, head);
      if (head->k == K::Var && ctx.find(head->s) < 0) {
        CtorRef cr = find_ctor(*ctx.globals, head->s);
        if (cr.decl) return elab_ctor(ctx, r->pos, cr, args, ty);
      }
      break;
    }
    case K::Var: {
      if (ctx.find(r->s) < 0) {
        CtorRef cr = find_ctor(*ctx.globals, r->s);
        if (cr.decl) return elab_ctor(ctx, r->pos, cr, {}, ty);
      }
      break;
    }
    default: break;
  }
  auto [tm, got] = elab_infer(ctx, r);
  if (!conv(ctx.cc(), got, ty, nullptr)) mismatch(ctx, r->pos, ty, got);
  return tm;
}

// ---------------------------------------------------------- hit declaration

std::shared_ptr<const HitDecl> elab_hit_decl(const Ctx& ctx,
                                             const RawDecl& rd) {
  auto d = std::make_shared<HitDecl>();
  d->name = rd.name;
  d->fib = rd.fib ? 2 : 0;
  int level = 0;

  Ctx pctx = ctx;
  for (auto& [pn, pty] : rd.params) {
    auto [ty, k] = elab_type(pctx, pty);
    (void)k;
    d->params.emplace_back(pn, ty);
    pctx = pctx.bind_term(pn, eval_ctx(pctx, ty));
  }

  for (const RawHitCtor& rc : rd.ctors) {
    HitCtorSpec cs;
    cs.name = rc.name;
    Ctx actx = pctx;
    std::vector<int> term_param_positions;
    for (const RawHitArg& ra : rc.args) {
      HitArgSpec spec;
      spec.name = ra.name;
      if (ra.is_interval) {
        spec.k = HitArgSpec::K::Interval;
        actx = actx.bind_interval(ra.name);
      } else if (ra.is_self) {
        spec.k = HitArgSpec::K::Child;
        Ctx tctx = actx;
        for (auto& [tn, tty] : ra.tele) {
          auto [ty, k] = elab_type(tctx, tty);
          level = std::max(level, k);
          spec.tele.push_back(ty);
          tctx = tctx.bind_term(tn, eval_ctx(tctx, ty));
        }
        // bind the child as an opaque function; its self-typed result is
        // not needed while checking later argument types
        Val cty = vUnit();
        actx = actx.bind_term(ra.name, cty);
        term_param_positions.push_back(-1);
      } else {
        spec.k = HitArgSpec::K::Term;
        auto [ty, k] = elab_type(actx, ra.type);
        level = std::max(level, k);
        spec.type = ty;
        term_param_positions.push_back((int)actx.lvl());
        actx = actx.bind_term(ra.name, eval_ctx(actx, ty));
      }
      cs.args.push_back(std::move(spec));
    }
    // reductions: cof + target, where the target is checked against self
    // once the declaration is registered; record raw positions for now
    for (const RawHitRed& rr : rc.reds) {
      HitRed red;
      red.cof = elab_cof(actx, rr.cof);
      red.target = nullptr; // filled by the second pass below
      cs.reds.push_back(red);
    }
    d->ctors.push_back(std::move(cs));
  }
  d->level = level;

  // second pass: register a provisional copy so self-references resolve,
  // then check reduction targets against self
  auto g2 = std::make_shared<Globals>(*ctx.globals);
  g2->hits[d->name] = d;
  Ctx ctx2 = make_ctx(g2);

  for (size_t ci = 0; ci < rd.ctors.size(); ++ci) {
    HitCtorSpec& cs = const_cast<HitCtorSpec&>(d->ctors[ci]);
    // rebuild the argument context
    Ctx actx = ctx2;
    std::vector<HArg> params;
    for (auto& [pn, pty] : d->params) {
      Env scope = hit_scope_env(g2, params, {});
      Val ptyv = eval(actx.lvl(), scope, pty);
      params.push_back(HArg::term(vVar(actx.lvl())));
      actx = actx.bind_term(pn, ptyv);
    }
    Val self = hit_type(actx.lvl(), d.get(), params);
    std::vector<HArg> args;
    for (const HitArgSpec& spec : cs.args) {
      Env scope = hit_scope_env(g2, params, args);
      switch (spec.k) {
        case HitArgSpec::K::Term: {
          Val ty = eval(actx.lvl(), scope, spec.type);
          args.push_back(HArg::term(vVar(actx.lvl())));
          actx = actx.bind_term(spec.name, ty);
          break;
        }
        case HitArgSpec::K::Interval:
          args.push_back(HArg::interval(IvElem::var(actx.lvl())));
          actx = actx.bind_interval(spec.name);
          break;
        case HitArgSpec::K::Child: {
          Val cty = child_type_value(actx.lvl(), g2, spec.tele, 0, scope,
                                     self);
          args.push_back(HArg::term(vVar(actx.lvl())));
          actx = actx.bind_term(spec.name, cty);
          break;
        }
        case HitArgSpec::K::Cof: break;
      }
    }
    for (size_t ri = 0; ri < cs.reds.size(); ++ri) {
      const RawHitRed& rr = rd.ctors[ci].reds[ri];
      Dnf cof = eval_cof(actx.env, cs.reds[ri].cof);
      Ctx rctx = actx.assume(cof);
      Tm target = elab_check(rctx, rr.target, self);
      // transport safety: the target may not mention term parameters of
      // the constructor (children and intervals are fine)
      std::function<void(const Tm&, int)> scan = [&](const Tm& t, int depth) {
        if (!t) return;
        if (t->k == Term::K::Var) {
          int lvl_ref = rctx.lvl() - 1 - (t->i0 - depth);
          for (size_t p = 0; p < cs.args.size(); ++p) {
            if (cs.args[p].k != HitArgSpec::K::Term) continue;
            if (t->i0 >= depth &&
                args[p].k == HArg::K::Term && args[p].v->k == Value::K::Ne &&
                args[p].v->ne.head_lvl == lvl_ref)
              throw ElabError("reduction target of '" + cs.name +
                                  "' uses term argument '" + cs.args[p].name +
                                  "', which transport cannot track",
                              rr.pos);
          }
        }
        int extra = 0;
        using TK = Term::K;
        for (size_t i = 0; i < t->ts.size(); ++i) {
          extra = 0;
          if ((t->k == TK::Pi || t->k == TK::Sigma) && i == 1) extra = 1;
          if ((t->k == TK::Lam || t->k == TK::ILam || t->k == TK::LineT ||
               t->k == TK::Transp) &&
              i == 0)
            extra = 1;
          scan(t->ts[i], depth + extra);
        }
        for (auto& [c, b] : t->sys) scan(b, depth + 1);
      };
      if (!d->kernel_transport) scan(target, 0);
      const_cast<HitRed&>(cs.reds[ri]).target = target;
    }
    // overlapping reductions must agree where both fire
    for (size_t i = 0; i < cs.reds.size(); ++i)
      for (size_t j = i + 1; j < cs.reds.size(); ++j) {
        Dnf ci_ = eval_cof(actx.env, cs.reds[i].cof);
        Dnf cj = eval_cof(actx.env, cs.reds[j].cof);
        Dnf both = dnf_and(ci_, cj);
        if (both.is_false()) continue;
        Ctx rctx = actx.assume(both);
        Val ti = eval(rctx.lvl(), actx.env, cs.reds[i].target);
        Val tj = eval(rctx.lvl(), actx.env, cs.reds[j].target);
        if (!conv(rctx.cc(), ti, tj, self))
          throw ElabError("overlapping reductions of '" + cs.name +
                              "' disagree",
                          rd.pos);
      }
  }
  return d;
}

} // namespace ctt
