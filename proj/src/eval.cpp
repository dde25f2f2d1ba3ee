#include "eval.hpp"

#include <stdexcept>

namespace ctt {

thread_local int eval_fuel = 1 << 22;
thread_local std::shared_ptr<const Globals> tls_globals;

void set_current_globals(std::shared_ptr<const Globals> g) {
  tls_globals = std::move(g);
}
std::shared_ptr<const Globals> current_globals() { return tls_globals; }

static void burn_fuel(const char* where) {
  if (--eval_fuel <= 0)
    throw CheckError(std::string("evaluation fuel exhausted in ") + where);
}

// ----------------------------------------------------------- interval eval

IvElem eval_iv(const Env& env, const IvPtr& t) {
  switch (t->kind) {
    case Iv::Kind::Zero: return IvElem::zero();
    case Iv::Kind::One: return IvElem::one();
    case Iv::Kind::Var: {
      const EnvEntry& e = env.lookup(t->var);
      if (e.k == EnvEntry::K::Generic) return IvElem::var(e.glvl);
      if (e.k != EnvEntry::K::Interval)
        throw CheckError("term variable used as interval");
      return e.iv;
    }
    case Iv::Kind::Meet:
      return iv_meet(eval_iv(env, t->lhs), eval_iv(env, t->rhs));
    case Iv::Kind::Join:
      return iv_join(eval_iv(env, t->lhs), eval_iv(env, t->rhs));
  }
  return IvElem::zero();
}

Dnf eval_cof(const Env& env, const CofPtr& c) {
  switch (c->kind) {
    case Cof::Kind::Top: return Dnf::top();
    case Cof::Kind::Bot: return Dnf::bot();
    case Cof::Kind::Eq: return dnf_eq(eval_iv(env, c->arg), c->eps);
    case Cof::Kind::And:
      return dnf_and(eval_cof(env, c->lhs), eval_cof(env, c->rhs));
    case Cof::Kind::Or:
      return dnf_or(eval_cof(env, c->lhs), eval_cof(env, c->rhs));
  }
  return Dnf::bot();
}

// ----------------------------------------------------------------- closure

Val capply(int lvl, const Closure& c, const Val& v) {
  if (c.native) return c.native(lvl, v);
  return eval(lvl, c.env.push_val(v), c.body);
}

Val capply(int lvl, const Closure& c, const IvElem& r) {
  if (c.inative) return c.inative(lvl, r);
  return eval(lvl, c.env.push_iv(r), c.body);
}

Val sys_branch_at(int lvl, const VBranch& b, const IvElem& r) {
  return capply(lvl, b.clo, r);
}

// -------------------------------------------------------------- eliminators

Val apply(int lvl, const Val& f, const Val& a) {
  switch (f->k) {
    case Value::K::Lam: return capply(lvl, f->clo, a);
    case Value::K::Ne: {
      Neutral n = f->ne;
      SpineElem e;
      e.k = SpineElem::K::App;
      e.v = a;
      n.spine.push_back(std::move(e));
      return vNe(std::move(n));
    }
    default: throw CheckError("application of a non-function value");
  }
}

Val iapply(int lvl, const Val& f, const IvElem& r) {
  switch (f->k) {
    case Value::K::ILam: return capply(lvl, f->clo, r);
    case Value::K::Ne: {
      Neutral n = f->ne;
      SpineElem e;
      e.k = SpineElem::K::IApp;
      e.iv = r;
      n.spine.push_back(std::move(e));
      return vNe(std::move(n));
    }
    default: throw CheckError("interval application of a non-line value");
  }
}

Val iapply_ann(int lvl, const Val& f, const IvElem& r, const Val& lhs,
               const Val& rhs) {
  if (lhs && r.is_zero()) return lhs;
  if (rhs && r.is_one()) return rhs;
  if (f->k == Value::K::Ne) {
    Neutral n = f->ne;
    SpineElem e;
    e.k = SpineElem::K::IApp;
    e.iv = r;
    e.lhs = lhs;
    e.rhs = rhs;
    n.spine.push_back(std::move(e));
    return vNe(std::move(n));
  }
  return iapply(lvl, f, r);
}

Val do_fst(int lvl, const Val& p) {
  switch (p->k) {
    case Value::K::Pair: return p->v0;
    case Value::K::Ne: {
      Neutral n = p->ne;
      n.spine.push_back(SpineElem{SpineElem::K::Fst});
      return vNe(std::move(n));
    }
    default: throw CheckError("projection from a non-pair value");
  }
}

Val do_snd(int lvl, const Val& p) {
  switch (p->k) {
    case Value::K::Pair: return p->v1;
    case Value::K::Ne: {
      Neutral n = p->ne;
      n.spine.push_back(SpineElem{SpineElem::K::Snd});
      return vNe(std::move(n));
    }
    default: throw CheckError("projection from a non-pair value");
  }
}

static Val stuck_elim(Val head, SpineElem e) {
  Neutral n;
  if (head->k == Value::K::Ne)
    n = head->ne;
  else
    n.head_v = std::move(head);
  n.spine.push_back(std::move(e));
  return vNe(std::move(n));
}

Val do_natrec(int lvl, const Val& motive, const Val& z, const Val& s,
              const Val& n) {
  if (n->k == Value::K::Num) {
    uint64_t k = n->n64;
    Val base;
    if (!n->v0) {
      base = z;
      for (uint64_t i = 0; i < k; ++i) {
        burn_fuel("natrec");
        base = apply(lvl, apply(lvl, s, vNum(i)), base);
      }
      return base;
    }
    // suc^k applied to a stuck tail
    base = do_natrec(lvl, motive, z, s, n->v0);
    for (uint64_t i = 0; i < k; ++i) {
      burn_fuel("natrec");
      base = apply(lvl, apply(lvl, s, vNum(i, n->v0)), base);
    }
    return base;
  }
  SpineElem e;
  e.k = SpineElem::K::NatRec;
  e.vs = {motive, z, s};
  return stuck_elim(n, std::move(e));
}

Val do_emptyrec(int lvl, const Val& motive, const Val& a) {
  SpineElem e;
  e.k = SpineElem::K::EmptyRec;
  e.vs = {motive};
  return stuck_elim(a, std::move(e));
}

Val do_sumcase(int lvl, const Val& motive, const Val& f, const Val& g,
               const Val& scrut) {
  switch (scrut->k) {
    case Value::K::Inl: return apply(lvl, f, scrut->v0);
    case Value::K::Inr: return apply(lvl, g, scrut->v0);
    default: {
      SpineElem e;
      e.k = SpineElem::K::SumCase;
      e.vs = {motive, f, g};
      return stuck_elim(scrut, std::move(e));
    }
  }
}

Val do_liftdown(int lvl, const Val& a) {
  if (a->k == Value::K::LiftUp) return a->v0;
  return stuck_elim(a, SpineElem{SpineElem::K::LiftDown});
}

Val do_idj(int lvl, const Val& bigA, const Val& a, const Val& motive,
           const Val& d, const Val& b, const Val& prf) {
  if (prf->k == Value::K::IdIn) {
    Dnf xi = prf->cof;
    Val p = prf->v0;
    if (xi.is_true()) return d;
    // comp over  i |-> motive (p i) (squeezed id),  constant d on xi
    Closure line = make_inative([=](int l, const IvElem& i) -> Val {
      Val pi = iapply(l, p, i);
      Val sq = vILam(make_inative([=](int l2, const IvElem& j) {
        return iapply(l2, p, iv_meet(i, j));
      }));
      auto idv = std::make_shared<Value>();
      auto* m = const_cast<Value*>(idv.get());
      m->k = Value::K::IdIn;
      m->cof = dnf_or(xi, dnf_eq(i, false));
      m->v0 = sq;
      return apply(l, apply(l, motive, pi), Val(idv));
    });
    std::vector<VBranch> sys;
    sys.push_back(VBranch{xi, make_inative([=](int, const IvElem&) {
                            return d;
                          })});
    return comp_at(lvl, 0, line, std::move(sys), d);
  }
  SpineElem e;
  e.k = SpineElem::K::IdJ;
  e.vs = {bigA, a, motive, d, b};
  return stuck_elim(prf, std::move(e));
}

// -------------------------------------------------------------------- eval

Val eval(int lvl, const Env& env, const Tm& t) {
  using K = Term::K;
  switch (t->k) {
    case K::Var: {
      const EnvEntry& e = env.lookup(t->i0);
      if (e.k == EnvEntry::K::Generic) return vVar(e.glvl);
      if (e.k != EnvEntry::K::Term)
        throw CheckError("interval variable used as a term");
      return e.v;
    }
    case K::Def: {
      const Globals* gl = env.globals ? env.globals.get() : tls_globals.get();
      if (!gl) throw CheckError("no global scope active");
      const GlobalDef* d = gl->find_def(t->s);
      if (!d) throw CheckError("unknown global: " + t->s);
      if (d->value) return d->value;
      Neutral n;
      n.head_def = t->s;
      return vNe(std::move(n));
    }
    case K::U: return vU(t->i0);
    case K::Pi: {
      Closure cod{t->ts[1], env, nullptr, nullptr};
      return vPi(eval(lvl, env, t->ts[0]), std::move(cod));
    }
    case K::Lam: return vLam(Closure{t->ts[0], env, nullptr, nullptr});
    case K::App:
      return apply(lvl, eval(lvl, env, t->ts[0]), eval(lvl, env, t->ts[1]));
    case K::Sigma: {
      Closure cod{t->ts[1], env, nullptr, nullptr};
      return vSigma(eval(lvl, env, t->ts[0]), std::move(cod));
    }
    case K::Pair:
      return vPair(eval(lvl, env, t->ts[0]), eval(lvl, env, t->ts[1]));
    case K::Fst: return do_fst(lvl, eval(lvl, env, t->ts[0]));
    case K::Snd: return do_snd(lvl, eval(lvl, env, t->ts[0]));
    case K::PathT:
      return vPathT(eval(lvl, env, t->ts[0]), eval(lvl, env, t->ts[1]),
                    eval(lvl, env, t->ts[2]));
    case K::LineT: {
      auto v = mkv(Value::K::LineT);
      const_cast<Value*>(v.get())->clo = Closure{t->ts[0], env, nullptr, nullptr};
      return v;
    }
    case K::ILam: return vILam(Closure{t->ts[0], env, nullptr, nullptr});
    case K::IApp: {
      IvElem r = eval_iv(env, t->iv);
      if (t->ts.size() == 3) {
        // endpoints may legitimately come first: they avoid forcing fn
        if (r.is_zero()) return eval(lvl, env, t->ts[1]);
        if (r.is_one()) return eval(lvl, env, t->ts[2]);
        Val f = eval(lvl, env, t->ts[0]);
        return iapply_ann(lvl, f, r, eval(lvl, env, t->ts[1]),
                          eval(lvl, env, t->ts[2]));
      }
      return iapply(lvl, eval(lvl, env, t->ts[0]), r);
    }
    case K::Nat: return vNat();
    case K::NatLit: return vNum(t->n64);
    case K::Suc: {
      Val n = eval(lvl, env, t->ts[0]);
      if (n->k == Value::K::Num) return vNum(n->n64 + 1, n->v0);
      return vNum(1, n);
    }
    case K::NatRec:
      return do_natrec(lvl, eval(lvl, env, t->ts[0]), eval(lvl, env, t->ts[1]),
                       eval(lvl, env, t->ts[2]), eval(lvl, env, t->ts[3]));
    case K::Unit: return vUnit();
    case K::Star: return vStar();
    case K::Empty: return vEmpty();
    case K::EmptyRec:
      return do_emptyrec(lvl, eval(lvl, env, t->ts[0]),
                         eval(lvl, env, t->ts[1]));
    case K::Sum: {
      auto v = mkv(Value::K::Sum);
      auto* m = const_cast<Value*>(v.get());
      m->v0 = eval(lvl, env, t->ts[0]);
      m->v1 = eval(lvl, env, t->ts[1]);
      return v;
    }
    case K::Inl: return vInl(eval(lvl, env, t->ts[0]));
    case K::Inr: return vInr(eval(lvl, env, t->ts[0]));
    case K::SumCase:
      return do_sumcase(lvl, eval(lvl, env, t->ts[0]), eval(lvl, env, t->ts[1]),
                        eval(lvl, env, t->ts[2]), eval(lvl, env, t->ts[3]));
    case K::IdT: {
      auto v = mkv(Value::K::IdT);
      auto* m = const_cast<Value*>(v.get());
      m->v0 = eval(lvl, env, t->ts[0]);
      m->v1 = eval(lvl, env, t->ts[1]);
      m->v2 = eval(lvl, env, t->ts[2]);
      return v;
    }
    case K::IdIn: {
      auto v = mkv(Value::K::IdIn);
      auto* m = const_cast<Value*>(v.get());
      m->cof = eval_cof(env, t->cof);
      m->v0 = eval(lvl, env, t->ts[0]);
      return v;
    }
    case K::IdJ:
      return do_idj(lvl, eval(lvl, env, t->ts[0]), eval(lvl, env, t->ts[1]),
                    eval(lvl, env, t->ts[2]), eval(lvl, env, t->ts[3]),
                    eval(lvl, env, t->ts[4]), eval(lvl, env, t->ts[5]));
    case K::LiftT: {
      auto v = mkv(Value::K::LiftT);
      const_cast<Value*>(v.get())->v0 = eval(lvl, env, t->ts[0]);
      return v;
    }
    case K::LiftUp: {
      auto v = mkv(Value::K::LiftUp);
      const_cast<Value*>(v.get())->v0 = eval(lvl, env, t->ts[0]);
      return v;
    }
    case K::LiftDown: return do_liftdown(lvl, eval(lvl, env, t->ts[0]));
    case K::GlueT: {
      std::vector<GlueBranch> gs;
      for (auto& [c, te] : t->sys) {
        Dnf d = eval_cof(env, c);
        if (d.is_false()) continue;
        // branch term is a pair (T, e)
        Val pr = eval(lvl, env, te);
        gs.push_back(GlueBranch{d, do_fst(lvl, pr), do_snd(lvl, pr)});
      }
      return glue_type(lvl, eval(lvl, env, t->ts[0]), std::move(gs));
    }
    case K::GlueI: {
      std::vector<VBranch> parts;
      for (auto& [c, te] : t->sys) {
        Dnf d = eval_cof(env, c);
        if (d.is_false()) continue;
        Env cap_env = env;
        Tm body = te;
        parts.push_back(VBranch{d, Closure{body, cap_env, nullptr, nullptr}});
      }
      return glue_intro(lvl, eval(lvl, env, t->ts[1]), std::move(parts),
                        eval(lvl, env, t->ts[0]));
    }
    case K::Unglue:
      return do_unglue(lvl, eval(lvl, env, t->ts[1]), eval(lvl, env, t->ts[0]));
    case K::HComp: {
      Val A = eval(lvl, env, t->ts[0]);
      Val cap = eval(lvl, env, t->ts[1]);
      std::vector<VBranch> sys;
      for (auto& [c, b] : t->sys) {
        Dnf d = eval_cof(env, c);
        if (d.is_false()) continue;
        sys.push_back(VBranch{d, Closure{b, env, nullptr, nullptr}});
      }
      return hcomp_at(lvl, A, t->i0, std::move(sys), cap);
    }
    case K::Transp: {
      Closure line{t->ts[0], env, nullptr, nullptr};
      return transp_at(lvl, t->i0, line, eval_cof(env, t->cof),
                       eval(lvl, env, t->ts[1]));
    }
    case K::HitT: {
      const Globals* gl2 = env.globals ? env.globals.get() : tls_globals.get();
      const HitDecl* d = gl2 ? gl2->find_hit(t->s) : nullptr;
      if (!d) throw CheckError("unknown higher inductive type: " + t->s);
      std::vector<HArg> params;
      for (auto& p : t->ts) params.push_back(HArg::term(eval(lvl, env, p)));
      return hit_type(lvl, d, std::move(params));
    }
    case K::HitCtor: {
      const Globals* gl2 = env.globals ? env.globals.get() : tls_globals.get();
      const HitDecl* d = gl2 ? gl2->find_hit(t->s) : nullptr;
      if (!d) throw CheckError("unknown higher inductive type: " + t->s);
      std::vector<HArg> params, args;
      for (int i = 0; i < t->i1; ++i)
        params.push_back(HArg::term(eval(lvl, env, t->ts[i])));
      const HitCtorSpec& cs = d->ctors[t->i0];
      for (size_t i = t->i1; i < t->ts.size(); ++i) {
        const Tm& a = t->ts[i];
        const HitArgSpec& spec = cs.args[i - t->i1];
        if (spec.k == HitArgSpec::K::Interval)
          args.push_back(HArg::interval(eval_iv(env, a->iv)));
        else if (spec.k == HitArgSpec::K::Cof)
          args.push_back(HArg::cofib(eval_cof(env, a->cof)));
        else
          args.push_back(HArg::term(eval(lvl, env, a)));
      }
      return hit_ctor(lvl, env.globals ? env.globals : tls_globals, d, t->i0, params, std::move(args));
    }
    case K::HitElim: {
      const Globals* gl2 = env.globals ? env.globals.get() : tls_globals.get();
      const HitDecl* d = gl2 ? gl2->find_hit(t->s) : nullptr;
      if (!d) throw CheckError("unknown higher inductive type: " + t->s);
      std::vector<Val> params;
      for (int i = 0; i < t->i1; ++i)
        params.push_back(eval(lvl, env, t->ts[i]));
      Val motive = eval(lvl, env, t->ts[t->i1]);
      std::vector<Val> clauses;
      for (size_t i = t->i1 + 1; i + 1 < t->ts.size(); ++i)
        clauses.push_back(eval(lvl, env, t->ts[i]));
      Val scrut = eval(lvl, env, t->ts.back());
      return hit_elim(lvl, env.globals ? env.globals : tls_globals, d, params, motive, clauses, scrut);
    }
    case K::CofT: {
      auto v = mkv(Value::K::CofT);
      const_cast<Value*>(v.get())->cof = eval_cof(env, t->cof);
      return v;
    }
    case K::CofTT: return mkv(Value::K::CofTT);
    case K::IvArg:
    case K::CofArg:
      throw CheckError("interval/cofibration argument outside argument list");
  }
  throw CheckError("eval: unhandled term");
}

// ---------------------------------------------------------- composition ops

static IvElem endpoint(bool one) {
  return one ? IvElem::one() : IvElem::zero();
}

Val hfill_at(int lvl, const Val& type, int eps,
             const std::vector<VBranch>& sys, const Val& cap,
             const IvElem& j) {
  // F(eps) = cap, F(1-eps) = the hcomp
  std::vector<VBranch> sys2;
  for (const VBranch& b : sys) {
    Closure clo = b.clo;
    IvElem jj = j;
    sys2.push_back(VBranch{
        b.cof, make_inative([clo, jj, eps](int l, const IvElem& i) {
          return capply(l, clo, eps == 0 ? iv_meet(i, jj) : iv_join(i, jj));
        })});
  }
  Val capv = cap;
  sys2.push_back(VBranch{dnf_eq(j, eps == 1),
                         make_inative([capv](int, const IvElem&) {
                           return capv;
                         })});
  return hcomp_at(lvl, type, eps, std::move(sys2), cap);
}

Val transp_fill(int lvl, int dir, const Closure& line, const Dnf& phi,
                const Val& arg, const IvElem& j) {
  Closure ln = line;
  IvElem jj = j;
  if (dir == 0) {
    // F(0) = arg, F(1) = transport
    Closure truncated = make_inative([ln, jj](int l, const IvElem& k) {
      return capply(l, ln, iv_meet(k, jj));
    });
    return transp_at(lvl, 0, truncated, dnf_or(phi, dnf_eq(j, false)), arg);
  }
  // F(1) = arg, F(0) = backward transport
  Closure truncated = make_inative([ln, jj](int l, const IvElem& k) {
    return capply(l, ln, iv_join(k, jj));
  });
  return transp_at(lvl, 1, truncated, dnf_or(phi, dnf_eq(j, true)), arg);
}

Val comp_at(int lvl, int dir, const Closure& line, std::vector<VBranch> sys,
            const Val& cap) {
  Closure ln = line;
  auto squeeze = [ln, dir](int l, const Val& v, const IvElem& i) -> Val {
    if (dir == 0) {
      Closure tail = make_inative([ln, i](int l2, const IvElem& k) {
        return capply(l2, ln, iv_join(i, k));
      });
      return transp_at(l, 0, tail, dnf_eq(i, true), v);
    }
    Closure head = make_inative([ln, i](int l2, const IvElem& k) {
      return capply(l2, ln, iv_meet(i, k));
    });
    return transp_at(l, 1, head, dnf_eq(i, false), v);
  };
  std::vector<VBranch> sys2;
  for (VBranch& b : sys) {
    Closure clo = b.clo;
    sys2.push_back(VBranch{b.cof,
                           make_inative([clo, squeeze](int l, const IvElem& i) {
                             return squeeze(l, capply(l, clo, i), i);
                           })});
  }
  Val cap2 = squeeze(lvl, cap, endpoint(dir == 1));
  Val end_type = capply(lvl, ln, endpoint(dir == 0));
  return hcomp_at(lvl, end_type, dir == 0 ? 0 : 1, std::move(sys2), cap2);
}

// ------------------------------------------------------------------- hcomp

static Val stuck_hcomp(const Val& type, int eps, std::vector<VBranch> sys,
                       Val cap) {
  auto v = mkv(Value::K::HComp);
  auto* m = const_cast<Value*>(v.get());
  m->i0 = eps;
  m->v0 = type;
  m->branches = std::move(sys);
  m->v1 = std::move(cap);
  return v;
}

static Val nat_pred(int lvl, const Val& n) {
  if (n->k == Value::K::Num) {
    if (n->n64 > 0) return vNum(n->n64 - 1, n->v0);
    if (!n->v0) return vNum(0);
    return nat_pred(lvl, n->v0);
  }
  // natrec pred
  Val motive = vLam(make_native([](int, Val) { return vNat(); }));
  Val z = vNum(0);
  Val s = vLam(make_native([](int, Val m) {
    return vLam(make_native([m](int, Val) { return m; }));
  }));
  return do_natrec(lvl, motive, z, s, n);
}

Val hcomp_at(int lvl, const Val& type, int eps, std::vector<VBranch> sys,
             Val cap) {
  // prune and reduce
  std::vector<VBranch> live;
  for (VBranch& b : sys) {
    if (b.cof.is_false()) continue;
    if (b.cof.is_true()) return capply(lvl, b.clo, endpoint(eps == 0));
    live.push_back(std::move(b));
  }
  if (live.empty()) return cap;

  switch (type->k) {
    case Value::K::Pi: {
      Val ty = type;
      auto livec = live;
      Val capv = cap;
      int e = eps;
      return vLam(make_native([ty, livec, capv, e](int l, Val x) {
        std::vector<VBranch> s2;
        for (const VBranch& b : livec) {
          Closure clo = b.clo;
          s2.push_back(VBranch{b.cof,
                               make_inative([clo, x](int l2, const IvElem& i) {
                                 return apply(l2, capply(l2, clo, i), x);
                               })});
        }
        return hcomp_at(l, capply(l, ty->clo, x), e, std::move(s2),
                        apply(l, capv, x));
      }));
    }
    case Value::K::LineT: {
      Val ty = type;
      auto livec = live;
      Val capv = cap;
      int e = eps;
      return vILam(make_inative([ty, livec, capv, e](int l, const IvElem& j) {
        std::vector<VBranch> s2;
        for (const VBranch& b : livec) {
          Closure clo = b.clo;
          IvElem jj = j;
          s2.push_back(VBranch{b.cof,
                               make_inative([clo, jj](int l2, const IvElem& i) {
                                 return iapply(l2, capply(l2, clo, i), jj);
                               })});
        }
        return hcomp_at(l, capply(l, ty->clo, j), e, std::move(s2),
                        iapply(l, capv, j));
      }));
    }
    case Value::K::Sigma: {
      std::vector<VBranch> s_fst, orig = live;
      for (const VBranch& b : live) {
        Closure clo = b.clo;
        s_fst.push_back(VBranch{b.cof,
                                make_inative([clo](int l, const IvElem& i) {
                                  return do_fst(l, capply(l, clo, i));
                                })});
      }
      Val u = do_fst(lvl, cap);
      Val u1 = hcomp_at(lvl, type->v0, eps, s_fst, u);
      // second component: heterogeneous comp over the fst filler
      Val ty = type;
      auto s_fst_c = s_fst;
      Val uc = u;
      int e = eps;
      Closure line = make_inative([ty, s_fst_c, uc, e](int l, const IvElem& j) {
        return capply(l, ty->clo, hfill_at(l, ty->v0, e, s_fst_c, uc, j));
      });
      std::vector<VBranch> s_snd;
      for (const VBranch& b : orig) {
        Closure clo = b.clo;
        s_snd.push_back(VBranch{b.cof,
                                make_inative([clo](int l, const IvElem& i) {
                                  return do_snd(l, capply(l, clo, i));
                                })});
      }
      Val v1 = comp_at(lvl, eps == 0 ? 0 : 1, line, std::move(s_snd),
                       do_snd(lvl, cap));
      return vPair(u1, v1);
    }
    case Value::K::PathT: {
      Val ty = type;
      auto livec = live;
      Val capv = cap;
      int e = eps;
      return vILam(make_inative([ty, livec, capv, e](int l, const IvElem& j) {
        std::vector<VBranch> s2;
        for (const VBranch& b : livec) {
          Closure clo = b.clo;
          IvElem jj = j;
          s2.push_back(VBranch{b.cof,
                               make_inative([clo, jj](int l2, const IvElem& i) {
                                 return iapply(l2, capply(l2, clo, i), jj);
                               })});
        }
        Val lhs = ty->v1, rhs = ty->v2;
        s2.push_back(VBranch{dnf_eq(j, false),
                             make_inative([lhs](int, const IvElem&) {
                               return lhs;
                             })});
        s2.push_back(VBranch{dnf_eq(j, true),
                             make_inative([rhs](int, const IvElem&) {
                               return rhs;
                             })});
        return hcomp_at(l, ty->v0, e, std::move(s2),
                        iapply_ann(l, capv, j, lhs, rhs));
      }));
    }
    case Value::K::Nat: {
      if (cap->k == Value::K::Num) {
        if (cap->n64 == 0 && !cap->v0) {
          // compose the (necessarily zero) branches away
          return vNum(0);
        }
        std::vector<VBranch> s2;
        for (const VBranch& b : live) {
          Closure clo = b.clo;
          s2.push_back(VBranch{b.cof,
                               make_inative([clo](int l, const IvElem& i) {
                                 return nat_pred(l, capply(l, clo, i));
                               })});
        }
        Val tail = hcomp_at(lvl, vNat(), eps, std::move(s2),
                            nat_pred(lvl, cap));
        if (tail->k == Value::K::Num) return vNum(tail->n64 + 1, tail->v0);
        return vNum(1, tail);
      }
      return stuck_hcomp(type, eps, std::move(live), std::move(cap));
    }
    case Value::K::Unit: return vStar();
    case Value::K::CofT: return mkv(Value::K::CofTT);
    case Value::K::Sum: {
      // compose componentwise when every piece is visibly on one side
      bool all_inl = cap->k == Value::K::Inl;
      bool all_inr = cap->k == Value::K::Inr;
      if (all_inl || all_inr) {
        for (const VBranch& b : live) {
          Val probe = capply(lvl + 1, b.clo, IvElem::var(lvl));
          if (all_inl && probe->k != Value::K::Inl) all_inl = false;
          if (all_inr && probe->k != Value::K::Inr) all_inr = false;
        }
      }
      if (all_inl || all_inr) {
        std::vector<VBranch> s2;
        for (const VBranch& b : live) {
          Closure clo = b.clo;
          s2.push_back(VBranch{b.cof,
                               make_inative([clo](int l, const IvElem& i) {
                                 return capply(l, clo, i)->v0;
                               })});
        }
        Val inner = hcomp_at(lvl, all_inl ? type->v0 : type->v1, eps,
                             std::move(s2), cap->v0);
        return all_inl ? vInl(inner) : vInr(inner);
      }
      return stuck_hcomp(type, eps, std::move(live), std::move(cap));
    }
    case Value::K::IdT: {
      bool all_idin = cap->k == Value::K::IdIn;
      if (all_idin)
        for (const VBranch& b : live)
          if (capply(lvl + 1, b.clo, IvElem::var(lvl))->k != Value::K::IdIn)
            all_idin = false;
      if (all_idin) {
        std::vector<VBranch> s2;
        for (const VBranch& b : live) {
          Closure clo = b.clo;
          s2.push_back(VBranch{b.cof,
                               make_inative([clo](int l, const IvElem& i) {
                                 return capply(l, clo, i)->v0;
                               })});
        }
        Val path = hcomp_at(lvl, vPathT(type->v0, type->v1, type->v2), eps,
                            std::move(s2), cap->v0);
        auto v = mkv(Value::K::IdIn);
        auto* m = const_cast<Value*>(v.get());
        m->cof = Dnf::bot();
        m->v0 = path;
        return v;
      }
      return stuck_hcomp(type, eps, std::move(live), std::move(cap));
    }
    case Value::K::LiftT: {
      std::vector<VBranch> s2;
      for (const VBranch& b : live) {
        Closure clo = b.clo;
        s2.push_back(VBranch{b.cof,
                             make_inative([clo](int l, const IvElem& i) {
                               return do_liftdown(l, capply(l, clo, i));
                             })});
      }
      Val inner = hcomp_at(lvl, type->v0, eps, std::move(s2),
                           do_liftdown(lvl, cap));
      auto v = mkv(Value::K::LiftUp);
      const_cast<Value*>(v.get())->v0 = inner;
      return v;
    }
    case Value::K::U:
      return hcomp_universe(lvl, type->i0, eps, std::move(live),
                            std::move(cap));
    case Value::K::GlueT:
      return hcomp_glue(lvl, type, eps, std::move(live), std::move(cap));
    case Value::K::HitT: {
      if (type->decl->fib == 2 || (type->decl->fib == 1 && eps == 0))
        return stuck_hcomp(type, eps, std::move(live), std::move(cap));
      if (type->decl->fib == 1)
        throw CheckError("type '" + type->decl->name +
                         "' composes from endpoint 0 only");
      // non-fibrant declarations have no composition; keep the value stuck
      return stuck_hcomp(type, eps, std::move(live), std::move(cap));
    }
    default:
      return stuck_hcomp(type, eps, std::move(live), std::move(cap));
  }
}

// ------------------------------------------------------------------ transp

Val transp_at(int lvl, int dir, const Closure& line, const Dnf& phi,
              const Val& arg) {
  if (phi.is_true()) return arg;
  Val head = capply(lvl + 1, line, IvElem::var(lvl));
  IvElem src = endpoint(dir == 1), dst = endpoint(dir == 0);
  switch (head->k) {
    case Value::K::U:
    case Value::K::Nat:
    case Value::K::Empty: return arg;
    case Value::K::Unit: return vStar();
    case Value::K::CofT: return mkv(Value::K::CofTT);
    case Value::K::Pi: {
      Closure ln = line;
      Dnf ph = phi;
      Val argv = arg;
      int d = dir;
      return vLam(make_native([ln, ph, argv, d](int l, Val x1) {
        Closure dom_line = make_inative([ln](int l2, const IvElem& k) {
          return capply(l2, ln, k)->v0;
        });
        // bring the argument to the source end of the line
        Closure dl = dom_line;
        Dnf ph2 = ph;
        Val x0 = transp_at(l, 1 - d, dom_line, ph, x1);
        Closure cod_line = make_inative([ln, dl, ph2, x1, d](int l2,
                                                             const IvElem& k) {
          Val fib = transp_fill(l2, 1 - d, dl, ph2, x1, k);
          return capply(l2, capply(l2, ln, k)->clo, fib);
        });
        return transp_at(l, d, cod_line, ph, apply(l, argv, x0));
      }));
    }
    case Value::K::Sigma: {
      Closure ln = line;
      Closure fst_line = make_inative([ln](int l2, const IvElem& k) {
        return capply(l2, ln, k)->v0;
      });
      Val u = do_fst(lvl, arg), v = do_snd(lvl, arg);
      Val u2 = transp_at(lvl, dir, fst_line, phi, u);
      Closure fl = fst_line;
      Dnf ph = phi;
      int d = dir;
      Val uc = u;
      Closure snd_line = make_inative([ln, fl, ph, uc, d](int l2,
                                                          const IvElem& k) {
        Val fib = transp_fill(l2, d, fl, ph, uc, k);
        return capply(l2, capply(l2, ln, k)->clo, fib);
      });
      Val v2 = transp_at(lvl, dir, snd_line, phi, v);
      return vPair(u2, v2);
    }
    case Value::K::PathT: {
      Closure ln = line;
      Dnf ph = phi;
      Val argv = arg;
      int d = dir;
      return vILam(make_inative([ln, ph, argv, d](int l, const IvElem& j) {
        Closure a_line = make_inative([ln, j](int l2, const IvElem& k) {
          return capply(l2, ln, k)->v0;
        });
        std::vector<VBranch> sys;
        sys.push_back(VBranch{dnf_eq(j, false),
                              make_inative([ln](int l2, const IvElem& k) {
                                return capply(l2, ln, k)->v1;
                              })});
        sys.push_back(VBranch{dnf_eq(j, true),
                              make_inative([ln](int l2, const IvElem& k) {
                                return capply(l2, ln, k)->v2;
                              })});
        Val at_j = iapply(l, argv, j);
        sys.push_back(VBranch{ph, make_inative([at_j](int, const IvElem&) {
                                return at_j;
                              })});
        return comp_at(l, d, a_line, std::move(sys), at_j);
      }));
    }
    case Value::K::LineT: {
      Closure ln = line;
      Dnf ph = phi;
      Val argv = arg;
      int d = dir;
      return vILam(make_inative([ln, ph, argv, d](int l, const IvElem& j) {
        Closure fiber_line = make_inative([ln, j](int l2, const IvElem& k) {
          return capply(l2, capply(l2, ln, k)->clo, j);
        });
        return transp_at(l, d, fiber_line, ph, iapply(l, argv, j));
      }));
    }
    case Value::K::Sum: {
      Closure ln = line;
      if (arg->k == Value::K::Inl) {
        Closure a_line = make_inative([ln](int l2, const IvElem& k) {
          return capply(l2, ln, k)->v0;
        });
        return vInl(transp_at(lvl, dir, a_line, phi, arg->v0));
      }
      if (arg->k == Value::K::Inr) {
        Closure b_line = make_inative([ln](int l2, const IvElem& k) {
          return capply(l2, ln, k)->v1;
        });
        return vInr(transp_at(lvl, dir, b_line, phi, arg->v0));
      }
      break;
    }
    case Value::K::IdT: {
      if (arg->k == Value::K::IdIn) {
        Closure ln = line;
        Closure path_line = make_inative([ln](int l2, const IvElem& k) {
          Val idt = capply(l2, ln, k);
          return vPathT(idt->v0, idt->v1, idt->v2);
        });
        Val p2 = transp_at(lvl, dir, path_line, phi, arg->v0);
        auto v = mkv(Value::K::IdIn);
        auto* m = const_cast<Value*>(v.get());
        m->cof = dnf_and(arg->cof, phi);
        m->v0 = p2;
        return v;
      }
      break;
    }
    case Value::K::LiftT: {
      Closure ln = line;
      Closure inner = make_inative([ln](int l2, const IvElem& k) {
        return capply(l2, ln, k)->v0;
      });
      auto v = mkv(Value::K::LiftUp);
      const_cast<Value*>(v.get())->v0 =
          transp_at(lvl, dir, inner, phi, do_liftdown(lvl, arg));
      return v;
    }
    case Value::K::GlueT: return transp_glue(lvl, dir, line, phi, arg);
    case Value::K::HitT: return transp_hit(lvl, dir, line, phi, arg, head);
    default: break;
  }
  (void)src;
  (void)dst;
  auto v = mkv(Value::K::Transp);
  auto* m = const_cast<Value*>(v.get());
  m->i0 = dir;
  m->clo = line;
  m->cof = phi;
  m->v0 = arg;
  return v;
}

// ------------------------------------------------------------------- quote

IvPtr quote_iv(int lvl, const IvElem& e) {
  if (e.is_zero()) return Iv::zero();
  if (e.is_one()) return Iv::one();
  IvPtr acc;
  for (const IvClause& c : e.clauses) {
    IvPtr m;
    for (int v : c) {
      IvPtr x = Iv::mkvar(lvl - 1 - v);
      m = m ? Iv::meet(m, x) : x;
    }
    if (!m) m = Iv::one();
    acc = acc ? Iv::join(acc, m) : m;
  }
  return acc;
}

CofPtr quote_cof(int lvl, const Dnf& d) {
  if (d.is_true()) return Cof::top();
  if (d.is_false()) return Cof::bot();
  CofPtr acc;
  for (const Assign& a : d.clauses) {
    CofPtr c;
    for (auto& [v, val] : a) {
      CofPtr atom = Cof::eq(Iv::mkvar(lvl - 1 - v), val);
      c = c ? Cof::conj(c, atom) : atom;
    }
    if (!c) c = Cof::top();
    acc = acc ? Cof::disj(acc, c) : c;
  }
  return acc;
}

static Tm quote_harg(int lvl, const HArg& a) {
  switch (a.k) {
    case HArg::K::Term: return quote(lvl, a.v);
    case HArg::K::Interval: {
      auto t = std::make_shared<Term>();
      auto* m = const_cast<Term*>(t.get());
      m->k = Term::K::IvArg;
      m->iv = quote_iv(lvl, a.iv);
      return t;
    }
    case HArg::K::Cof: {
      auto t = std::make_shared<Term>();
      auto* m = const_cast<Term*>(t.get());
      m->k = Term::K::CofArg;
      m->cof = quote_cof(lvl, a.cof);
      return t;
    }
  }
  throw CheckError("quote_harg");
}

static std::string fresh_name(int lvl) { return "x" + std::to_string(lvl); }

Tm quote(int lvl, const Val& v) {
  using K = Term::K;
  switch (v->k) {
    case Value::K::U: return mk_u(v->i0);
    case Value::K::Pi: {
      Tm dom = quote(lvl, v->v0);
      Tm cod = quote(lvl + 1, capply(lvl + 1, v->clo, vVar(lvl)));
      Tm t = mk(K::Pi, {dom, cod});
      const_cast<Term*>(t.get())->s = fresh_name(lvl);
      return t;
    }
    case Value::K::Lam: {
      Tm body = quote(lvl + 1, capply(lvl + 1, v->clo, vVar(lvl)));
      Tm t = mk(K::Lam, {body});
      const_cast<Term*>(t.get())->s = fresh_name(lvl);
      return t;
    }
    case Value::K::Sigma: {
      Tm dom = quote(lvl, v->v0);
      Tm cod = quote(lvl + 1, capply(lvl + 1, v->clo, vVar(lvl)));
      Tm t = mk(K::Sigma, {dom, cod});
      const_cast<Term*>(t.get())->s = fresh_name(lvl);
      return t;
    }
    case Value::K::Pair:
      return mk(K::Pair, {quote(lvl, v->v0), quote(lvl, v->v1)});
    case Value::K::PathT:
      return mk(K::PathT,
                {quote(lvl, v->v0), quote(lvl, v->v1), quote(lvl, v->v2)});
    case Value::K::LineT: {
      Tm cod = quote(lvl + 1, capply(lvl + 1, v->clo, IvElem::var(lvl)));
      Tm t = mk(K::LineT, {cod});
      const_cast<Term*>(t.get())->s = fresh_name(lvl);
      return t;
    }
    case Value::K::ILam: {
      Tm body = quote(lvl + 1, capply(lvl + 1, v->clo, IvElem::var(lvl)));
      Tm t = mk(K::ILam, {body});
      const_cast<Term*>(t.get())->s = fresh_name(lvl);
      return t;
    }
    case Value::K::Nat: return mk(K::Nat);
    case Value::K::Num: {
      if (!v->v0) return mk_natlit(v->n64);
      if (v->n64 > 1000000) throw CheckError("numeral too large to quote");
      Tm t = quote(lvl, v->v0);
      for (uint64_t i = 0; i < v->n64; ++i) t = mk(K::Suc, {t});
      return t;
    }
    case Value::K::Unit: return mk(K::Unit);
    case Value::K::Star: return mk(K::Star);
    case Value::K::Empty: return mk(K::Empty);
    case Value::K::Sum:
      return mk(K::Sum, {quote(lvl, v->v0), quote(lvl, v->v1)});
    case Value::K::Inl: return mk(K::Inl, {quote(lvl, v->v0)});
    case Value::K::Inr: return mk(K::Inr, {quote(lvl, v->v0)});
    case Value::K::IdT:
      return mk(K::IdT,
                {quote(lvl, v->v0), quote(lvl, v->v1), quote(lvl, v->v2)});
    case Value::K::IdIn: {
      Tm t = mk(K::IdIn, {quote(lvl, v->v0)});
      const_cast<Term*>(t.get())->cof = quote_cof(lvl, v->cof);
      return t;
    }
    case Value::K::LiftT: return mk(K::LiftT, {quote(lvl, v->v0)});
    case Value::K::LiftUp: return mk(K::LiftUp, {quote(lvl, v->v0)});
    case Value::K::GlueT: {
      Tm t = mk(K::GlueT, {quote(lvl, v->v0)});
      auto* m = const_cast<Term*>(t.get());
      for (const GlueBranch& g : v->gsys)
        m->sys.emplace_back(quote_cof(lvl, g.cof),
                            mk(K::Pair, {quote(lvl, g.ty),
                                         quote(lvl, g.equiv)}));
      return t;
    }
    case Value::K::GlueI: {
      Tm t = mk(K::GlueI, {quote(lvl, v->v0), quote(lvl, v->v1)});
      auto* m = const_cast<Term*>(t.get());
      for (const VBranch& b : v->branches)
        m->sys.emplace_back(quote_cof(lvl, b.cof),
                            quote(lvl, capply(lvl, b.clo, IvElem::zero())));
      return t;
    }
    case Value::K::HComp: {
      std::vector<std::pair<CofPtr, Tm>> sys;
      for (const VBranch& b : v->branches)
        sys.emplace_back(
            quote_cof(lvl, b.cof),
            quote(lvl + 1, capply(lvl + 1, b.clo, IvElem::var(lvl))));
      return mk_hcomp(v->i0, quote(lvl, v->v0), std::move(sys),
                      quote(lvl, v->v1));
    }
    case Value::K::Transp: {
      Tm line =
          quote(lvl + 1, capply(lvl + 1, v->clo, IvElem::var(lvl)));
      return mk_transp(v->i0, line, quote_cof(lvl, v->cof),
                       quote(lvl, v->v0));
    }
    case Value::K::HitT: {
      std::vector<Tm> ts;
      for (const HArg& a : v->hargs) ts.push_back(quote_harg(lvl, a));
      Tm t = mk(K::HitT, std::move(ts));
      const_cast<Term*>(t.get())->s = v->decl->name;
      return t;
    }
    case Value::K::Ctor: {
      std::vector<Tm> ts;
      for (const HArg& a : v->hargs) ts.push_back(quote_harg(lvl, a));
      for (const HArg& a : v->cargs) ts.push_back(quote_harg(lvl, a));
      Tm t = mk(K::HitCtor, std::move(ts));
      auto* m = const_cast<Term*>(t.get());
      m->s = v->decl->name;
      m->i0 = v->i0;
      m->i1 = (int)v->hargs.size();
      return t;
    }
    case Value::K::CofT: {
      Tm t = mk(K::CofT);
      const_cast<Term*>(t.get())->cof = quote_cof(lvl, v->cof);
      return t;
    }
    case Value::K::CofTT: {
      Tm t = mk(K::CofTT);
      const_cast<Term*>(t.get())->cof = Cof::top();
      return t;
    }
    case Value::K::Ne: {
      Tm acc;
      if (v->ne.head_lvl >= 0)
        acc = mk_var(lvl - 1 - v->ne.head_lvl, fresh_name(v->ne.head_lvl));
      else if (!v->ne.head_def.empty())
        acc = mk_def(v->ne.head_def);
      else
        acc = quote(lvl, v->ne.head_v);
      for (const SpineElem& e : v->ne.spine) {
        switch (e.k) {
          case SpineElem::K::App:
            acc = mk(K::App, {acc, quote(lvl, e.v)});
            break;
          case SpineElem::K::IApp:
            if (e.lhs && e.rhs)
              acc = mk_iapp(acc, quote_iv(lvl, e.iv), quote(lvl, e.lhs),
                            quote(lvl, e.rhs));
            else
              acc = mk_iapp(acc, quote_iv(lvl, e.iv));
            break;
          case SpineElem::K::Fst: acc = mk(K::Fst, {acc}); break;
          case SpineElem::K::Snd: acc = mk(K::Snd, {acc}); break;
          case SpineElem::K::NatRec:
            acc = mk(K::NatRec, {quote(lvl, e.vs[0]), quote(lvl, e.vs[1]),
                                 quote(lvl, e.vs[2]), acc});
            break;
          case SpineElem::K::EmptyRec:
            acc = mk(K::EmptyRec, {quote(lvl, e.vs[0]), acc});
            break;
          case SpineElem::K::SumCase:
            acc = mk(K::SumCase, {quote(lvl, e.vs[0]), quote(lvl, e.vs[1]),
                                  quote(lvl, e.vs[2]), acc});
            break;
          case SpineElem::K::IdJ:
            acc = mk(K::IdJ, {quote(lvl, e.vs[0]), quote(lvl, e.vs[1]),
                              quote(lvl, e.vs[2]), quote(lvl, e.vs[3]),
                              quote(lvl, e.vs[4]), acc});
            break;
          case SpineElem::K::Unglue:
            acc = mk(K::Unglue, {acc, quote(lvl, e.vs[0])});
            break;
          case SpineElem::K::LiftDown:
            acc = mk(K::LiftDown, {acc});
            break;
          case SpineElem::K::HitElim: {
            std::vector<Tm> ts;
            // vs = params ++ {motive} ++ clauses
            int np = (int)e.decl->params.size();
            for (int i = 0; i < np; ++i) ts.push_back(quote(lvl, e.vs[i]));
            ts.push_back(quote(lvl, e.vs[np]));
            for (size_t i = np + 1; i < e.vs.size(); ++i)
              ts.push_back(quote(lvl, e.vs[i]));
            ts.push_back(acc);
            Tm t = mk(K::HitElim, std::move(ts));
            auto* m = const_cast<Term*>(t.get());
            m->s = e.decl->name;
            m->i1 = np;
            acc = t;
            break;
          }
        }
      }
      return acc;
    }
  }
  throw CheckError("quote: unhandled value");
}

Val restrict_val(int lvl, const std::shared_ptr<const Globals>& g,
                 const Val& v, const Assign& as) {
  Tm tm = quote(lvl, v);
  Env env;
  env.globals = g;
  for (int l = 0; l < lvl; ++l) {
    bool assigned = false, val = false;
    for (auto& [x, b] : as)
      if (x == l) {
        assigned = true;
        val = b;
      }
    if (assigned)
      env = env.push_iv(val ? IvElem::one() : IvElem::zero());
    else
      env = env.push_generic(l);
  }
  return eval(lvl, env, tm);
}

Val subst_iv_val(int lvl, const std::shared_ptr<const Globals>& g,
                 const Val& v, int target, const IvElem& r) {
  Tm tm = quote(lvl, v);
  Env env;
  env.globals = g;
  for (int l = 0; l < lvl; ++l) {
    if (l == target)
      env = env.push_iv(r);
    else
      env = env.push_generic(l);
  }
  return eval(lvl, env, tm);
}

} // namespace ctt
