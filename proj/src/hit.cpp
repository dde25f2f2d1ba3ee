#include "hit.hpp"

#include "eval.hpp"

namespace ctt {

int HitDecl::ctor_index(const std::string& n) const {
  for (size_t i = 0; i < ctors.size(); ++i)
    if (ctors[i].name == n) return (int)i;
  return -1;
}

Env hit_scope_env(const std::shared_ptr<const Globals>& g,
                  const std::vector<HArg>& params,
                  const std::vector<HArg>& args) {
  Env env;
  env.globals = g;
  auto push = [&env](const HArg& a) {
    switch (a.k) {
      case HArg::K::Term: env = env.push_val(a.v); break;
      case HArg::K::Interval: env = env.push_iv(a.iv); break;
      case HArg::K::Cof:
        throw CheckError("cofibration-kinded constructor arguments are not "
                         "supported");
    }
  };
  for (const HArg& a : params) push(a);
  for (const HArg& a : args) push(a);
  return env;
}

Val hit_type(int lvl, const HitDecl* d, std::vector<HArg> params) {
  auto v = mkv(Value::K::HitT);
  auto* m = const_cast<Value*>(v.get());
  m->decl = d;
  m->hargs = std::move(params);
  return v;
}

Val hit_ctor(int lvl, const std::shared_ptr<const Globals>& g,
             const HitDecl* d, int cidx, const std::vector<HArg>& params,
             std::vector<HArg> args) {
  const HitCtorSpec& cs = d->ctors[cidx];
  for (const HitRed& red : cs.reds) {
    Env env = hit_scope_env(g, params, args);
    Dnf c = eval_cof(env, red.cof);
    if (c.is_true()) {
      if (--eval_fuel <= 0)
        throw CheckError("reduction fuel exhausted in " + d->name);
      return eval(lvl, env, red.target);
    }
  }
  auto v = mkv(Value::K::Ctor);
  auto* m = const_cast<Value*>(v.get());
  m->decl = d;
  m->i0 = cidx;
  m->hargs = params;
  m->cargs = std::move(args);
  return v;
}

namespace {

// induction hypothesis for a child f over an index telescope of the given
// arity: \xs. elim (f xs)
Val make_ih(int arity, const std::shared_ptr<const Globals>& g,
            const HitDecl* d, const std::vector<Val>& params,
            const Val& motive, const std::vector<Val>& clauses, const Val& f,
            std::vector<Val> collected) {
  if (arity == 0) {
    return nullptr; // caller handles the nullary case directly
  }
  return vLam(make_native([=](int l, Val x) -> Val {
    std::vector<Val> coll = collected;
    coll.push_back(x);
    if ((int)coll.size() == arity) {
      Val fx = f;
      for (const Val& a : coll) fx = apply(l, fx, a);
      return hit_elim(l, g, d, params, motive, clauses, fx);
    }
    return make_ih(arity, g, d, params, motive, clauses, f, coll);
  }));
}

} // namespace

Val hit_elim(int lvl, const std::shared_ptr<const Globals>& g,
             const HitDecl* d, const std::vector<Val>& params,
             const Val& motive, const std::vector<Val>& clauses,
             const Val& scrut) {
  switch (scrut->k) {
    case Value::K::Ctor: {
      const HitCtorSpec& cs = d->ctors[scrut->i0];
      Val acc = clauses[scrut->i0];
      // constructor arguments in order, then induction hypotheses per child
      for (size_t i = 0; i < cs.args.size(); ++i) {
        const HArg& a = scrut->cargs[i];
        switch (a.k) {
          case HArg::K::Term: acc = apply(lvl, acc, a.v); break;
          case HArg::K::Interval: acc = iapply(lvl, acc, a.iv); break;
          case HArg::K::Cof:
            throw CheckError("cof constructor argument in eliminator");
        }
      }
      for (size_t i = 0; i < cs.args.size(); ++i) {
        if (cs.args[i].k != HitArgSpec::K::Child) continue;
        int arity = (int)cs.args[i].tele.size();
        const Val& f = scrut->cargs[i].v;
        if (arity == 0) {
          acc = apply(lvl, acc, hit_elim(lvl, g, d, params, motive, clauses, f));
        } else {
          acc = apply(lvl, acc,
                      make_ih(arity, g, d, params, motive, clauses, f, {}));
        }
      }
      return acc;
    }
    case Value::K::HComp: {
      // use the fibration structure of the motive over the filler
      Val ty = scrut->v0;
      int eps = scrut->i0;
      const std::vector<VBranch>& sys = scrut->branches;
      Val cap = scrut->v1;
      Closure line = make_inative([=](int l, const IvElem& j) {
        return apply(l, motive, hfill_at(l, ty, eps, sys, cap, j));
      });
      std::vector<VBranch> esys;
      for (const VBranch& b : sys) {
        Closure clo = b.clo;
        auto gg = g;
        auto dd = d;
        auto pp = params;
        auto mm = motive;
        auto cc = clauses;
        esys.push_back(
            VBranch{b.cof, make_inative([=](int l, const IvElem& i) {
                      return hit_elim(l, gg, dd, pp, mm, cc,
                                      capply(l, clo, i));
                    })});
      }
      Val ecap = hit_elim(lvl, g, d, params, motive, clauses, cap);
      return comp_at(lvl, eps == 0 ? 0 : 1, line, std::move(esys), ecap);
    }
    case Value::K::Ne: {
      SpineElem e;
      e.k = SpineElem::K::HitElim;
      e.decl = d;
      e.vs = params;
      e.vs.push_back(motive);
      for (const Val& c : clauses) e.vs.push_back(c);
      Neutral n = scrut->ne;
      n.spine.push_back(std::move(e));
      return vNe(std::move(n));
    }
    default:
      throw CheckError("eliminator applied to a non-" + d->name + " value");
  }
}

} // namespace ctt
