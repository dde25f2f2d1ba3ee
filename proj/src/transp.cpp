#include "eval.hpp"

// Transport along lines of higher inductive types. Most declarations
// transport structurally: parameters move along their instantiated type
// lines, nullary children recurse, and kernel-level hcomp values are
// preserved. The K family gets the bespoke transport with the correction
// square at its path constructor.

namespace ctt {

namespace {

std::vector<HArg> params_at(int lvl, const std::shared_ptr<const Globals>& g,
                            const std::vector<HArg>& params, int L,
                            const IvElem& k) {
  std::vector<HArg> out;
  for (const HArg& p : params) {
    if (p.k != HArg::K::Term) throw CheckError("non-term HIT parameter");
    out.push_back(HArg::term(subst_iv_val(std::max(lvl, L + 1), g, p.v, L, k)));
  }
  return out;
}

Closure self_line(int lvl, const std::shared_ptr<const Globals>& g,
                  const HitDecl* d, const std::vector<HArg>& params, int L) {
  return make_inative([=](int l, const IvElem& k) {
    return hit_type(l, d, params_at(l, g, params, L, k));
  });
}

// transport for the K family, by higher recursion on the value
Val k_transport(int lvl, int dir, const std::shared_ptr<const Globals>& g,
                const HitDecl* d, const std::vector<HArg>& params, int L,
                const Dnf& phi, const Val& arg) {
  // params = {A, B} at the generic point L
  Val A = params[0].v, B = params[1].v;
  auto a_line = make_inative([=](int l, const IvElem& k) {
    return subst_iv_val(std::max(l, L + 1), g, A, L, k);
  });
  auto b_at = [=](int l, const IvElem& k) {
    return subst_iv_val(std::max(l, L + 1), g, B, L, k);
  };
  IvElem src = dir == 0 ? IvElem::zero() : IvElem::one();
  IvElem dst = dir == 0 ? IvElem::one() : IvElem::zero();
  auto dst_params = params_at(lvl, g, params, L, dst);
  Closure self = self_line(lvl, g, d, params, L);
  Dnf ph = phi;
  int dd = dir;
  Closure selfc = self;
  auto t = [selfc, ph, dd](int l, const Val& x) {
    return transp_at(l, dd, selfc, ph, x);
  };

  switch (arg->k) {
    case Value::K::Ctor: {
      // the B-fibre line over the transported head point
      auto fibre_line = [&](const Val& a) {
        Closure al = a_line;
        Dnf ph2 = phi;
        Val av = a;
        auto bat = b_at;
        int d2 = dir;
        return make_inative([al, ph2, av, bat, d2](int l, const IvElem& k) {
          Val afill = transp_fill(l, d2, al, ph2, av, k);
          return apply(l, bat(l, k), afill);
        });
      };
      if (arg->i0 == 0) {
        // ext(a, f)
        Val a = arg->cargs[0].v, f = arg->cargs[1].v;
        Closure bl = fibre_line(a);
        Val ta = transp_at(lvl, dir, a_line, phi, a);
        Val fv = f;
        Closure blc = bl;
        auto tc = t;
        Val f2 = vLam(make_native([fv, blc, ph, dd, tc](int l, Val b2) {
          Val b0 = transp_at(l, 1 - dd, blc, ph, b2);
          return tc(l, apply(l, fv, b0));
        }));
        return hit_ctor(lvl, g, d, 0, dst_params,
                        {HArg::term(ta), HArg::term(f2)});
      }
      // pcone(a, b, i, f)
      Val a = arg->cargs[0].v, b = arg->cargs[1].v;
      IvElem i = arg->cargs[2].iv;
      Val f = arg->cargs[3].v;
      Closure bl = fibre_line(a);
      Val ta = transp_at(lvl, dir, a_line, phi, a);
      Val tb = transp_at(lvl, dir, bl, phi, b);
      Val fv = f;
      Closure blc = bl;
      auto tc = t;
      Val f2 = vLam(make_native([fv, blc, ph, dd, tc](int l, Val b2) {
        Val b0 = transp_at(l, 1 - dd, blc, ph, b2);
        return tc(l, apply(l, fv, b0));
      }));
      Val tf = vLam(make_native([fv, tc](int l, Val b2) {
        return tc(l, apply(l, fv, b2));
      }));

      // the corrected path p with p(0) = tB^-1(tB b) and p(1) = b
      Closure blc2 = bl;
      Val bv = b;
      Val q0 = vILam(make_inative([blc2, ph, bv, dd](int l, const IvElem& j) {
        return transp_fill(l, dd, blc2, ph, bv, j);
      }));
      Val pprime = vILam(make_inative([blc2, ph, bv, dd, q0](int l,
                                                             const IvElem& j) {
        Closure trunc = make_inative([blc2, j, dd](int l2, const IvElem& k) {
          return capply(l2, blc2, dd == 0 ? iv_meet(k, j) : iv_join(k, j));
        });
        return transp_at(l, 1 - dd,
                         trunc,
                         dnf_or(ph, dnf_eq(j, dd == 1)), iapply(l, q0, j));
      }));
      Val bsrc = capply(lvl, bl, src);
      Val p = vILam(make_inative([pprime, bv, bsrc](int l, const IvElem& j) {
        std::vector<VBranch> sys;
        Val pp = pprime;
        sys.push_back(VBranch{dnf_eq(j, false),
                              make_inative([pp](int l2, const IvElem& m) {
                                return iapply(l2, pp, m);
                              })});
        Val bb = bv;
        sys.push_back(VBranch{dnf_eq(j, true),
                              make_inative([bb](int, const IvElem&) {
                                return bb;
                              })});
        return hcomp_at(l, bsrc, 0, std::move(sys), bv);
      }));

      // four-branch correction square, composed inside K at the far end
      Dnf psi = dnf_or(phi, dnf_or(dnf_eq(i, false), dnf_eq(i, true)));
      std::vector<VBranch> sys;
      {
        // under phi the answer is the input with transported children
        auto dp = dst_params;
        auto gg = g;
        auto di = d;
        Val av = a, bvv = b, tfv = tf;
        IvElem ii = i;
        sys.push_back(VBranch{phi, make_inative([gg, di, dp, av, bvv, ii,
                                                 tfv](int l, const IvElem&) {
                        return hit_ctor(l, gg, di, 1, dp,
                                        {HArg::term(av), HArg::term(bvv),
                                         HArg::interval(ii), HArg::term(tfv)});
                      })});
      }
      {
        auto dp = dst_params;
        auto gg = g;
        auto di = d;
        Val tav = ta, f2v = f2;
        sys.push_back(VBranch{dnf_eq(i, false),
                              make_inative([gg, di, dp, tav, f2v](
                                               int l, const IvElem&) {
                                return hit_ctor(l, gg, di, 0, dp,
                                                {HArg::term(tav),
                                                 HArg::term(f2v)});
                              })});
      }
      {
        Val fv2 = f;
        auto tcv = t;
        Val pv = p;
        sys.push_back(VBranch{dnf_eq(i, true),
                              make_inative([fv2, tcv, pv](int l,
                                                          const IvElem& j) {
                                return tcv(l, apply(l, fv2, iapply(l, pv, j)));
                              })});
      }
      Val naive = hit_ctor(lvl, g, d, 1, dst_params,
                           {HArg::term(ta), HArg::term(tb), HArg::interval(i),
                            HArg::term(f2)});
      (void)psi;
      return hcomp_at(lvl, hit_type(lvl, d, dst_params), 0, std::move(sys),
                      naive);
    }
    case Value::K::HComp: {
      // transport preserves the hcomp structure, which determines it
      std::vector<VBranch> sys;
      for (const VBranch& br : arg->branches) {
        Closure clo = br.clo;
        auto tc = t;
        sys.push_back(VBranch{br.cof,
                              make_inative([clo, tc](int l, const IvElem& j) {
                                return tc(l, capply(l, clo, j));
                              })});
      }
      return hcomp_at(lvl, hit_type(lvl, d, dst_params), arg->i0,
                      std::move(sys), t(lvl, arg->v1));
    }
    case Value::K::Ne: {
      auto v = mkv(Value::K::Transp);
      auto* m = const_cast<Value*>(v.get());
      m->i0 = dir;
      m->clo = self_line(lvl, g, d, params, L);
      m->cof = phi;
      m->v0 = arg;
      return v;
    }
    default: throw CheckError("k_transport: unexpected value");
  }
}

} // namespace

Val transp_hit(int lvl, int dir, const Closure& line, const Dnf& phi,
               const Val& arg, const Val& head) {
  const HitDecl* d = head->decl;
  auto g = line.env.globals ? line.env.globals : current_globals();
  int L = lvl;
  const std::vector<HArg>& params = head->hargs;

  // a constant line transports by the identity only when phi says so; the
  // structural rules below handle the general case
  if (d->kernel_transport) return k_transport(lvl, dir, g, d, params, L, phi, arg);

  IvElem dst = dir == 0 ? IvElem::one() : IvElem::zero();
  auto dst_params = params_at(lvl, g, params, L, dst);
  Closure self = self_line(lvl, g, d, params, L);
  Dnf ph = phi;
  int dd = dir;
  Closure selfc = self;
  auto t = [selfc, ph, dd](int l, const Val& x) {
    return transp_at(l, dd, selfc, ph, x);
  };

  switch (arg->k) {
    case Value::K::Ctor: {
      const HitCtorSpec& cs = d->ctors[arg->i0];
      // fillers for every argument at an arbitrary point of the line;
      // computed left to right so later types may depend on earlier args
      std::function<std::vector<HArg>(int, const IvElem&, size_t)> args_at =
          [&](int l, const IvElem& k, size_t upto) -> std::vector<HArg> {
        std::vector<HArg> out;
        for (size_t p = 0; p < upto; ++p) {
          const HitArgSpec& spec = cs.args[p];
          const HArg& orig = arg->cargs[p];
          switch (spec.k) {
            case HitArgSpec::K::Interval:
              out.push_back(orig);
              break;
            case HitArgSpec::K::Term: {
              Tm ty = spec.type;
              auto prefix = out;
              auto gg = g;
              auto pp = params;
              int LL = L;
              size_t pidx = p;
              auto args_at_c = args_at;
              Closure tyline = make_inative(
                  [ty, gg, pp, LL, pidx, args_at_c, this_arg = arg](
                      int l2, const IvElem& k2) {
                    auto ps = params_at(l2, gg, pp, LL, k2);
                    auto pre = args_at_c(l2, k2, pidx);
                    Env env = hit_scope_env(gg, ps, pre);
                    return eval(l2, env, ty);
                  });
              out.push_back(HArg::term(
                  transp_fill(l, dd, tyline, ph, orig.v, k)));
              break;
            }
            case HitArgSpec::K::Child: {
              if (!spec.tele.empty())
                throw CheckError(
                    "transport along '" + d->name +
                    "' lines: children with indexed arities are unsupported");
              Closure selfl = selfc;
              out.push_back(HArg::term(
                  transp_fill(l, dd, selfl, ph, orig.v, k)));
              break;
            }
            case HitArgSpec::K::Cof:
              throw CheckError("cof constructor argument in transport");
          }
        }
        return out;
      };
      std::vector<HArg> newargs = args_at(lvl, dst, cs.args.size());
      return hit_ctor(lvl, g, d, arg->i0, dst_params, std::move(newargs));
    }
    case Value::K::HComp: {
      std::vector<VBranch> sys;
      for (const VBranch& br : arg->branches) {
        Closure clo = br.clo;
        auto tc = t;
        sys.push_back(VBranch{br.cof,
                              make_inative([clo, tc](int l, const IvElem& j) {
                                return tc(l, capply(l, clo, j));
                              })});
      }
      return hcomp_at(lvl, hit_type(lvl, d, dst_params), arg->i0,
                      std::move(sys), t(lvl, arg->v1));
    }
    case Value::K::Ne: {
      auto v = mkv(Value::K::Transp);
      auto* m = const_cast<Value*>(v.get());
      m->i0 = dir;
      m->clo = line;
      m->cof = phi;
      m->v0 = arg;
      return v;
    }
    default:
      throw CheckError("transport applied to a non-" + d->name + " value");
  }
}

} // namespace ctt
