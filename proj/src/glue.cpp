#include "eval.hpp"

// Glue types and their composition structure, plus the kernel-built
// equivalence machinery (contractible fibers). Composition at the universe
// is a Glue type whose equivalences transport the identity equivalence
// along the tube.

namespace ctt {

namespace {

Val force_part(int lvl, const Closure& c) {
  if (c.inative) return c.inative(lvl, IvElem::zero());
  return eval(lvl, c.env, c.body);
}

Closure const_part(Val v) {
  return make_inative([v](int, const IvElem&) { return v; });
}

} // namespace

// fiber f b = (x : T) * Path A (f x) b
Val fiber_type(int lvl, const Val& dom, const Val& cod, const Val& f,
               const Val& b) {
  Val codv = cod, fv = f, bv = b;
  return vSigma(dom, make_native([codv, fv, bv](int l, Val x) {
                  return vPathT(codv, apply(l, fv, x), bv);
                }));
}

static Val contr_type(int lvl, const Val& c) {
  Val cv = c;
  return vSigma(c, make_native([cv](int, Val center) {
                  Val ctr = center;
                  Val cc = cv;
                  return vPi(cc, make_native([cc, ctr](int, Val y) {
                               return vPathT(cc, y, ctr);
                             }));
                }));
}

Val equiv_type(int lvl, const Val& dom, const Val& cod) {
  Val d = dom, c = cod;
  Val fun_ty = vPi(dom, make_native([c](int, Val) { return c; }));
  return vSigma(fun_ty, make_native([d, c](int l, Val f) {
                  Val ff = f;
                  Val dd = d, cc = c;
                  return vPi(c, make_native([dd, cc, ff](int l2, Val b) {
                               return contr_type(
                                   l2, fiber_type(l2, dd, cc, ff, b));
                             }));
                }));
}

Val id_equiv(int lvl, const Val& a) {
  Val av = a;
  Val idf = vLam(make_native([](int, Val x) { return x; }));
  Val w = vLam(make_native([av](int l, Val b) {
    Val bb = b;
    Val center = vPair(b, vILam(make_inative([bb](int, const IvElem&) {
                         return bb;
                       })));
    Val contraction = vLam(make_native([bb, center](int l2, Val y) {
      Val q = do_snd(l2, y);
      Val x = do_fst(l2, y);
      Val bbb = bb;
      Val ctr = center;
      Val yy = y;
      return vILam(make_inative([q, x, bbb, ctr, yy](int l3,
                                                     const IvElem& j) {
        Val pt = iapply_ann(l3, q, j, x, bbb);
        Val path = vILam(make_inative([q, x, bbb, j](int l4,
                                                     const IvElem& k) {
          return iapply_ann(l4, q, iv_join(j, k), x, bbb);
        }));
        return vPair(pt, path);
      }));
    }));
    return vPair(center, contraction);
  }));
  return vPair(idf, w);
}

Val equiv_fun(int lvl, const Val& e, const Val& x) {
  return apply(lvl, do_fst(lvl, e), x);
}

// Extend a partial fiber point over b to a total one: compose from the
// center of contraction along the contraction paths of the partial points.
Val equiv_fiber_point(int lvl, const Val& equiv, const Val& dom,
                      const Val& cod, const Val& b,
                      const std::vector<std::pair<Dnf, Val>>& partial) {
  Val contr = apply(lvl, do_snd(lvl, equiv), b);
  Val center = do_fst(lvl, contr);
  Val paths = do_snd(lvl, contr);
  if (partial.empty()) return center;
  Val fib = fiber_type(lvl, dom, cod, do_fst(lvl, equiv), b);
  std::vector<VBranch> sys;
  for (auto& [cf, y] : partial) {
    Val yy = y;
    Val pths = paths;
    Val ctr = center;
    sys.push_back(VBranch{cf, make_inative([yy, pths, ctr](int l,
                                                           const IvElem& m) {
                    return iapply_ann(l, apply(l, pths, yy), m, yy, ctr);
                  })});
  }
  // cap sits at the center end (m = 1); the extension lives at m = 0
  return hcomp_at(lvl, fib, 1, std::move(sys), center);
}

Val glue_type(int lvl, const Val& base, std::vector<GlueBranch> branches) {
  std::vector<GlueBranch> live;
  for (GlueBranch& g : branches) {
    if (g.cof.is_false()) continue;
    if (g.cof.is_true()) return g.ty;
    live.push_back(std::move(g));
  }
  if (live.empty()) return base;
  auto v = mkv(Value::K::GlueT);
  auto* m = const_cast<Value*>(v.get());
  m->v0 = base;
  m->gsys = std::move(live);
  return v;
}

Val glue_intro(int lvl, const Val& glue_ty, std::vector<VBranch> parts,
               const Val& base) {
  std::vector<VBranch> live;
  for (VBranch& p : parts) {
    if (p.cof.is_false()) continue;
    if (p.cof.is_true()) return force_part(lvl, p.clo);
    live.push_back(std::move(p));
  }
  auto v = mkv(Value::K::GlueI);
  auto* m = const_cast<Value*>(v.get());
  m->v0 = base;
  m->v1 = glue_ty;
  m->branches = std::move(live);
  return v;
}

// unglue against explicitly supplied glue data (pre-collapse)
static Val unglue_with(int lvl, const Val& base,
                       const std::vector<GlueBranch>& bs, const Val& g,
                       const Val& glue_ty_value) {
  for (const GlueBranch& b : bs)
    if (b.cof.is_true()) return equiv_fun(lvl, b.equiv, g);
  if (g->k == Value::K::GlueI) return g->v0;
  if (g->k == Value::K::Ne) {
    Neutral n = g->ne;
    SpineElem e;
    e.k = SpineElem::K::Unglue;
    e.vs = {glue_ty_value};
    n.spine.push_back(std::move(e));
    return vNe(std::move(n));
  }
  throw CheckError("unglue of a non-glue value");
}

Val do_unglue(int lvl, const Val& glue_ty, const Val& g) {
  if (glue_ty->k == Value::K::GlueT)
    return unglue_with(lvl, glue_ty->v0, glue_ty->gsys, g, glue_ty);
  // the type collapsed to a branch (its cofibration was true); the
  // elaborator guarantees the annotation is a literal Glue type term, so
  // this only happens through restriction, where the equivalence is gone.
  // In that situation g itself is the T-side element and the collapsed type
  // IS T, so unglue must not be re-applied; treat as identity.
  return g;
}

Val hcomp_glue(int lvl, const Val& glue_ty, int eps, std::vector<VBranch> sys,
               const Val& cap) {
  const Val& base = glue_ty->v0;
  const std::vector<GlueBranch>& gb = glue_ty->gsys;

  // per glue branch: compose inside T
  std::vector<VBranch> parts;
  for (const GlueBranch& b : gb) {
    Val t1 = hcomp_at(lvl, b.ty, eps, sys, cap);
    parts.push_back(VBranch{b.cof, const_part(t1)});
  }
  // base: compose unglues, with the glue branches tracked along fillers
  std::vector<VBranch> bsys;
  Val gty = glue_ty;
  for (const VBranch& s : sys) {
    Closure clo = s.clo;
    bsys.push_back(VBranch{s.cof, make_inative([clo, gty](int l,
                                                          const IvElem& i) {
                     return do_unglue(l, gty, capply(l, clo, i));
                   })});
  }
  for (const GlueBranch& b : gb) {
    Val ty = b.ty, eq = b.equiv, capv = cap;
    auto sysc = sys;
    int e = eps;
    bsys.push_back(VBranch{b.cof, make_inative([ty, eq, capv, sysc, e](
                                                   int l, const IvElem& i) {
                     return equiv_fun(l, eq,
                                      hfill_at(l, ty, e, sysc, capv, i));
                   })});
  }
  Val a1 = hcomp_at(lvl, base, eps, std::move(bsys),
                    do_unglue(lvl, glue_ty, cap));
  return glue_intro(lvl, glue_ty, std::move(parts), a1);
}

Val transp_glue(int lvl, int dir, const Closure& line, const Dnf& phi,
                const Val& arg) {
  // the generic point of the line
  int L = lvl;
  Val head = capply(lvl + 1, line, IvElem::var(L));
  auto globals = line.env.globals ? line.env.globals : current_globals();

  IvElem src = dir == 0 ? IvElem::zero() : IvElem::one();
  IvElem dst = dir == 0 ? IvElem::one() : IvElem::zero();

  auto subst_at = [&](const Val& v, const IvElem& r) {
    return subst_iv_val(lvl + 1, globals, v, L, r);
  };

  // base line
  Val baseL = head->v0;
  Closure base_line = make_inative([baseL, L, globals](int l,
                                                       const IvElem& k) {
    return subst_iv_val(l <= L ? L + 1 : l, globals, baseL, L, k);
  });

  // source unglue
  Val a0;
  {
    std::vector<GlueBranch> at_src;
    for (const GlueBranch& b : head->gsys)
      at_src.push_back(GlueBranch{cof_subst(b.cof, {{L, src}}),
                                  subst_at(b.ty, src),
                                  subst_at(b.equiv, src)});
    Val gts = glue_type(lvl, subst_at(baseL, src), at_src);
    a0 = unglue_with(lvl, subst_at(baseL, src), at_src, arg, gts);
  }

  Val a1 = transp_at(lvl, dir, base_line, phi, a0);

  // glue data at the destination
  std::vector<GlueBranch> at_dst;
  for (const GlueBranch& b : head->gsys)
    at_dst.push_back(GlueBranch{cof_subst(b.cof, {{L, dst}}),
                                subst_at(b.ty, dst), subst_at(b.equiv, dst)});

  std::vector<VBranch> parts;
  std::vector<VBranch> base_fix;
  base_fix.push_back(VBranch{phi, const_part(a1)});
  for (size_t bi = 0; bi < head->gsys.size(); ++bi) {
    const GlueBranch& bL = head->gsys[bi];
    const GlueBranch& bD = at_dst[bi];
    if (bD.cof.is_false()) continue;
    Dnf delta = cof_forall(bL.cof, L);

    std::vector<std::pair<Dnf, Val>> partial;
    if (!phi.is_false()) {
      // under phi everything is constant and arg is already the answer
      Val refl_a1 = vILam(make_inative([a1](int, const IvElem&) {
        return a1;
      }));
      partial.emplace_back(phi, vPair(arg, refl_a1));
    }
    if (!delta.is_false()) {
      // transport inside T along the whole branch
      Val tyL = bL.ty;
      auto globals2 = globals;
      int LL = L;
      Closure t_line = make_inative([tyL, LL, globals2](int l,
                                                        const IvElem& k) {
        return subst_iv_val(l <= LL ? LL + 1 : l, globals2, tyL, LL, k);
      });
      Val t1 = transp_at(lvl, dir, t_line, phi, arg);
      // the comparison square between the two transports
      Closure tl = t_line;
      Closure bl = base_line;
      Dnf ph = phi;
      Val argv = arg;
      Val eqL = bL.equiv;
      int d = dir;
      auto sub = subst_at;
      Val omega = vILam(make_inative([tl, bl, ph, argv, a0, d, eqL, LL,
                                      globals2](int l, const IvElem& j) {
        std::vector<VBranch> sys;
        Closure tl2 = tl;
        Dnf ph2 = ph;
        Val argv2 = argv;
        Val eq2 = eqL;
        sys.push_back(VBranch{
            dnf_eq(j, false),
            make_inative([tl2, ph2, argv2, eq2, LL, globals2, d](
                             int l2, const IvElem& k) {
              Val fil = transp_fill(l2, d, tl2, ph2, argv2, k);
              Val eqk = subst_iv_val(l2 <= LL ? LL + 1 : l2, globals2, eq2,
                                     LL, k);
              return equiv_fun(l2, eqk, fil);
            })});
        Closure bl2 = bl;
        Val a0v = a0;
        sys.push_back(VBranch{dnf_eq(j, true),
                              make_inative([bl2, ph2, a0v, d](
                                               int l2, const IvElem& k) {
                                return transp_fill(l2, d, bl2, ph2, a0v, k);
                              })});
        sys.push_back(VBranch{ph2, const_part(a0)});
        return comp_at(l, d, bl, std::move(sys), a0);
      }));
      partial.emplace_back(delta, vPair(t1, omega));
      (void)sub;
    }
    Val ext = equiv_fiber_point(lvl, bD.equiv, bD.ty, subst_at(baseL, dst),
                                a1, partial);
    Val part_pt = do_fst(lvl, ext);
    Val part_path = do_snd(lvl, ext);
    parts.push_back(VBranch{bD.cof, const_part(part_pt)});
    Val efst = equiv_fun(lvl, bD.equiv, part_pt);
    base_fix.push_back(VBranch{
        bD.cof, make_inative([part_path, efst, a1](int l, const IvElem& m) {
          return iapply_ann(l, part_path, m, efst, a1);
        })});
  }

  Val base_dst = subst_at(baseL, dst);
  Val a1_fixed = hcomp_at(lvl, base_dst, 1, std::move(base_fix), a1);
  Val gty_dst = glue_type(lvl, base_dst, at_dst);
  if (gty_dst->k != Value::K::GlueT) {
    // the glue type collapsed at the destination: the part itself is total
    for (VBranch& p : parts)
      if (p.cof.is_true()) return force_part(lvl, p.clo);
    // no branch is total but the type collapsed: base carries the answer
    return a1_fixed;
  }
  return glue_intro(lvl, gty_dst, std::move(parts), a1_fixed);
}

Val hcomp_universe(int lvl, int level, int eps, std::vector<VBranch> sys,
                   const Val& cap) {
  std::vector<GlueBranch> branches;
  for (const VBranch& s : sys) {
    Val t_far = capply(lvl, s.clo, eps == 0 ? IvElem::one() : IvElem::zero());
    Closure clo = s.clo;
    // equivalence T(1-eps) ~ T(eps) : transport the identity equivalence
    // along the tube toward the cap end
    Val tf = t_far;
    Closure eq_line = make_inative([clo, tf](int l, const IvElem& k) {
      return equiv_type(l, tf, capply(l, clo, k));
    });
    Val e = transp_at(lvl, eps == 0 ? 1 : 0, eq_line, Dnf::bot(),
                      id_equiv(lvl, t_far));
    branches.push_back(GlueBranch{s.cof, t_far, e});
  }
  (void)level;
  return glue_type(lvl, cap, std::move(branches));
}

} // namespace ctt
