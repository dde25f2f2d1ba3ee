#include "conv.hpp"

namespace ctt {

namespace {

thread_local int conv_depth = 0;
struct DepthGuard {
  DepthGuard() {
    if (++conv_depth > 4000) throw CheckError("conversion depth exceeded");
  }
  ~DepthGuard() { --conv_depth; }
};

bool conv_at(const ConvCtx& cc, const Val& a, const Val& b, const Val& type);

// under the current (true) assumptions, compare after restricting by each
// DNF clause of `cases`
bool conv_cases(const ConvCtx& cc, const Dnf& cases, const Val& a,
                const Val& b, const Val& type) {
  for (const Assign& alpha : cases.clauses) {
    ConvCtx c2 = cc;
    c2.assumptions = Dnf::top();
    Val a2 = alpha.empty() ? a : restrict_val(cc.lvl, cc.globals, a, alpha);
    Val b2 = alpha.empty() ? b : restrict_val(cc.lvl, cc.globals, b, alpha);
    Val t2 = !type ? type
                   : (alpha.empty()
                          ? type
                          : restrict_val(cc.lvl, cc.globals, type, alpha));
    if (alpha.empty()) {
      // an empty clause would loop; fall through to shape comparison
      if (!conv_at(c2, a2, b2, t2)) return false;
    } else if (!conv(c2, a2, b2, t2)) {
      return false;
    }
  }
  return true;
}

bool conv_branch_systems(const ConvCtx& cc, const Val& a, const Val& b,
                         const Dnf& ajoin, const Dnf& bjoin, const Val& type) {
  if (!cof_entails(ajoin, bjoin) || !cof_entails(bjoin, ajoin)) return false;
  return conv_cases(cc, ajoin, a, b, type);
}

Dnf branches_join(const std::vector<VBranch>& bs) {
  Dnf d = Dnf::bot();
  for (const VBranch& b : bs) d = dnf_or(d, b.cof);
  return d;
}

Dnf gsys_join(const std::vector<GlueBranch>& bs) {
  Dnf d = Dnf::bot();
  for (const GlueBranch& b : bs) d = dnf_or(d, b.cof);
  return d;
}

bool conv_spine(const ConvCtx& cc, const Neutral& x, const Neutral& y) {
  if (x.head_lvl != y.head_lvl || x.head_def != y.head_def) return false;
  if ((bool)x.head_v != (bool)y.head_v) return false;
  if (x.head_v && !conv_at(cc, x.head_v, y.head_v, nullptr)) return false;
  if (x.spine.size() != y.spine.size()) return false;
  for (size_t i = 0; i < x.spine.size(); ++i) {
    const SpineElem& e = x.spine[i];
    const SpineElem& f = y.spine[i];
    if (e.k != f.k) return false;
    switch (e.k) {
      case SpineElem::K::App:
        if (!conv_at(cc, e.v, f.v, nullptr)) return false;
        break;
      case SpineElem::K::IApp:
        if (!(e.iv == f.iv)) return false;
        break;
      case SpineElem::K::Fst:
      case SpineElem::K::Snd:
      case SpineElem::K::LiftDown: break;
      case SpineElem::K::NatRec:
      case SpineElem::K::EmptyRec:
      case SpineElem::K::SumCase:
      case SpineElem::K::IdJ:
      case SpineElem::K::Unglue:
        for (size_t j = 0; j < e.vs.size(); ++j)
          if (!conv_at(cc, e.vs[j], f.vs[j], nullptr)) return false;
        break;
      case SpineElem::K::HitElim: {
        if (e.decl != f.decl || e.vs.size() != f.vs.size()) return false;
        for (size_t j = 0; j < e.vs.size(); ++j)
          if (!conv_at(cc, e.vs[j], f.vs[j], nullptr)) return false;
        break;
      }
    }
  }
  return true;
}

bool conv_harg(const ConvCtx& cc, const HArg& a, const HArg& b) {
  if (a.k != b.k) return false;
  switch (a.k) {
    case HArg::K::Term: return conv_at(cc, a.v, b.v, nullptr);
    case HArg::K::Interval: return a.iv == b.iv;
    case HArg::K::Cof: return conv_cof(cc, a.cof, b.cof);
  }
  return false;
}

// comparison of canonical values, shape first; `type` may be null
bool conv_at(const ConvCtx& cc, const Val& a, const Val& b, const Val& type) {
  DepthGuard guard;
  if (a.get() == b.get()) return true;
  using VK = Value::K;

  // type-directed eta
  if (type) switch (type->k) {
      case VK::Pi: {
        ConvCtx c2 = cc;
        c2.lvl = cc.lvl + 1;
        Val x = vVar(cc.lvl);
        return conv(c2, apply(c2.lvl, a, x), apply(c2.lvl, b, x),
                    capply(c2.lvl, type->clo, x));
      }
      case VK::Sigma: {
        Val af = do_fst(cc.lvl, a), bf = do_fst(cc.lvl, b);
        if (!conv(cc, af, bf, type->v0)) return false;
        return conv(cc, do_snd(cc.lvl, a), do_snd(cc.lvl, b),
                    capply(cc.lvl, type->clo, af));
      }
      case VK::PathT: {
        ConvCtx c2 = cc;
        c2.lvl = cc.lvl + 1;
        IvElem i = IvElem::var(cc.lvl);
        return conv(c2, iapply_ann(c2.lvl, a, i, type->v1, type->v2),
                    iapply_ann(c2.lvl, b, i, type->v1, type->v2), type->v0);
      }
      case VK::LineT: {
        ConvCtx c2 = cc;
        c2.lvl = cc.lvl + 1;
        IvElem i = IvElem::var(cc.lvl);
        return conv(c2, iapply(c2.lvl, a, i), iapply(c2.lvl, b, i),
                    capply(c2.lvl, type->clo, i));
      }
      case VK::Unit:
      case VK::CofT: return true;
      case VK::Empty: return true;
      case VK::GlueT: {
        // elements agree iff their unglues agree and they agree under every
        // branch cofibration (where the type computes to the local T)
        Val ua = do_unglue(cc.lvl, type, a);
        Val ub = do_unglue(cc.lvl, type, b);
        if (!conv(cc, ua, ub, type->v0)) return false;
        return conv_cases(cc, gsys_join(type->gsys), a, b, type);
      }
      case VK::IdT: {
        if (a->k == VK::IdIn && b->k == VK::IdIn) {
          if (!conv_cof(cc, a->cof, b->cof)) return false;
          return conv(cc, a->v0, b->v0,
                      vPathT(type->v0, type->v1, type->v2));
        }
        break; // fall through to shape comparison
      }
      default: break;
    }

  // shape-directed (with eta where the shape forces it)
  if (a->k == VK::Lam || b->k == VK::Lam) {
    ConvCtx c2 = cc;
    c2.lvl = cc.lvl + 1;
    Val x = vVar(cc.lvl);
    return conv_at(c2, apply(c2.lvl, a, x), apply(c2.lvl, b, x), nullptr);
  }
  if (a->k == VK::ILam || b->k == VK::ILam) {
    ConvCtx c2 = cc;
    c2.lvl = cc.lvl + 1;
    IvElem i = IvElem::var(cc.lvl);
    return conv_at(c2, iapply(c2.lvl, a, i), iapply(c2.lvl, b, i), nullptr);
  }
  if (a->k == VK::Pair || b->k == VK::Pair) {
    if (!conv_at(cc, do_fst(cc.lvl, a), do_fst(cc.lvl, b), nullptr))
      return false;
    return conv_at(cc, do_snd(cc.lvl, a), do_snd(cc.lvl, b), nullptr);
  }
  if (a->k == VK::Star || b->k == VK::Star) return true; // eta for unit
  if (a->k == VK::CofTT || b->k == VK::CofTT) return a->k == b->k;

  if (a->k != b->k) {
    // numerals may hide under sucs of stuck values
    return false;
  }

  switch (a->k) {
    case VK::U: return a->i0 == b->i0;
    case VK::Pi:
    case VK::Sigma: {
      if (!conv_at(cc, a->v0, b->v0, nullptr)) return false;
      ConvCtx c2 = cc;
      c2.lvl = cc.lvl + 1;
      Val x = vVar(cc.lvl);
      return conv_at(c2, capply(c2.lvl, a->clo, x), capply(c2.lvl, b->clo, x),
                     nullptr);
    }
    case VK::PathT:
      return conv_at(cc, a->v0, b->v0, nullptr) &&
             conv_at(cc, a->v1, b->v1, a->v0) &&
             conv_at(cc, a->v2, b->v2, a->v0);
    case VK::LineT: {
      ConvCtx c2 = cc;
      c2.lvl = cc.lvl + 1;
      IvElem i = IvElem::var(cc.lvl);
      return conv_at(c2, capply(c2.lvl, a->clo, i), capply(c2.lvl, b->clo, i),
                     nullptr);
    }
    case VK::Nat:
    case VK::Unit:
    case VK::Empty: return true;
    case VK::Num:
      if (a->n64 != b->n64) return false;
      if ((bool)a->v0 != (bool)b->v0) return false;
      return !a->v0 || conv_at(cc, a->v0, b->v0, vNat());
    case VK::Sum:
      return conv_at(cc, a->v0, b->v0, nullptr) &&
             conv_at(cc, a->v1, b->v1, nullptr);
    case VK::Inl:
    case VK::Inr:
    case VK::LiftT:
    case VK::LiftUp: return conv_at(cc, a->v0, b->v0, nullptr);
    case VK::IdT:
      return conv_at(cc, a->v0, b->v0, nullptr) &&
             conv_at(cc, a->v1, b->v1, a->v0) &&
             conv_at(cc, a->v2, b->v2, a->v0);
    case VK::IdIn:
      return conv_cof(cc, a->cof, b->cof) &&
             conv_at(cc, a->v0, b->v0, nullptr);
    case VK::CofT: return conv_cof(cc, a->cof, b->cof);
    case VK::GlueT: {
      if (!conv_at(cc, a->v0, b->v0, nullptr)) return false;
      Dnf ja = gsys_join(a->gsys), jb = gsys_join(b->gsys);
      if (!cof_entails(ja, jb) || !cof_entails(jb, ja)) return false;
      // under each branch both sides compute to the local types
      return conv_cases(cc, ja, a, b, nullptr);
    }
    case VK::GlueI: {
      if (!conv_at(cc, a->v0, b->v0, nullptr)) return false;
      return conv_branch_systems(cc, a, b, branches_join(a->branches),
                                 branches_join(b->branches), nullptr);
    }
    case VK::HComp: {
      if (a->i0 != b->i0) return false;
      if (!conv_at(cc, a->v0, b->v0, nullptr)) return false;
      if (!conv_at(cc, a->v1, b->v1, a->v0)) return false;
      Dnf ja = branches_join(a->branches), jb = branches_join(b->branches);
      if (!cof_entails(ja, jb) || !cof_entails(jb, ja)) return false;
      // under each clause some branch fires on both sides
      if (!conv_cases(cc, ja, a, b, a->v0)) return false;
      // compare tubes at a fresh interval point, clause-wise
      ConvCtx c2 = cc;
      c2.lvl = cc.lvl + 1;
      IvElem i = IvElem::var(cc.lvl);
      for (const Assign& alpha : ja.clauses) {
        Val ta, tb;
        for (const VBranch& br : a->branches)
          if (cof_entails(Dnf{{alpha}}, br.cof)) {
            ta = sys_branch_at(c2.lvl, br, i);
            break;
          }
        for (const VBranch& br : b->branches)
          if (cof_entails(Dnf{{alpha}}, br.cof)) {
            tb = sys_branch_at(c2.lvl, br, i);
            break;
          }
        if (!ta || !tb) continue;
        ConvCtx c3 = c2;
        c3.assumptions = Dnf{{alpha}};
        if (!conv(c3, ta, tb, a->v0)) return false;
      }
      return true;
    }
    case VK::Transp: {
      if (a->i0 != b->i0) return false;
      if (!conv_cof(cc, a->cof, b->cof)) return false;
      ConvCtx c2 = cc;
      c2.lvl = cc.lvl + 1;
      IvElem i = IvElem::var(cc.lvl);
      if (!conv_at(c2, capply(c2.lvl, a->clo, i), capply(c2.lvl, b->clo, i),
                   nullptr))
        return false;
      return conv_at(cc, a->v0, b->v0, nullptr);
    }
    case VK::HitT: {
      if (a->decl != b->decl || a->hargs.size() != b->hargs.size())
        return false;
      for (size_t i = 0; i < a->hargs.size(); ++i)
        if (!conv_harg(cc, a->hargs[i], b->hargs[i])) return false;
      return true;
    }
    case VK::Ctor: {
      if (a->decl != b->decl || a->i0 != b->i0) return false;
      for (size_t i = 0; i < a->hargs.size(); ++i)
        if (!conv_harg(cc, a->hargs[i], b->hargs[i])) return false;
      for (size_t i = 0; i < a->cargs.size(); ++i)
        if (!conv_harg(cc, a->cargs[i], b->cargs[i])) return false;
      return true;
    }
    case VK::Ne: return conv_spine(cc, a->ne, b->ne);
    default: return false;
  }
}

} // namespace

bool conv_cof(const ConvCtx& cc, const Dnf& a, const Dnf& b) {
  Dnf a2 = a, b2 = b;
  if (!cc.assumptions.is_true()) {
    // compare relative to the assumptions
    a2 = dnf_and(a, cc.assumptions);
    b2 = dnf_and(b, cc.assumptions);
  }
  return cof_entails(a2, b2) && cof_entails(b2, a2);
}

bool conv(const ConvCtx& cc, const Val& a, const Val& b, const Val& type) {
  if (cc.assumptions.is_false()) return true;
  if (!cc.assumptions.is_true()) {
    ConvCtx c2 = cc;
    c2.assumptions = Dnf::top();
    for (const Assign& alpha : cc.assumptions.clauses) {
      if (alpha.empty()) return conv(c2, a, b, type);
      Val a2 = restrict_val(cc.lvl, cc.globals, a, alpha);
      Val b2 = restrict_val(cc.lvl, cc.globals, b, alpha);
      Val t2 = type ? restrict_val(cc.lvl, cc.globals, type, alpha) : type;
      if (!conv(c2, a2, b2, t2)) return false;
    }
    return true;
  }
  return conv_at(cc, a, b, type);
}

} // namespace ctt
