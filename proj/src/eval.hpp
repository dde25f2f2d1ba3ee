#ifndef CUBECK_EVAL_HPP
#define CUBECK_EVAL_HPP

#include "hit.hpp"
#include "value.hpp"

// Evaluation, application, composition/transport structure, and quotation.
// `lvl` is the ambient context depth; fresh variables start at that level.

namespace ctt {

Val eval(int lvl, const Env& env, const Tm& t);
IvElem eval_iv(const Env& env, const IvPtr& t);
Dnf eval_cof(const Env& env, const CofPtr& c);

Val capply(int lvl, const Closure& c, const Val& v);
Val capply(int lvl, const Closure& c, const IvElem& r);

Val apply(int lvl, const Val& f, const Val& a);
Val iapply(int lvl, const Val& f, const IvElem& r);
Val do_fst(int lvl, const Val& p);
Val do_snd(int lvl, const Val& p);
Val do_natrec(int lvl, const Val& motive, const Val& z, const Val& s,
              const Val& n);
Val do_emptyrec(int lvl, const Val& motive, const Val& a);
Val do_sumcase(int lvl, const Val& motive, const Val& f, const Val& g,
               const Val& scrut);
Val do_idj(int lvl, const Val& bigA, const Val& a, const Val& motive,
           const Val& d, const Val& b, const Val& prf);
Val do_liftdown(int lvl, const Val& a);

// Glue (defined in glue.cpp)
Val glue_type(int lvl, const Val& base, std::vector<GlueBranch> branches);
Val glue_intro(int lvl, const Val& glue_ty, std::vector<VBranch> parts,
               const Val& base);
Val do_unglue(int lvl, const Val& glue_ty, const Val& g);
Val hcomp_glue(int lvl, const Val& glue_ty, int eps, std::vector<VBranch> sys,
               const Val& cap);
Val transp_glue(int lvl, int dir, const Closure& line, const Dnf& phi,
                const Val& arg);
Val hcomp_universe(int lvl, int level, int eps, std::vector<VBranch> sys,
                   const Val& cap);
// kernel-built equivalence machinery
Val fiber_type(int lvl, const Val& dom, const Val& cod, const Val& f,
               const Val& b);
Val equiv_type(int lvl, const Val& dom, const Val& cod);
Val id_equiv(int lvl, const Val& a);
Val equiv_fun(int lvl, const Val& e, const Val& x);
// extend a partial fiber point to a total one using contractibility
Val equiv_fiber_point(int lvl, const Val& equiv, const Val& dom,
                      const Val& cod, const Val& b,
                      const std::vector<std::pair<Dnf, Val>>& partial);

// composition (eval.cpp)
Val hcomp_at(int lvl, const Val& type, int eps, std::vector<VBranch> sys,
             Val cap);
Val transp_at(int lvl, int dir, const Closure& line, const Dnf& phi,
              const Val& arg);
// heterogeneous composition: from endpoint eps of the line to the other end
Val comp_at(int lvl, int dir, const Closure& line, std::vector<VBranch> sys,
            const Val& cap);
Val hfill_at(int lvl, const Val& type, int eps,
             const std::vector<VBranch>& sys, const Val& cap,
             const IvElem& j);
// filler of transport: at j=eps-end gives arg, at the far end the transport
Val transp_fill(int lvl, int dir, const Closure& line, const Dnf& phi,
                const Val& arg, const IvElem& j);

// HITs (hit.cpp / transp.cpp)
Val hit_type(int lvl, const HitDecl* d, std::vector<HArg> params);
Val hit_ctor(int lvl, const std::shared_ptr<const Globals>& g,
             const HitDecl* d, int cidx, const std::vector<HArg>& params,
             std::vector<HArg> args);
Val hit_elim(int lvl, const std::shared_ptr<const Globals>& g,
             const HitDecl* d, const std::vector<Val>& params,
             const Val& motive, const std::vector<Val>& clauses,
             const Val& scrut);
Val transp_hit(int lvl, int dir, const Closure& line, const Dnf& phi,
               const Val& arg, const Val& hit_head);

// quotation
Tm quote(int lvl, const Val& v);
IvPtr quote_iv(int lvl, const IvElem& e);
CofPtr quote_cof(int lvl, const Dnf& d);

// restriction: quote, pin the assigned interval levels, re-evaluate
Val restrict_val(int lvl, const std::shared_ptr<const Globals>& g,
                 const Val& v, const Assign& as);
// substitute an interval element for the variable at `target`
Val subst_iv_val(int lvl, const std::shared_ptr<const Globals>& g,
                 const Val& v, int target, const IvElem& r);
Val iapply_ann(int lvl, const Val& f, const IvElem& r, const Val& lhs,
               const Val& rhs);

// helpers shared across the evaluator
Val sys_branch_at(int lvl, const VBranch& b, const IvElem& r);
extern thread_local int eval_fuel; // guards runaway reductions

// the active global scope; a fallback for native closures with no env
void set_current_globals(std::shared_ptr<const Globals> g);
std::shared_ptr<const Globals> current_globals();

} // namespace ctt

#endif
