#include "hit.hpp"

// The five built-in higher inductive types, declared through the same
// schema as user declarations. Composition (hcomp) is a kernel-level value
// at every fibrant declaration, so the constructor lists carry only the
// point/path data and their endpoint reductions.

namespace ctt {

namespace {

using K = Term::K;

HitArgSpec term_arg(std::string name, Tm ty) {
  HitArgSpec a;
  a.k = HitArgSpec::K::Term;
  a.name = std::move(name);
  a.type = std::move(ty);
  return a;
}

HitArgSpec interval_arg(std::string name) {
  HitArgSpec a;
  a.k = HitArgSpec::K::Interval;
  a.name = std::move(name);
  return a;
}

HitArgSpec child_arg(std::string name, std::vector<Tm> tele) {
  HitArgSpec a;
  a.k = HitArgSpec::K::Child;
  a.name = std::move(name);
  a.tele = std::move(tele);
  return a;
}

Tm ctor_ref(const std::string& decl, int cidx, std::vector<Tm> args,
            int nparams) {
  Tm t = mk(K::HitCtor, std::move(args));
  auto* m = const_cast<Term*>(t.get());
  m->s = decl;
  m->i0 = cidx;
  m->i1 = nparams;
  return t;
}

std::shared_ptr<HitDecl> decl_lfr() {
  auto d = std::make_shared<HitDecl>();
  d->name = "LFR";
  d->params = {{"A", mk_u(0)}};
  d->fib = 2;
  HitCtorSpec inc;
  inc.name = "inc";
  inc.args = {term_arg("a", mk_var(0, "A"))};
  d->ctors = {inc};
  return d;
}

std::shared_ptr<HitDecl> decl_trunc() {
  auto d = std::make_shared<HitDecl>();
  d->name = "Trunc";
  d->params = {{"A", mk_u(0)}};
  d->fib = 2;
  HitCtorSpec inc;
  inc.name = "inc";
  inc.args = {term_arg("a", mk_var(0, "A"))};
  HitCtorSpec sq;
  sq.name = "sq";
  sq.args = {child_arg("x", {}), child_arg("y", {}), interval_arg("i")};
  // scope of reductions: A, x, y, i
  sq.reds = {{Cof::eq(Iv::mkvar(0), false), mk_var(2, "x")},
             {Cof::eq(Iv::mkvar(0), true), mk_var(1, "y")}};
  d->ctors = {inc, sq};
  return d;
}

std::shared_ptr<HitDecl> decl_susp() {
  auto d = std::make_shared<HitDecl>();
  d->name = "Susp";
  d->params = {{"A", mk_u(0)}};
  d->fib = 2;
  HitCtorSpec north;
  north.name = "north";
  HitCtorSpec south;
  south.name = "south";
  HitCtorSpec merid;
  merid.name = "merid";
  merid.args = {term_arg("x", mk_var(0, "A")), interval_arg("i")};
  // scope: A, x, i
  merid.reds = {
      {Cof::eq(Iv::mkvar(0), false), ctor_ref("Susp", 0, {mk_var(2, "A")}, 1)},
      {Cof::eq(Iv::mkvar(0), true), ctor_ref("Susp", 1, {mk_var(2, "A")}, 1)}};
  d->ctors = {north, south, merid};
  return d;
}

std::shared_ptr<HitDecl> decl_cone() {
  auto d = std::make_shared<HitDecl>();
  d->name = "Cone";
  d->params = {{"A", mk_u(0)}};
  d->fib = 0; // the bare pushout, no composition added
  HitCtorSpec apex;
  apex.name = "apex";
  HitCtorSpec point;
  point.name = "point";
  point.args = {term_arg("x", mk_var(0, "A")), interval_arg("i")};
  point.reds = {
      {Cof::eq(Iv::mkvar(0), false), ctor_ref("Cone", 0, {mk_var(2, "A")}, 1)}};
  d->ctors = {apex, point};
  return d;
}

std::shared_ptr<HitDecl> decl_k() {
  auto d = std::make_shared<HitDecl>();
  d->name = "K";
  d->params = {{"A", mk_u(0)},
               {"B", mk(K::Pi, {mk_var(0, "A"), mk_u(0)})}};
  d->fib = 1; // composes from endpoint 0 only
  d->kernel_transport = true;

  HitCtorSpec ext;
  ext.name = "ext";
  // scope for a's type: A, B
  ext.args = {term_arg("a", mk_var(1, "A")),
              // child telescope scope: A, B, a
              child_arg("f", {mk(K::App, {mk_var(1, "B"), mk_var(0, "a")})})};

  HitCtorSpec pcone;
  pcone.name = "pcone";
  pcone.args = {term_arg("a", mk_var(1, "A")),
                term_arg("b", mk(K::App, {mk_var(1, "B"), mk_var(0, "a")})),
                interval_arg("i"),
                // scope: A, B, a, b, i
                child_arg("f", {mk(K::App, {mk_var(3, "B"), mk_var(2, "a")})})};
  // scope of reductions: A, B, a, b, i, f  (f = 0 ... A = 5)
  pcone.reds = {
      {Cof::eq(Iv::mkvar(1), false),
       ctor_ref("K", 0, {mk_var(5, "A"), mk_var(4, "B"), mk_var(3, "a"),
                         mk_var(0, "f")}, 2)},
      {Cof::eq(Iv::mkvar(1), true),
       mk(K::App, {mk_var(0, "f"), mk_var(2, "b")})}};
  d->ctors = {ext, pcone};
  return d;
}

} // namespace

void install_builtin_hits(Globals& g) {
  for (auto& d : {decl_lfr(), decl_trunc(), decl_susp(), decl_cone(),
                  decl_k()})
    g.hits[d->name] = d;
}

} // namespace ctt
