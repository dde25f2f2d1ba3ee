#include "value.hpp"

namespace ctt {

Closure make_native(std::function<Val(int, Val)> f) {
  Closure c;
  c.native = std::move(f);
  return c;
}

Closure make_inative(std::function<Val(int, const IvElem&)> f) {
  Closure c;
  c.inative = std::move(f);
  return c;
}

Val mkv(Value::K k) {
  auto v = std::make_shared<Value>();
  const_cast<Value*>(v.get())->k = k;
  return v;
}

Val vU(int level) {
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::U;
  m->i0 = level;
  return v;
}

Val vNat() {
  static Val v = mkv(Value::K::Nat);
  return v;
}
Val vUnit() {
  static Val v = mkv(Value::K::Unit);
  return v;
}
Val vStar() {
  static Val v = mkv(Value::K::Star);
  return v;
}
Val vEmpty() {
  static Val v = mkv(Value::K::Empty);
  return v;
}

Val vNum(uint64_t n, Val tail) {
  if (tail && tail->k == Value::K::Num) {
    auto v = std::make_shared<Value>();
    auto* m = const_cast<Value*>(v.get());
    m->k = Value::K::Num;
    m->n64 = n + tail->n64;
    m->v0 = tail->v0;
    return v;
  }
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::Num;
  m->n64 = n;
  m->v0 = std::move(tail);
  return v;
}

Val vVar(int lvl) {
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::Ne;
  m->ne.head_lvl = lvl;
  return v;
}

Val vPair(Val a, Val b) {
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::Pair;
  m->v0 = std::move(a);
  m->v1 = std::move(b);
  return v;
}

Val vInl(Val a) {
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::Inl;
  m->v0 = std::move(a);
  return v;
}

Val vInr(Val b) {
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::Inr;
  m->v0 = std::move(b);
  return v;
}

Val vLam(Closure c) {
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::Lam;
  m->clo = std::move(c);
  return v;
}

Val vILam(Closure c) {
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::ILam;
  m->clo = std::move(c);
  return v;
}

Val vPi(Val dom, Closure cod) {
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::Pi;
  m->v0 = std::move(dom);
  m->clo = std::move(cod);
  return v;
}

Val vSigma(Val dom, Closure cod) {
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::Sigma;
  m->v0 = std::move(dom);
  m->clo = std::move(cod);
  return v;
}

Val vPathT(Val a, Val l, Val r) {
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::PathT;
  m->v0 = std::move(a);
  m->v1 = std::move(l);
  m->v2 = std::move(r);
  return v;
}

Val vNe(Neutral n) {
  auto v = std::make_shared<Value>();
  auto* m = const_cast<Value*>(v.get());
  m->k = Value::K::Ne;
  m->ne = std::move(n);
  return v;
}

bool is_neutral(const Val& v) { return v->k == Value::K::Ne; }

} // namespace ctt
