#include "pretty.hpp"

#include <sstream>

#include "eval.hpp"

namespace ctt {

namespace {

struct Printer {
  std::vector<std::string> names;

  std::string var_name(int idx, const std::string& hint) {
    int pos = (int)names.size() - 1 - idx;
    if (pos >= 0 && pos < (int)names.size()) return names[pos];
    return hint.empty() ? "_v" + std::to_string(idx) : hint;
  }

  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    std::string cand = base;
    int n = 1;
    auto used = [&](const std::string& s) {
      for (auto& x : names)
        if (x == s) return true;
      return false;
    };
    while (used(cand)) cand = base + std::to_string(n++);
    return cand;
  }

  std::string iv(const IvPtr& t, int prec) {
    switch (t->kind) {
      case Iv::Kind::Zero: return "0";
      case Iv::Kind::One: return "1";
      case Iv::Kind::Var: return var_name(t->var, "");
      case Iv::Kind::Meet: {
        std::string s = iv(t->lhs, 2) + " /\\ " + iv(t->rhs, 2);
        return prec > 1 ? "(" + s + ")" : s;
      }
      case Iv::Kind::Join: {
        std::string s = iv(t->lhs, 1) + " \\/ " + iv(t->rhs, 1);
        return prec > 0 ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

  std::string cof(const CofPtr& c, int prec) {
    switch (c->kind) {
      case Cof::Kind::Top: return "top";
      case Cof::Kind::Bot: return "bot";
      case Cof::Kind::Eq:
        return iv(c->arg, 3) + " = " + (c->eps ? "1" : "0");
      case Cof::Kind::And: {
        std::string s = cof(c->lhs, 2) + " /\\ " + cof(c->rhs, 2);
        return prec > 1 ? "(" + s + ")" : s;
      }
      case Cof::Kind::Or: {
        std::string s = cof(c->lhs, 1) + " \\/ " + cof(c->rhs, 1);
        return prec > 0 ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

  std::string sys(const std::vector<std::pair<CofPtr, Tm>>& ss,
                  bool binder) {
    std::ostringstream o;
    o << "[";
    bool first = true;
    for (auto& [c, t] : ss) {
      if (!first) o << " | ";
      first = false;
      o << cof(c, 0) << " -> ";
      o << go(t, 0);
    }
    o << "]";
    (void)binder;
    return o.str();
  }

  // precedence: 0 lam/pi, 1 arrow/sum, 2 sigma, 3 app, 4 atom
  std::string go(const Tm& t, int prec) {
    using K = Term::K;
    auto wrap = [&](int inner, const std::string& s) {
      return prec > inner ? "(" + s + ")" : s;
    };
    switch (t->k) {
      case K::Var: return var_name(t->i0, t->s);
      case K::Def: return t->s;
      case K::U: return "U" + std::to_string(t->i0);
      case K::Pi: {
        std::string x = fresh(t->s);
        std::string dom = go(t->ts[0], 0);
        names.push_back(x);
        std::string cod = go(t->ts[1], 0);
        names.pop_back();
        return wrap(0, "(" + x + " : " + dom + ") -> " + cod);
      }
      case K::LineT: {
        std::string x = fresh(t->s.empty() ? "i" : t->s);
        names.push_back(x);
        std::string cod = go(t->ts[0], 0);
        names.pop_back();
        return wrap(0, "(" + x + " : I) -> " + cod);
      }
      case K::Lam:
      case K::ILam: {
        std::string x = fresh(t->s.empty() && t->k == K::ILam ? "i" : t->s);
        names.push_back(x);
        std::string body = go(t->ts[0], 0);
        names.pop_back();
        return wrap(0, "\\" + x + ". " + body);
      }
      case K::App:
        return wrap(3, go(t->ts[0], 3) + " " + go(t->ts[1], 4));
      case K::IApp: {
        IvPtr r = t->iv;
        std::string arg;
        if (r->kind == Iv::Kind::Meet || r->kind == Iv::Kind::Join)
          arg = "(" + iv(r, 0) + ")";
        else
          arg = iv(r, 3);
        return wrap(3, go(t->ts[0], 3) + " " + arg);
      }
      case K::Sigma: {
        std::string x = fresh(t->s);
        std::string dom = go(t->ts[0], 3);
        names.push_back(x);
        std::string cod = go(t->ts[1], 2);
        names.pop_back();
        return wrap(1, "(" + x + " : " + dom + ") * " + cod);
      }
      case K::Pair:
        return "(" + go(t->ts[0], 0) + ", " + go(t->ts[1], 0) + ")";
      case K::Fst: return wrap(3, go(t->ts[0], 4) + ".1");
      case K::Snd: return wrap(3, go(t->ts[0], 4) + ".2");
      case K::PathT:
        return wrap(3, "Path " + go(t->ts[0], 4) + " " + go(t->ts[1], 4) +
                           " " + go(t->ts[2], 4));
      case K::Nat: return "Nat";
      case K::NatLit: return std::to_string(t->n64);
      case K::Suc: return wrap(3, "suc " + go(t->ts[0], 4));
      case K::NatRec:
        return wrap(3, "natrec " + go(t->ts[0], 4) + " " + go(t->ts[1], 4) +
                           " " + go(t->ts[2], 4) + " " + go(t->ts[3], 4));
      case K::Unit: return "Unit";
      case K::Star: return "tt";
      case K::Empty: return "Empty";
      case K::EmptyRec:
        return wrap(3,
                    "absurd " + go(t->ts[0], 4) + " " + go(t->ts[1], 4));
      case K::Sum:
        return wrap(1, go(t->ts[0], 2) + " + " + go(t->ts[1], 2));
      case K::Inl: return wrap(3, "inl " + go(t->ts[0], 4));
      case K::Inr: return wrap(3, "inr " + go(t->ts[0], 4));
      case K::SumCase:
        return wrap(3, "case " + go(t->ts[0], 4) + " " + go(t->ts[1], 4) +
                           " " + go(t->ts[2], 4) + " " + go(t->ts[3], 4));
      case K::IdT:
        return wrap(3, "Id " + go(t->ts[0], 4) + " " + go(t->ts[1], 4) + " " +
                           go(t->ts[2], 4));
      case K::IdIn: {
        // refl prints as refl
        if (t->cof->kind == Cof::Kind::Top) return "refl";
        return wrap(3, "idin {" + cof(t->cof, 0) + "} " + go(t->ts[0], 4));
      }
      case K::IdJ:
        return wrap(3, "idJ " + go(t->ts[2], 4) + " " + go(t->ts[3], 4) +
                           " " + go(t->ts[5], 4));
      case K::LiftT: return wrap(3, "Lift " + go(t->ts[0], 4));
      case K::LiftUp: return wrap(3, "lift " + go(t->ts[0], 4));
      case K::LiftDown: return wrap(3, "lower " + go(t->ts[0], 4));
      case K::GlueT:
        return wrap(3, "Glue " + go(t->ts[0], 4) + " " + sys(t->sys, false));
      case K::GlueI:
        return wrap(3, "glue " + sys(t->sys, false) + " " + go(t->ts[0], 4));
      case K::Unglue: return wrap(3, "unglue " + go(t->ts[0], 4));
      case K::HComp: {
        std::ostringstream o;
        o << "hcomp " << t->i0 << " " << go(t->ts[0], 4) << " ";
        // branches bind an interval variable
        o << "[";
        bool first = true;
        for (auto& [c, b] : t->sys) {
          if (!first) o << " | ";
          first = false;
          std::string x = fresh("i");
          o << cof(c, 0) << " -> \\" << x << ". ";
          names.push_back(x);
          o << go(b, 0);
          names.pop_back();
        }
        o << "] " << go(t->ts[1], 4);
        return wrap(3, o.str());
      }
      case K::Transp: {
        std::string x = fresh("i");
        std::ostringstream o;
        o << (t->i0 == 0 ? "transp" : "transpinv") << " (\\" << x << ". ";
        names.push_back(x);
        o << go(t->ts[0], 0);
        names.pop_back();
        o << ") {" << cof(t->cof, 0) << "} " << go(t->ts[1], 4);
        return wrap(3, o.str());
      }
      case K::HitT: {
        std::string s = t->s;
        for (auto& p : t->ts) s += " " + go(p, 4);
        return t->ts.empty() ? s : wrap(3, s);
      }
      case K::HitCtor: {
        // constructor applications print without the type parameters
        std::string s = t->s + "." + std::to_string(t->i0);
        if (auto g = current_globals())
          if (const HitDecl* d = g->find_hit(t->s))
            s = d->ctors[t->i0].name;
        std::ostringstream o;
        o << s;
        for (size_t i = t->i1; i < t->ts.size(); ++i)
          o << " " << go(t->ts[i], 4);
        return wrap(3, o.str());
      }
      case K::HitElim: {
        std::ostringstream o;
        o << t->s << "-elim";
        for (size_t i = t->i1; i < t->ts.size(); ++i)
          o << " " << go(t->ts[i], 4);
        return wrap(3, o.str());
      }
      case K::CofT: return "[" + cof(t->cof, 0) + "]";
      case K::CofTT: return "cofp";
      case K::IvArg: {
        IvPtr r = t->iv;
        if (r->kind == Iv::Kind::Meet || r->kind == Iv::Kind::Join)
          return "(" + iv(r, 0) + ")";
        return iv(r, 3);
      }
      case K::CofArg: return "{" + cof(t->cof, 0) + "}";
    }
    return "?";
  }
};

} // namespace

std::string show_term(const Tm& t, std::vector<std::string> names) {
  Printer p;
  p.names = std::move(names);
  return p.go(t, 0);
}

std::string show_iv_term(const IvPtr& t,
                         const std::vector<std::string>& names) {
  Printer p;
  p.names = names;
  return p.iv(t, 0);
}

std::string show_cof_term(const CofPtr& c,
                          const std::vector<std::string>& names) {
  Printer p;
  p.names = names;
  return p.cof(c, 0);
}

} // namespace ctt
