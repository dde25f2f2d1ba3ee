#include "oracle.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "box.hpp"
#include "psh.hpp"
#include "sieve.hpp"
#include "wprime.hpp"

namespace ctt::cube {

namespace {

using Rec = CheckRecord;

void rec(std::vector<Rec>& out, const std::string& suite,
         const std::string& name, const std::string& instance, bool pass,
         const std::string& witness = "") {
  out.push_back(Rec{suite, name, instance, pass, pass ? "" : witness});
}

// ------------------------------------------------------------------- box

void suite_box(std::vector<Rec>& out, const OracleOptions& opt) {
  BoxCat box(opt.dim);
  static const int dedekind[] = {2, 3, 6, 20};
  for (int n = 0; n <= opt.dim; ++n) {
    std::ostringstream inst;
    inst << "n=" << n;
    rec(out, "box", "dedekind-count", inst.str(),
        (int)box.mono(n).size() == dedekind[n],
        "got " + std::to_string(box.mono(n).size()));
  }
  for (int n = 0; n <= opt.dim; ++n)
    for (int m = 0; m <= opt.dim; ++m) {
      long expect = 1;
      for (int j = 0; j < m; ++j) expect *= dedekind[n];
      std::ostringstream inst;
      inst << n << "->" << m;
      rec(out, "box", "homset-size", inst.str(),
          box.hom_size(n, m) == expect,
          "got " + std::to_string(box.hom_size(n, m)));
    }
  try {
    box.check_identities();
    rec(out, "box", "identities", "all", true);
  } catch (const std::exception& e) {
    rec(out, "box", "identities", "all", false, e.what());
  }
  try {
    box.check_tables_match_pointwise();
    rec(out, "box", "composition-pointwise", "all pairs", true);
  } catch (const std::exception& e) {
    rec(out, "box", "composition-pointwise", "all pairs", false, e.what());
  }
  try {
    box.check_associativity();
    rec(out, "box", "associativity", "triples within budget", true);
  } catch (const std::exception& e) {
    rec(out, "box", "associativity", "triples within budget", false,
        e.what());
  }
}

// -------------------------------------------------------------- interval

void suite_interval(std::vector<Rec>& out, const OracleOptions& opt) {
  BoxCat box(opt.dim);
  Psh iv = psh_interval(box);
  std::string why;
  rec(out, "interval", "functorial", "I", iv.check_functorial(&why), why);
  static const int dedekind[] = {2, 3, 6, 20};
  for (int n = 0; n <= opt.dim; ++n)
    rec(out, "interval", "level-size", "n=" + std::to_string(n),
        iv.card[n] == dedekind[n], "got " + std::to_string(iv.card[n]));
  // lattice operations are pointwise min/max on tables; distributivity at
  // every level
  bool dist = true;
  for (int n = 0; n <= opt.dim && dist; ++n) {
    const auto& ts = box.mono(n);
    for (Table a : ts)
      for (Table b : ts)
        for (Table c : ts) {
          Table lhs = a & (Table)(b | c);
          Table rhs = (Table)((a & b) | (a & c));
          if (lhs != rhs) dist = false;
        }
  }
  rec(out, "interval", "distributivity", "pointwise, all levels", dist);
  DiscreteReport dr = is_discrete(iv);
  rec(out, "interval", "interval-not-discrete", "d=" + std::to_string(opt.dim),
      !dr.discrete, "interval tested discrete");
}

// ------------------------------------------------------- cof completeness

BoxMor extend_by_identity(const BoxMor& f) {
  BoxMor g;
  g.src = f.src + 1;
  g.dst = f.dst + 1;
  int pts = 1 << g.src;
  g.comp.assign(g.dst, 0);
  for (int x = 0; x < pts; ++x) {
    int x0 = x & ((1 << f.src) - 1);
    int b = (x >> f.src) & 1;
    int y = box_apply(f, x0);
    for (int j = 0; j < f.dst; ++j)
      if ((y >> j) & 1) g.comp[j] |= (Table)(1 << x);
    if (b) g.comp[f.dst] |= (Table)(1 << x);
  }
  return g;
}

void suite_cof(std::vector<Rec>& out, const OracleOptions& opt) {
  BoxCat box(opt.dim);
  for (int n = 0; n <= opt.dim; ++n) {
    std::vector<Dnf> cofs = enumerate_canonical_cofs(n);
    std::ostringstream inst;
    inst << "n=" << n << ", formulas=" << cofs.size();
    // flat sieve bitsets at the ambient object n
    int total = 0;
    std::vector<int> off(opt.dim + 1);
    for (int m = 0; m <= opt.dim; ++m) {
      off[m] = total;
      total += box.hom_size(m, n);
    }
    int words = (total + 63) / 64;
    std::vector<std::vector<uint64_t>> bits(cofs.size(),
                                            std::vector<uint64_t>(words, 0));
    for (size_t i = 0; i < cofs.size(); ++i) {
      Sieve s = cof_sieve(box, cofs[i], n);
      for (int m = 0; m <= opt.dim; ++m)
        for (int fi = 0; fi < (int)s.member[m].size(); ++fi)
          if (s.member[m][fi]) {
            int bit = off[m] + fi;
            bits[i][bit >> 6] |= (uint64_t)1 << (bit & 63);
          }
    }
    // canonical forms are unique per sieve
    {
      std::map<std::vector<uint64_t>, int> seen;
      bool unique = true;
      for (size_t i = 0; i < cofs.size() && unique; ++i) {
        auto it = seen.find(bits[i]);
        if (it != seen.end()) unique = false;
        seen[bits[i]] = (int)i;
      }
      rec(out, "cof-completeness", "canonical-forms-distinct", inst.str(),
          unique, "two canonical DNFs share a sieve");
    }
    bool agree = true;
    std::string wit;
    for (size_t i = 0; i < cofs.size() && agree; ++i) {
      for (size_t j = 0; j < cofs.size(); ++j) {
        bool syn = cof_entails(cofs[i], cofs[j]);
        bool sem = true;
        for (int w = 0; w < words; ++w)
          if (bits[i][w] & ~bits[j][w]) {
            sem = false;
            break;
          }
        if (syn != sem) {
          agree = false;
          wit = cof_show(cofs[i]) + (syn ? " |- " : " |/- ") +
                cof_show(cofs[j]) + " but sieves disagree";
          break;
        }
      }
    }
    rec(out, "cof-completeness", "entails-vs-sieve", inst.str(), agree, wit);
  }
  // the pinned strict inclusion at dimension 1
  {
    Dnf faces = dnf_or(Dnf{{Assign{{0, false}}}}, Dnf{{Assign{{0, true}}}});
    Sieve s = cof_sieve(box, faces, 1);
    Sieve top = maximal_sieve(box, 1);
    bool strict = sieve_leq(s, top) && !(s == top) &&
                  !cof_entails(Dnf::top(), faces) &&
                  cof_entails(faces, Dnf::top());
    rec(out, "cof-completeness", "endpoints-strictly-below-top", "n=1",
        strict, "inclusion not strict");
  }
  // closure of every computed sieve under precomposition, spot-checked on
  // the 2-variable formulas
  {
    std::vector<Dnf> cofs = enumerate_canonical_cofs(std::min(2, opt.dim));
    bool closed = true;
    for (const Dnf& c : cofs)
      if (!sieve_closed(box, cof_sieve(box, c, std::min(2, opt.dim))))
        closed = false;
    rec(out, "cof-completeness", "sieves-closed", "n<=2", closed,
        "sieve not closed under precomposition");
  }
  // forall is exact for the adjunction: f in sieve(forall phi) iff
  // (f x id) in sieve(phi)
  {
    bool exact = true;
    std::string wit;
    int n_hi = std::min(3, opt.dim);
    for (int n = 1; n <= n_hi && exact; ++n) {
      std::vector<Dnf> cofs = enumerate_canonical_cofs(n);
      for (const Dnf& phi : cofs) {
        Dnf psi = cof_forall(phi, n - 1);
        Sieve sphi = cof_sieve(box, phi, n);
        for (int m = 0; m + 1 <= opt.dim && exact; ++m) {
          for (int fi = 0; fi < box.hom_size(m, n - 1); ++fi) {
            const BoxMor& f = box.hom(m, n - 1)[fi];
            BoxMor fx = extend_by_identity(f);
            bool lhs = false;
            {
              Sieve spsi = cof_sieve(box, psi, n - 1);
              lhs = spsi.member[m][fi];
            }
            bool rhs = sphi.member[m + 1][box.index_of(fx)];
            if (lhs != rhs) {
              exact = false;
              wit = "forall " + cof_show(phi) + " -> " + cof_show(psi);
              break;
            }
          }
        }
        if (!exact) break;
      }
    }
    rec(out, "cof-completeness", "forall-right-adjoint", "n<=3", exact, wit);
  }
}

// ------------------------------------------------------------ delta-nabla

void suite_delta_nabla(std::vector<Rec>& out, const OracleOptions& opt) {
  int d = std::min(2, opt.dim);
  BoxCat box(d);
  for (int s = 1; s <= 3; ++s) {
    Psh ds = psh_delta(box, s);
    std::string why;
    rec(out, "delta-nabla", "delta-functorial", "|S|=" + std::to_string(s),
        ds.check_functorial(&why), why);
    rec(out, "delta-nabla", "eval0-delta", "|S|=" + std::to_string(s),
        eval_at0(ds) == s, "carrier changed");
    Psh ns = psh_nabla(box, s);
    rec(out, "delta-nabla", "nabla-functorial", "|S|=" + std::to_string(s),
        ns.check_functorial(&why), why);
    rec(out, "delta-nabla", "nabla-level1-size", "|S|=" + std::to_string(s),
        d >= 1 ? ns.card[1] == s * s : true,
        "expected |S|^2, got " + std::to_string(d >= 1 ? ns.card[1] : -1));
  }
  // adjunction bijections by counting + explicit transposes, |S|<=3, P
  // small: the interval and a nabla
  for (int s = 1; s <= 2; ++s) {
    Psh iv = psh_interval(box);
    auto a1 = check_delta_eval_adjunction(box, s, iv);
    rec(out, "delta-nabla", "delta-eval-adjunction",
        "P=I,|S|=" + std::to_string(s), a1.ok, a1.detail);
    auto a2 = check_eval_nabla_adjunction(box, s, iv);
    rec(out, "delta-nabla", "eval-nabla-adjunction",
        "P=I,|S|=" + std::to_string(s), a2.ok, a2.detail);
    Psh dd = psh_delta(box, 2);
    auto a3 = check_eval_nabla_adjunction(box, s, dd);
    rec(out, "delta-nabla", "eval-nabla-adjunction",
        "P=Delta(2),|S|=" + std::to_string(s), a3.ok, a3.detail);
  }
  // codiscrete presheaves are propositions (path-connected levelwise)
  {
    Psh n2 = psh_nabla(box, 2);
    rec(out, "delta-nabla", "nabla-proposition", "|S|=2, d<=2",
        psh_proposition(n2), "nabla(2) not a proposition");
    rec(out, "delta-nabla", "nabla-well-supported", "|S|=2",
        well_supported(n2), "empty level");
  }
}

// --------------------------------------------------------------- discrete

void suite_discrete(std::vector<Rec>& out, const OracleOptions& opt) {
  int d = std::min(2, opt.dim);
  BoxCat box(d);
  for (int s = 1; s <= 3; ++s) {
    DiscreteReport r = is_discrete(psh_delta(box, s));
    rec(out, "discrete", "delta-discrete", "|S|=" + std::to_string(s),
        r.discrete, r.detail);
  }
  {
    DiscreteReport r = is_discrete(psh_interval(box));
    rec(out, "discrete", "interval-not-discrete", "d=" + std::to_string(d),
        !r.discrete, "interval tested discrete");
  }
  // finite initial segment of the naturals (constant presheaf stand-in)
  {
    DiscreteReport r = is_discrete(psh_delta(box, 4));
    rec(out, "discrete", "nat-segment-discrete", "N<4", r.discrete, r.detail);
  }
  // discreteness implies null structure w.r.t. well-supported propositions
  {
    Psh b = psh_nabla(box, 2);
    DiscreteReport r = null_structure_check(b, psh_delta(box, 3));
    rec(out, "discrete", "discrete-null", "X=Delta(3), B=nabla(2)",
        r.discrete, r.detail);
  }
  // Delta preserves finite products and the zero/succ diagrams of a finite
  // initial segment levelwise
  {
    Psh d2 = psh_delta(box, 2), d3 = psh_delta(box, 3);
    Psh prod = psh_product(d2, d3);
    Psh d6 = psh_delta(box, 6);
    bool same = prod.card == d6.card && prod.res == d6.res;
    rec(out, "discrete", "delta-preserves-products", "2x3", same,
        "Delta(2) x Delta(3) != Delta(6)");
  }
  {
    // overflow-explicit initial segment: {0,...,k-1, omega}
    int k = 4;
    Psh nk = psh_delta(box, k + 1);
    auto succ = [&](int x) { return x >= k - 1 ? k : x + 1; };
    // naturality of succ as a map of constant presheaves is levelwise
    // identity-compatible by construction; check the recursion diagram into
    // a small algebra
    int xcard = 3;
    auto f = [&](int x) { return (x + 1) % xcard; };
    std::vector<int> r(k + 1);
    r[0] = 0;
    for (int i = 1; i <= k; ++i) r[i] = f(r[i - 1]);
    bool ok = true;
    for (int i = 0; i < k; ++i)
      if (r[succ(i)] != f(r[i]) && succ(i) != k) ok = false;
    (void)nk;
    rec(out, "discrete", "delta-preserves-nno-segment",
        "k=" + std::to_string(k), ok, "recursion diagram failed");
  }
  // identity types of constants are constant diagonals
  {
    Psh d3 = psh_delta(box, 3);
    Psh diag = make_psh(box, std::vector<int>((size_t)d + 1, 3),
                        [](int, int, int, int e) { return e; });
    bool same = d3.card == diag.card && d3.res == diag.res;
    rec(out, "discrete", "delta-preserves-id", "|S|=3", same, "mismatch");
  }
}

// ----------------------------------------------------------------- wprime

FinPoly poly_leaves_only(const BoxCat& box) {
  // Y := I + 1, no arities, no reductions: W' is Y itself
  FinPoly p;
  p.Y = psh_coproduct(psh_interval(box), psh_delta(box, 1));
  int d = box.dim();
  p.xcard.assign(d + 1, {});
  p.xres.assign(d + 1, {});
  p.in_r.assign(d + 1, {});
  p.kmap.assign(d + 1, {});
  for (int n = 0; n <= d; ++n) {
    p.xcard[n].assign(p.Y.card[n], 0);
    p.in_r[n].assign(p.Y.card[n], 0);
    p.kmap[n].assign(p.Y.card[n], -1);
    p.xres[n].assign(d + 1, {});
    for (int m = 0; m <= d; ++m) {
      p.xres[n][m].assign(box.hom_size(m, n), {});
      for (int fi = 0; fi < box.hom_size(m, n); ++fi)
        p.xres[n][m][fi].assign(p.Y.card[n], {});
    }
  }
  return p;
}

FinPoly poly_with_reduction(const BoxCat& box) {
  // Y := I + 1; interval heads have one child and reduce at the endpoints
  // to it; the extra point is a leaf.
  FinPoly p = poly_leaves_only(box);
  int d = box.dim();
  Psh iv = psh_interval(box);
  for (int n = 0; n <= d; ++n) {
    for (int y = 0; y < iv.card[n]; ++y) {
      p.xcard[n][y] = 1;
      // endpoints of the interval are the constant tables
      Table full = (Table)((1 << (1 << n)) - 1);
      const BoxMor& el = box.hom(n, 1)[y];
      if (el.comp[0] == 0 || el.comp[0] == full) {
        p.in_r[n][y] = 1;
        p.kmap[n][y] = 0;
      }
    }
    for (int m = 0; m <= d; ++m)
      for (int fi = 0; fi < box.hom_size(m, n); ++fi)
        for (int y = 0; y < iv.card[n]; ++y)
          p.xres[n][m][fi][y] = {0}; // the single arity element
  }
  return p;
}

void suite_wprime(std::vector<Rec>& out, const OracleOptions& opt) {
  int d = std::min(1, opt.dim);
  BoxCat box(d);
  // (a) leaf-only polynomial: W' is Y levelwise
  {
    FinPoly p = poly_leaves_only(box);
    WPrime wp = build_wprime(box, p, opt.depth);
    bool size_ok = true;
    for (int n = 0; n <= d; ++n)
      if (wp.carrier.card[n] != p.Y.card[n]) size_ok = false;
    rec(out, "wprime", "leaf-only-bijective-with-Y",
        "depth=" + std::to_string(opt.depth), size_ok, "carrier != Y");
    std::string cs = check_case_split(wp);
    rec(out, "wprime", "leaf-only-case-split", "all elements", cs.empty(),
        cs);
    std::string why;
    rec(out, "wprime", "leaf-only-functorial", "carrier",
        wp.carrier.check_functorial(&why), why);
  }
  // (b) firing reduction
  {
    FinPoly p = poly_with_reduction(box);
    WPrime wp = build_wprime(box, p, opt.depth);
    bool no_red_heads = true;
    for (int n = 0; n <= d; ++n)
      for (int e = 0; e < wp.carrier.card[n]; ++e)
        if (p.in_r[n][wp.pool[n][wp.from_psh[n][e]].head])
          no_red_heads = false;
    rec(out, "wprime", "no-reducible-heads",
        "depth=" + std::to_string(opt.depth), no_red_heads,
        "reducible head in a normal form");
    std::string cs = check_case_split(wp);
    rec(out, "wprime", "case-split-equations", "all elements", cs.empty(),
        cs);
    std::string why;
    rec(out, "wprime", "carrier-functorial", "carrier",
        wp.carrier.check_functorial(&why), why);

    // (c) fold uniqueness against brute force, depth 3
    // target algebra: W = Delta(2), s = parity-ish: leaf |-> 1,
    // interval head |-> its identity-slot child's value
    Psh w = psh_delta(box, 2);
    WAlgebra alg;
    alg.w = &w;
    Psh iv = psh_interval(box);
    alg.s = [&box, &iv](int level, int head,
                        const std::map<SlotKey, int>& kids) -> int {
      if (head >= iv.card[level]) return 1; // leaf
      return kids.at(SlotKey{level, box.id_idx(level), 0});
    };
    std::string why2;
    bool alg_ok = check_algebra(wp, alg, &why2);
    rec(out, "wprime", "algebra-valid", "W=Delta(2)", alg_ok, why2);
    auto maps = wprime_algebra_maps(wp, alg);
    auto fold = wprime_fold(wp, alg);
    // flatten fold for comparison
    std::vector<int> flat;
    for (auto& lvl : fold) flat.insert(flat.end(), lvl.begin(), lvl.end());
    bool unique = maps.size() == 1 && maps[0] == flat;
    std::ostringstream wit;
    wit << "algebra maps found: " << maps.size();
    rec(out, "wprime", "fold-uniqueness",
        "depth=" + std::to_string(opt.depth), unique, wit.str());
  }
}

// --------------------------------------------------------- coproduct-null

void suite_coproduct_null(std::vector<Rec>& out, const OracleOptions& opt) {
  int d = std::min(1, opt.dim);
  BoxCat box(d);
  // trivial family
  {
    Psh b = psh_delta(box, 1);
    DiscreteReport r =
        coproduct_null_check(b, psh_delta(box, 1), psh_delta(box, 2));
    rec(out, "coproduct-null", "unit-family", "X=1,Y=2", r.discrete,
        r.detail);
  }
  // degenerate: empty summand
  {
    Psh b = psh_nabla(box, 2);
    Psh empty = psh_delta(box, 0);
    DiscreteReport r = coproduct_null_check(b, empty, psh_delta(box, 2));
    rec(out, "coproduct-null", "empty-summand", "X=0,Y=2", r.discrete,
        r.detail);
  }
  // nontrivial well-supported proposition at d=1
  {
    Psh b = psh_nabla(box, 2);
    bool pre = well_supported(b) && psh_proposition(b);
    rec(out, "coproduct-null", "family-is-ws-prop", "B=nabla(2)", pre,
        "precondition failed");
    DiscreteReport r =
        coproduct_null_check(b, psh_delta(box, 2), psh_delta(box, 2));
    rec(out, "coproduct-null", "phi-bijective", "B=nabla(2),X=Y=Delta(2)",
        r.discrete, r.detail);
  }
}

} // namespace

std::vector<std::string> suite_names() {
  return {"box",      "interval",    "cof-completeness", "delta-nabla",
          "discrete", "wprime",      "coproduct-null",   "all"};
}

std::vector<CheckRecord> run_suite(const std::string& suite,
                                   const OracleOptions& opt) {
  std::vector<CheckRecord> out;
  bool all = suite == "all";
  if (all || suite == "box") suite_box(out, opt);
  if (all || suite == "interval") suite_interval(out, opt);
  if (all || suite == "cof-completeness") suite_cof(out, opt);
  if (all || suite == "delta-nabla") suite_delta_nabla(out, opt);
  if (all || suite == "discrete") suite_discrete(out, opt);
  if (all || suite == "wprime") suite_wprime(out, opt);
  if (all || suite == "coproduct-null") suite_coproduct_null(out, opt);
  if (out.empty())
    out.push_back(CheckRecord{suite, "unknown-suite", "", false,
                              "no suite named '" + suite + "'"});
  return out;
}

void print_records(std::ostream& os, const std::vector<CheckRecord>& recs,
                   bool json) {
  for (const auto& r : recs) {
    if (json) {
      auto esc = [](const std::string& s) {
        std::string o;
        for (char c : s) {
          if (c == '"' || c == '\\') o += '\\';
          o += c;
        }
        return o;
      };
      os << "{\"suite\":\"" << esc(r.suite) << "\",\"name\":\"" << esc(r.name)
         << "\",\"instance\":\"" << esc(r.instance) << "\",\"pass\":"
         << (r.pass ? "true" : "false") << ",\"witness\":\"" << esc(r.witness)
         << "\"}\n";
    } else {
      os << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << "/" << r.name;
      if (!r.instance.empty()) os << " (" << r.instance << ")";
      if (!r.pass && !r.witness.empty()) os << ": " << r.witness;
      os << "\n";
    }
  }
}

} // namespace ctt::cube
