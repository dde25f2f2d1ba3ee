#include "psh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace ctt::cube {

bool Psh::check_functorial(std::string* why) const {
  int d = dim();
  for (int n = 0; n <= d; ++n) {
    int idn = box->id_idx(n);
    for (int e = 0; e < card[n]; ++e) {
      if (restrict_along(n, n, idn, e) != e) {
        if (why) *why = "identity restriction not identity";
        return false;
      }
    }
  }
  for (int n = 0; n <= d; ++n)
    for (int m = 0; m <= d; ++m)
      for (int l = 0; l <= d; ++l)
        for (int fi = 0; fi < box->hom_size(m, n); ++fi)
          for (int gi = 0; gi < box->hom_size(l, m); ++gi) {
            int fg = box->compose_idx(l, m, n, fi, gi);
            for (int e = 0; e < card[n]; ++e) {
              int two_step =
                  restrict_along(m, l, gi, restrict_along(n, m, fi, e));
              int one_step = restrict_along(n, l, fg, e);
              if (two_step != one_step) {
                if (why) {
                  std::ostringstream o;
                  o << "functoriality failed at n=" << n << " m=" << m
                    << " l=" << l << " e=" << e;
                  *why = o.str();
                }
                return false;
              }
            }
          }
  return true;
}

Psh make_psh(const BoxCat& box, std::vector<int> card,
             const std::function<int(int, int, int, int)>& f) {
  Psh p;
  p.box = &box;
  p.card = std::move(card);
  int d = p.dim();
  p.res.assign(d + 1, {});
  for (int n = 0; n <= d; ++n) {
    p.res[n].assign(d + 1, {});
    for (int m = 0; m <= d; ++m) {
      int hs = box.hom_size(m, n);
      p.res[n][m].assign(hs, {});
      for (int fi = 0; fi < hs; ++fi) {
        p.res[n][m][fi].resize(p.card[n]);
        for (int e = 0; e < p.card[n]; ++e) p.res[n][m][fi][e] = f(n, m, fi, e);
      }
    }
  }
  return p;
}

Psh psh_delta(const BoxCat& box, int s) {
  std::vector<int> card(box.dim() + 1, s);
  return make_psh(box, card, [](int, int, int, int e) { return e; });
}

Psh psh_nabla(const BoxCat& box, int s) {
  // (Nabla S)(n) = functions from the 2^n points of n to S, written in
  // base s over point patterns.
  int d = box.dim();
  std::vector<int> card(d + 1);
  for (int n = 0; n <= d; ++n) card[n] = (int)std::pow((double)s, 1 << n);
  return make_psh(box, card, [&box, s](int n, int m, int fi, int e) {
    const BoxMor& f = box.hom(m, n)[fi];
    // new function: point p of m |-> old(f . p)
    int out = 0, weight = 1;
    for (int p = 0; p < (1 << m); ++p) {
      int q = box_apply(f, p);
      int digit = e;
      for (int t = 0; t < q; ++t) digit /= s;
      digit %= s;
      out += digit * weight;
      weight *= s;
    }
    return out;
  });
}

Psh psh_representable(const BoxCat& box, int c) {
  int d = box.dim();
  std::vector<int> card(d + 1);
  for (int n = 0; n <= d; ++n) card[n] = box.hom_size(n, c);
  return make_psh(box, card, [&box, c](int n, int m, int fi, int e) {
    // precompose e : n -> c with f : m -> n
    const BoxMor& f = box.hom(m, n)[fi];
    const BoxMor& g = box.hom(n, c)[e];
    return box.index_of(box_compose(g, f));
  });
}

Psh psh_interval(const BoxCat& box) { return psh_representable(box, 1); }

Psh psh_product(const Psh& a, const Psh& b) {
  const BoxCat& box = *a.box;
  int d = a.dim();
  std::vector<int> card(d + 1);
  for (int n = 0; n <= d; ++n) card[n] = a.card[n] * b.card[n];
  return make_psh(box, card, [&a, &b](int n, int m, int fi, int e) {
    int i = e / b.card[n], j = e % b.card[n];
    return pair_index(a.res[n][m][fi][i], b.res[n][m][fi][j], b.card[m]);
  });
}

Psh psh_coproduct(const Psh& a, const Psh& b) {
  const BoxCat& box = *a.box;
  int d = a.dim();
  std::vector<int> card(d + 1);
  for (int n = 0; n <= d; ++n) card[n] = a.card[n] + b.card[n];
  return make_psh(box, card, [&a, &b](int n, int m, int fi, int e) {
    if (e < a.card[n]) return a.res[n][m][fi][e];
    return a.card[m] + b.res[n][m][fi][e - a.card[n]];
  });
}

int eval_at0(const Psh& p) { return p.card[0]; }

int slot_offset(const Psh& p, int level) {
  int off = 0;
  for (int m = 0; m < level; ++m) off += p.card[m];
  return off;
}

std::vector<std::vector<int>> nat_transformations(const Psh& dom,
                                                  const Psh& cod) {
  const BoxCat& box = *dom.box;
  int d = dom.dim();
  int total = 0;
  std::vector<int> off(d + 1);
  for (int m = 0; m <= d; ++m) {
    off[m] = total;
    total += dom.card[m];
  }
  std::vector<int> asg(total, -1);
  std::vector<std::vector<int>> results;

  auto unflatten = [&](int slot, int& m, int& e) {
    m = 0;
    while (m < d && slot >= off[m + 1]) ++m;
    e = slot - off[m];
  };

  std::function<bool(int, int, std::vector<int>&)> put =
      [&](int slot, int v, std::vector<int>& trail) -> bool {
    if (asg[slot] == v) return true;
    if (asg[slot] != -1) return false;
    asg[slot] = v;
    trail.push_back(slot);
    int m, e;
    unflatten(slot, m, e);
    for (int l = 0; l <= d; ++l)
      for (int gi = 0; gi < box.hom_size(l, m); ++gi) {
        int slot2 = off[l] + dom.res[m][l][gi][e];
        int v2 = cod.res[m][l][gi][v];
        if (!put(slot2, v2, trail)) return false;
      }
    return true;
  };

  std::function<void(int)> go = [&](int slot) {
    while (slot < total && asg[slot] != -1) ++slot;
    if (slot == total) {
      results.push_back(asg);
      return;
    }
    int m, e;
    unflatten(slot, m, e);
    for (int v = 0; v < cod.card[m]; ++v) {
      std::vector<int> trail;
      if (put(slot, v, trail)) go(slot + 1);
      for (int s : trail) asg[s] = -1;
    }
  };

  if (total == 0) return {std::vector<int>{}};
  go(0);
  return results;
}

ExpPsh psh_exp(const Psh& base, const Psh& target) {
  const BoxCat& box = *base.box;
  int d = base.dim();
  ExpPsh out;
  out.doms.reserve(d + 1);
  std::vector<std::map<std::vector<int>, int>> lookup(d + 1);
  out.families.resize(d + 1);
  std::vector<int> card(d + 1);
  for (int n = 0; n <= d; ++n) {
    Psh y_n = psh_representable(box, n);
    out.doms.push_back(psh_product(y_n, base));
    out.families[n] = nat_transformations(out.doms[n], target);
    std::sort(out.families[n].begin(), out.families[n].end());
    for (int i = 0; i < (int)out.families[n].size(); ++i)
      lookup[n][out.families[n][i]] = i;
    card[n] = (int)out.families[n].size();
  }
  out.psh = make_psh(box, card, [&](int n, int m, int fi, int e) {
    // restrict family along f : m -> n by precomposition in the
    // representable coordinate
    const std::vector<int>& fam = out.families[n][e];
    const Psh& dom_m = out.doms[m];
    std::vector<int> fam2;
    fam2.reserve(slot_offset(dom_m, m + 1 > d ? d : m) + dom_m.card[d]);
    for (int l = 0; l <= d; ++l) {
      for (int el = 0; el < dom_m.card[l]; ++el) {
        int g_idx = el / base.card[l]; // g : l -> m
        int b = el % base.card[l];
        int fg = box.compose_idx(l, m, n, fi, g_idx); // f.g : l -> n
        int slot_n = slot_offset(out.doms[n], l) +
                     pair_index(fg, b, base.card[l]);
        fam2.push_back(fam[slot_n]);
      }
    }
    auto it = lookup[m].find(fam2);
    if (it == lookup[m].end())
      throw std::logic_error("psh_exp: restriction left the enumerated set");
    return it->second;
  });
  return out;
}

namespace {

// The family (g, b) |-> X(g)(x), constant in the base coordinate; used for
// both the discreteness and the null-structure canonical maps.
std::vector<int> constant_family(const ExpPsh& ex, const Psh& base,
                                 const Psh& x, int n, int e) {
  int d = x.dim();
  std::vector<int> fam;
  for (int l = 0; l <= d; ++l) {
    for (int el = 0; el < ex.doms[n].card[l]; ++el) {
      int g_idx = el / base.card[l];
      fam.push_back(x.res[n][l][g_idx][e]);
    }
  }
  return fam;
}

DiscreteReport canonical_bijective(const Psh& base, const Psh& x,
                                   const char* what) {
  ExpPsh ex = psh_exp(base, x);
  int d = x.dim();
  for (int n = 0; n <= d; ++n) {
    std::map<std::vector<int>, int> seen;
    for (int e = 0; e < x.card[n]; ++e) {
      std::vector<int> fam = constant_family(ex, base, x, n, e);
      if (seen.count(fam)) {
        std::ostringstream o;
        o << what << ": canonical map not injective at level " << n;
        return {false, o.str()};
      }
      seen[fam] = e;
      bool found = std::binary_search(ex.families[n].begin(),
                                      ex.families[n].end(), fam);
      if (!found) {
        std::ostringstream o;
        o << what << ": canonical image not natural at level " << n;
        return {false, o.str()};
      }
    }
    if ((int)ex.families[n].size() != x.card[n]) {
      std::ostringstream o;
      o << what << ": level " << n << " carrier " << x.card[n]
        << " vs exponential " << ex.families[n].size();
      return {false, o.str()};
    }
  }
  return {true, ""};
}

} // namespace

DiscreteReport is_discrete(const Psh& x) {
  Psh iv = psh_interval(*x.box);
  return canonical_bijective(iv, x, "discrete");
}

bool well_supported(const Psh& b) {
  for (int c : b.card)
    if (c == 0) return false;
  return true;
}

bool psh_proposition(const Psh& b) {
  const BoxCat& box = *b.box;
  int d = b.dim();
  ExpPsh ex = psh_exp(psh_interval(box), b);
  for (int n = 0; n <= d; ++n) {
    int idn = box.id_idx(n);
    // endpoint slots: (id_n, const-eps) in the product y_n x I at level n
    BoxMor c0, c1;
    c0.src = c1.src = n;
    c0.dst = c1.dst = 1;
    c0.comp = {0};
    c1.comp = {(Table)((1 << (1 << n)) - 1)};
    int iv0 = box.index_of(c0), iv1 = box.index_of(c1);
    int ivcard = box.hom_size(n, 1);
    int slot0 = slot_offset(ex.doms[n], n) + pair_index(idn, iv0, ivcard);
    int slot1 = slot_offset(ex.doms[n], n) + pair_index(idn, iv1, ivcard);
    for (int x = 0; x < b.card[n]; ++x)
      for (int y = 0; y < b.card[n]; ++y) {
        bool joined = false;
        for (const auto& fam : ex.families[n])
          if (fam[slot0] == x && fam[slot1] == y) {
            joined = true;
            break;
          }
        if (!joined) return false;
      }
  }
  return true;
}

DiscreteReport null_structure_check(const Psh& b, const Psh& x) {
  return canonical_bijective(b, x, "null-structure");
}

DiscreteReport coproduct_null_check(const Psh& b, const Psh& x,
                                    const Psh& y) {
  int d = x.dim();
  Psh xy = psh_coproduct(x, y);
  ExpPsh ex = psh_exp(b, x);
  ExpPsh ey = psh_exp(b, y);
  ExpPsh exy = psh_exp(b, xy);
  for (int n = 0; n <= d; ++n) {
    std::map<std::vector<int>, int> image;
    auto embed = [&](const std::vector<int>& fam, bool right,
                     int lvl) -> std::vector<int> {
      // reindex values into the coproduct, level by level
      std::vector<int> out;
      out.reserve(fam.size());
      int pos = 0;
      for (int l = 0; l <= d; ++l) {
        int cnt = ex.doms[lvl].card[l];
        for (int t = 0; t < cnt; ++t, ++pos)
          out.push_back(right ? x.card[l] + fam[pos] : fam[pos]);
      }
      return out;
    };
    for (const auto& fam : ex.families[n]) {
      auto im = embed(fam, false, n);
      if (image.count(im)) return {false, "Phi not injective"};
      image[im] = 1;
      if (!std::binary_search(exy.families[n].begin(), exy.families[n].end(),
                              im))
        return {false, "Phi image not natural"};
    }
    for (const auto& fam : ey.families[n]) {
      auto im = embed(fam, true, n);
      if (image.count(im)) return {false, "Phi not injective"};
      image[im] = 1;
      if (!std::binary_search(exy.families[n].begin(), exy.families[n].end(),
                              im))
        return {false, "Phi image not natural"};
    }
    if ((int)image.size() != (int)exy.families[n].size()) {
      std::ostringstream o;
      o << "Phi not surjective at level " << n << ": image " << image.size()
        << " of " << exy.families[n].size();
      return {false, o.str()};
    }
  }
  return {true, ""};
}

AdjunctionReport check_delta_eval_adjunction(const BoxCat& box, int s_card,
                                             const Psh& p) {
  Psh ds = psh_delta(box, s_card);
  auto nats = nat_transformations(ds, p);
  double expect = std::pow((double)p.card[0], (double)s_card);
  if ((double)nats.size() != expect) {
    std::ostringstream o;
    o << "|Nat(Delta S, P)| = " << nats.size() << " but |P(0)|^|S| = "
      << expect;
    return {false, o.str()};
  }
  int d = box.dim();
  for (int n = 0; n <= d; ++n)
    if (box.hom_size(n, 0) != 1) return {false, "hom(n,0) not a singleton"};
  // transposition both ways: eta |-> eta_0, and h |-> (P(!_n) . h)_n
  std::map<std::vector<int>, int> seen;
  for (const auto& eta : nats) {
    // component at 0 (slots for level 0 come first)
    std::vector<int> h(eta.begin(), eta.begin() + s_card);
    // rebuild and compare
    std::vector<int> back;
    for (int n = 0; n <= d; ++n) {
      int bang = 0; // the unique morphism n -> 0 has index 0 in hom(n,0)
      for (int s = 0; s < s_card; ++s) back.push_back(p.res[0][n][bang][h[s]]);
    }
    if (back != eta) return {false, "delta transpose roundtrip failed"};
    if (seen.count(h)) return {false, "delta transpose not injective"};
    seen[h] = 1;
  }
  return {true, ""};
}

AdjunctionReport check_eval_nabla_adjunction(const BoxCat& box, int s_card,
                                             const Psh& p) {
  Psh ns = psh_nabla(box, s_card);
  auto nats = nat_transformations(p, ns);
  double expect = std::pow((double)s_card, (double)p.card[0]);
  if ((double)nats.size() != expect) {
    std::ostringstream o;
    o << "|Nat(P, Nabla S)| = " << nats.size() << " but |S|^|P(0)| = "
      << expect;
    return {false, o.str()};
  }
  int d = box.dim();
  // transpose eta |-> h : P(0) -> S via the level-0 component (a function
  // on the single point of dimension 0), then rebuild
  // eta_n(x)(point q) = h(P(q)(x)) and compare.
  std::map<std::vector<int>, int> seen;
  for (const auto& eta : nats) {
    std::vector<int> h(p.card[0]);
    for (int x = 0; x < p.card[0]; ++x) h[x] = eta[x] % s_card;
    std::vector<int> back;
    for (int n = 0; n <= d; ++n) {
      for (int x = 0; x < p.card[n]; ++x) {
        int fn = 0, weight = 1;
        for (int qi = 0; qi < box.hom_size(0, n); ++qi) {
          const BoxMor& q = box.hom(0, n)[qi];
          int pattern = box_apply(q, 0);
          int digit = h[p.res[n][0][qi][x]];
          // the function's digit position is the point pattern
          int w = 1;
          for (int t = 0; t < pattern; ++t) w *= s_card;
          fn += digit * w;
          weight *= s_card;
        }
        (void)weight;
        back.push_back(fn);
      }
    }
    if (back != eta) return {false, "nabla transpose roundtrip failed"};
    if (seen.count(h)) return {false, "nabla transpose not injective"};
    seen[h] = 1;
  }
  return {true, ""};
}

} // namespace ctt::cube
