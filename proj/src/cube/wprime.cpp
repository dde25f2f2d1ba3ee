#include "wprime.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ctt::cube {

void FinPoly::validate() const {
  const BoxCat& box = *Y.box;
  int d = Y.dim();
  for (int n = 0; n <= d; ++n)
    for (int m = 0; m <= d; ++m)
      for (int fi = 0; fi < box.hom_size(m, n); ++fi)
        for (int y = 0; y < Y.card[n]; ++y) {
          int y2 = Y.res[n][m][fi][y];
          if (in_r[n][y]) {
            if (!in_r[m][y2])
              throw std::logic_error("FinPoly: R not a subpresheaf");
            if (x_restrict(n, m, fi, y, kmap[n][y]) != kmap[m][y2])
              throw std::logic_error("FinPoly: k not natural");
          }
          // arity restrictions must land in the right fibre
          for (int x = 0; x < xcard[n][y]; ++x) {
            int x2 = x_restrict(n, m, fi, y, x);
            if (x2 < 0 || x2 >= xcard[m][y2])
              throw std::logic_error("FinPoly: arity restriction out of range");
          }
        }
}

namespace {

// all child slots of a tree with the given head at the given level
std::vector<SlotKey> slots_of(const BoxCat& box, const FinPoly& poly,
                              int level, int head) {
  std::vector<SlotKey> out;
  int d = box.dim();
  for (int e = 0; e <= d; ++e)
    for (int gi = 0; gi < box.hom_size(e, level); ++gi) {
      int y2 = poly.Y.res[level][e][gi][head];
      for (int x = 0; x < poly.xcard[e][y2]; ++x) out.emplace_back(e, gi, x);
    }
  return out;
}

int kid_at(const WTree& t, const SlotKey& k) {
  auto it = std::lower_bound(
      t.kids.begin(), t.kids.end(), k,
      [](const auto& a, const SlotKey& b) { return a.first < b; });
  if (it == t.kids.end() || it->first != k)
    throw std::logic_error("wprime: missing child slot");
  return it->second;
}

} // namespace

int WPrime::restrict_tree(int n, int tree, int m, int f_idx) const {
  const WTree& t = pool[n][tree];
  const FinPoly& p = *poly;
  int y2 = p.Y.res[n][m][f_idx][t.head];
  if (p.in_r[m][y2]) {
    // reducible after restriction: hand back the child picked out by k
    return kid_at(t, SlotKey{m, f_idx, p.kmap[m][y2]});
  }
  WTree r;
  r.head = y2;
  for (const SlotKey& k : slots_of(*box, p, m, y2)) {
    auto [e, hi, x] = k;
    int fh = box->compose_idx(e, m, n, f_idx, hi);
    r.kids.emplace_back(k, kid_at(t, SlotKey{e, fh, x}));
  }
  std::sort(r.kids.begin(), r.kids.end());
  // locate in the pool
  for (int i = 0; i < (int)pool[m].size(); ++i)
    if (pool[m][i].head == r.head && pool[m][i].kids == r.kids) return i;
  throw std::logic_error("wprime: restriction left the enumerated pool");
}

WPrime build_wprime(const BoxCat& box, const FinPoly& poly, int depth_bound,
                    int pool_cap) {
  poly.validate();
  WPrime wp;
  wp.box = &box;
  wp.poly = &poly;
  wp.depth_bound = depth_bound;
  int d = box.dim();
  wp.pool.assign(d + 1, {});
  std::vector<std::map<std::pair<int, std::vector<std::pair<SlotKey, int>>>,
                       int>>
      dedupe(d + 1);

  // iterate: generate all trees whose children are already pooled
  bool grew = true;
  for (int round = 0; round <= depth_bound && grew; ++round) {
    grew = false;
    for (int n = 0; n <= d; ++n) {
      for (int y = 0; y < poly.Y.card[n]; ++y) {
        if (poly.in_r[n][y]) continue; // reducible heads are not normal
        std::vector<SlotKey> slots = slots_of(box, poly, n, y);
        // enumerate child assignments from the current pools
        std::vector<int> cursor(slots.size(), 0);
        bool any_empty = false;
        for (size_t s = 0; s < slots.size(); ++s)
          if (wp.pool[std::get<0>(slots[s])].empty()) any_empty = true;
        if (any_empty) continue;
        while (true) {
          WTree t;
          t.head = y;
          int maxd = -1;
          for (size_t s = 0; s < slots.size(); ++s) {
            int e = std::get<0>(slots[s]);
            t.kids.emplace_back(slots[s], cursor[s]);
            maxd = std::max(maxd, wp.pool[e][cursor[s]].depth);
          }
          t.depth = slots.empty() ? 0 : maxd + 1;
          if (t.depth <= depth_bound) {
            auto key = std::make_pair(t.head, t.kids);
            if (!dedupe[n].count(key)) {
              dedupe[n][key] = (int)wp.pool[n].size();
              wp.pool[n].push_back(t);
              grew = true;
              if ((int)wp.pool[n].size() > pool_cap) {
                std::ostringstream o;
                o << "depth exhausted: pool at level " << n << " exceeded "
                  << pool_cap << " trees before closing";
                throw std::runtime_error(o.str());
              }
            }
          }
          if (slots.empty()) break;
          size_t s = slots.size() - 1;
          while (true) {
            int e = std::get<0>(slots[s]);
            if (cursor[s] + 1 < (int)wp.pool[e].size()) {
              ++cursor[s];
              break;
            }
            cursor[s] = 0;
            if (s == 0) goto done_head;
            --s;
          }
        }
      done_head:;
      }
    }
  }

  // hereditary naturality, bottom-up by depth
  wp.hnat.assign(d + 1, {});
  for (int n = 0; n <= d; ++n) wp.hnat[n].assign(wp.pool[n].size(), 0);
  for (int depth = 0; depth <= depth_bound; ++depth) {
    for (int n = 0; n <= d; ++n) {
      for (int ti = 0; ti < (int)wp.pool[n].size(); ++ti) {
        const WTree& t = wp.pool[n][ti];
        if (t.depth != depth) continue;
        bool ok = true;
        for (const auto& [key, kid] : t.kids) {
          auto [e, gi, x] = key;
          if (!wp.hnat[e][kid]) {
            ok = false;
            break;
          }
          int y2 = poly.Y.res[n][e][gi][t.head];
          for (int l = 0; l <= d && ok; ++l)
            for (int hi = 0; hi < box.hom_size(l, e) && ok; ++hi) {
              int gh = box.compose_idx(l, e, n, gi, hi);
              int x2 = poly.x_restrict(e, l, hi, y2, x);
              int lhs = wp.restrict_tree(e, kid, l, hi);
              int rhs = kid_at(t, SlotKey{l, gh, x2});
              if (lhs != rhs) ok = false;
            }
          if (!ok) break;
        }
        wp.hnat[n][ti] = ok;
      }
    }
  }

  // package the hereditarily natural trees as a presheaf
  wp.to_psh.assign(d + 1, {});
  wp.from_psh.assign(d + 1, {});
  std::vector<int> card(d + 1, 0);
  for (int n = 0; n <= d; ++n) {
    wp.to_psh[n].assign(wp.pool[n].size(), -1);
    for (int ti = 0; ti < (int)wp.pool[n].size(); ++ti)
      if (wp.hnat[n][ti]) {
        wp.to_psh[n][ti] = card[n]++;
        wp.from_psh[n].push_back(ti);
      }
  }
  wp.carrier = make_psh(box, card, [&wp](int n, int m, int fi, int e) {
    int ti = wp.from_psh[n][e];
    int r = wp.restrict_tree(n, ti, m, fi);
    int out = wp.to_psh[m][r];
    if (out < 0)
      throw std::logic_error(
          "wprime: restriction of a natural tree is not natural");
    return out;
  });
  return wp;
}

bool check_algebra(const WPrime& wp, const WAlgebra& alg, std::string* why) {
  const BoxCat& box = *wp.box;
  const FinPoly& p = *wp.poly;
  int d = box.dim();
  // reduction equations and structure-map naturality, on pooled children
  for (int n = 0; n <= d; ++n) {
    for (int y = 0; y < p.Y.card[n]; ++y) {
      std::vector<SlotKey> slots = slots_of(box, p, n, y);
      // sample child values: every assignment of W-elements would be huge;
      // instead use all folds of pooled trees, which is what the fold check
      // exercises anyway. Here: verify on all-zero style assignments plus
      // every pooled tree instance via wprime_fold below. For the structure
      // map itself we check the reduction equation pointwise on arbitrary
      // symbolic assignments by enumerating assignments when small.
      long combos = 1;
      for (const SlotKey& s : slots) {
        combos *= alg.w->card[std::get<0>(s)];
        if (combos > 4096) break;
      }
      if (combos > 4096 || combos == 0) continue;
      std::vector<int> cursor(slots.size(), 0);
      while (true) {
        std::map<SlotKey, int> kid_values;
        for (size_t s = 0; s < slots.size(); ++s)
          kid_values[slots[s]] = cursor[s];
        // only natural families are elements of the internal hom
        bool natural = true;
        for (const auto& [key, val] : kid_values) {
          auto [e, gi, x] = key;
          int y2 = p.Y.res[n][e][gi][y];
          for (int l = 0; l <= d && natural; ++l)
            for (int hi = 0; hi < box.hom_size(l, e); ++hi) {
              int gh = box.compose_idx(l, e, n, gi, hi);
              int x2 = p.x_restrict(e, l, hi, y2, x);
              if (kid_values.at(SlotKey{l, gh, x2}) !=
                  alg.w->res[e][l][hi][val]) {
                natural = false;
                break;
              }
            }
          if (!natural) break;
        }
        if (!natural) goto advance;
        {
        int v = alg.s(n, y, kid_values);
        if (p.in_r[n][y]) {
          int expect =
              kid_values.at(SlotKey{n, box.id_idx(n), p.kmap[n][y]});
          if (v != expect) {
            if (why) *why = "algebra violates the reduction equation";
            return false;
          }
        }
        // naturality: W(f)(s(y, kids)) = s(Y(f)y, kids . (f . -))
        for (int m = 0; m <= d; ++m)
          for (int fi = 0; fi < box.hom_size(m, n); ++fi) {
            int y2 = p.Y.res[n][m][fi][y];
            std::map<SlotKey, int> kv2;
            for (const SlotKey& k2 : slots_of(box, p, m, y2)) {
              auto [e, hi, x] = k2;
              int fh = box.compose_idx(e, m, n, fi, hi);
              kv2[k2] = kid_values.at(SlotKey{e, fh, x});
            }
            int lhs = alg.w->res[n][m][fi][v];
            int rhs = alg.s(m, y2, kv2);
            if (lhs != rhs) {
              if (why) *why = "algebra structure map not natural";
              return false;
            }
          }
        }
      advance:
        if (slots.empty()) break;
        size_t s = slots.size() - 1;
        while (true) {
          if (cursor[s] + 1 < alg.w->card[std::get<0>(slots[s])]) {
            ++cursor[s];
            break;
          }
          cursor[s] = 0;
          if (s == 0) goto next_head;
          --s;
        }
      }
    next_head:;
    }
  }
  return true;
}

std::vector<std::vector<int>> wprime_fold(const WPrime& wp,
                                          const WAlgebra& alg) {
  int d = wp.box->dim();
  // fold over the raw pool (memo), then project to the carrier
  std::vector<std::vector<int>> memo(d + 1), out(d + 1);
  for (int n = 0; n <= d; ++n) memo[n].assign(wp.pool[n].size(), -1);
  std::function<int(int, int)> f = [&](int n, int ti) -> int {
    int& m = memo[n][ti];
    if (m != -1) return m;
    const WTree& t = wp.pool[n][ti];
    std::map<SlotKey, int> kid_values;
    for (const auto& [key, kid] : t.kids)
      kid_values[key] = f(std::get<0>(key), kid);
    m = alg.s(n, t.head, kid_values);
    return m;
  };
  for (int n = 0; n <= d; ++n) {
    out[n].resize(wp.from_psh[n].size());
    for (size_t e = 0; e < wp.from_psh[n].size(); ++e)
      out[n][e] = f(n, wp.from_psh[n][e]);
  }
  return out;
}

std::vector<std::vector<int>> wprime_algebra_maps(const WPrime& wp,
                                                  const WAlgebra& alg) {
  int d = wp.box->dim();
  auto nats = nat_transformations(wp.carrier, *alg.w);
  std::vector<std::vector<int>> ok;
  for (const auto& eta : nats) {
    auto at = [&](int n, int psh_e) {
      return eta[slot_offset(wp.carrier, n) + psh_e];
    };
    bool good = true;
    for (int n = 0; n <= d && good; ++n) {
      for (size_t e = 0; e < wp.from_psh[n].size() && good; ++e) {
        const WTree& t = wp.pool[n][wp.from_psh[n][e]];
        std::map<SlotKey, int> kid_values;
        bool all_nat = true;
        for (const auto& [key, kid] : t.kids) {
          int lv = std::get<0>(key);
          int pe = wp.to_psh[lv][kid];
          if (pe < 0) {
            all_nat = false;
            break;
          }
          kid_values[key] = at(lv, pe);
        }
        if (!all_nat) continue;
        if (at(n, (int)e) != alg.s(n, t.head, kid_values)) good = false;
      }
    }
    if (good) ok.push_back(eta);
  }
  return ok;
}

std::string check_case_split(const WPrime& wp) {
  const BoxCat& box = *wp.box;
  const FinPoly& p = *wp.poly;
  int d = box.dim();
  for (int n = 0; n <= d; ++n) {
    for (size_t e = 0; e < wp.from_psh[n].size(); ++e) {
      int ti = wp.from_psh[n][e];
      const WTree& t = wp.pool[n][ti];
      if (p.in_r[n][t.head]) return "reducible head in a normal form";
      for (int m = 0; m <= d; ++m)
        for (int fi = 0; fi < box.hom_size(m, n); ++fi) {
          int y2 = p.Y.res[n][m][fi][t.head];
          int got = wp.restrict_tree(n, ti, m, fi);
          if (p.in_r[m][y2]) {
            int expect = kid_at(t, SlotKey{m, fi, p.kmap[m][y2]});
            if (got != expect)
              return "reducible case: restriction is not the k-child";
          } else {
            const WTree& r = wp.pool[m][got];
            if (r.head != y2) return "non-reducible case: wrong head";
            for (const auto& [key, kid] : r.kids) {
              auto [l, hi, x] = key;
              int fh = box.compose_idx(l, m, n, fi, hi);
              if (kid != kid_at(t, SlotKey{l, fh, x}))
                return "non-reducible case: child reindexing mismatch";
            }
          }
        }
    }
  }
  return "";
}

} // namespace ctt::cube
