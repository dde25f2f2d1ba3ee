#include "sieve.hpp"

#include <algorithm>

namespace ctt::cube {

namespace {

bool table_constant(Table t, int n, bool val) {
  Table full = (Table)((1 << (1 << n)) - 1);
  return val ? t == full : t == 0;
}

} // namespace

Sieve cof_sieve(const BoxCat& box, const Dnf& phi, int n) {
  Sieve s;
  s.at = n;
  int d = box.dim();
  s.member.resize(d + 1);
  for (int m = 0; m <= d; ++m) {
    int hs = box.hom_size(m, n);
    s.member[m].assign(hs, 0);
    for (int fi = 0; fi < hs; ++fi) {
      const BoxMor& f = box.hom(m, n)[fi];
      bool in = false;
      for (const auto& clause : phi.clauses) {
        bool all = true;
        for (auto& [v, val] : clause) {
          if (v >= n || !table_constant(f.comp[v], m, val)) {
            all = false;
            break;
          }
        }
        if (all) {
          in = true;
          break;
        }
      }
      s.member[m][fi] = in;
    }
  }
  return s;
}

Sieve maximal_sieve(const BoxCat& box, int n) {
  return cof_sieve(box, Dnf::top(), n);
}

bool sieve_leq(const Sieve& a, const Sieve& b) {
  for (size_t m = 0; m < a.member.size(); ++m)
    for (size_t f = 0; f < a.member[m].size(); ++f)
      if (a.member[m][f] && !b.member[m][f]) return false;
  return true;
}

bool sieve_closed(const BoxCat& box, const Sieve& s) {
  int d = box.dim();
  for (int m = 0; m <= d; ++m)
    for (int fi = 0; fi < (int)s.member[m].size(); ++fi) {
      if (!s.member[m][fi]) continue;
      for (int l = 0; l <= d; ++l)
        for (int gi = 0; gi < box.hom_size(l, m); ++gi) {
          int fg = box.compose_idx(l, m, s.at, fi, gi);
          if (!s.member[l][fg]) return false;
        }
    }
  return true;
}

std::vector<Dnf> enumerate_canonical_cofs(int nvars) {
  // all consistent partial assignments, then DFS over antichains
  std::vector<Assign> assigns;
  std::vector<int> state(nvars, 0); // 0 unset, 1 -> 0, 2 -> 1
  while (true) {
    Assign a;
    for (int v = 0; v < nvars; ++v)
      if (state[v]) a.emplace_back(v, state[v] == 2);
    assigns.push_back(a);
    int v = nvars - 1;
    while (v >= 0 && state[v] == 2) state[v--] = 0;
    if (v < 0) break;
    ++state[v];
  }
  std::sort(assigns.begin(), assigns.end());

  auto extends = [](const Assign& a, const Assign& b) {
    size_t i = 0;
    for (const auto& bind : b) {
      while (i < a.size() && a[i].first < bind.first) ++i;
      if (i == a.size() || a[i] != bind) return false;
    }
    return true;
  };

  std::vector<Dnf> out;
  std::vector<Assign> current;
  std::function<void(size_t)> go = [&](size_t idx) {
    Dnf d;
    d.clauses = current;
    std::sort(d.clauses.begin(), d.clauses.end());
    out.push_back(d);
    for (size_t i = idx; i < assigns.size(); ++i) {
      bool anti = true;
      for (const auto& c : current)
        if (extends(assigns[i], c) || extends(c, assigns[i])) {
          anti = false;
          break;
        }
      if (!anti) continue;
      current.push_back(assigns[i]);
      go(i + 1);
      current.pop_back();
    }
  };
  go(0);
  return out;
}

} // namespace ctt::cube
