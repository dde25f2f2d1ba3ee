#include "box.hpp"

namespace ctt::cube {

bool table_monotone(Table t, int n) {
  int pts = 1 << n;
  for (int x = 0; x < pts; ++x) {
    for (int b = 0; b < n; ++b) {
      if (x & (1 << b)) continue;
      int y = x | (1 << b); // x <= y pointwise
      bool fx = (t >> x) & 1, fy = (t >> y) & 1;
      if (fx && !fy) return false;
    }
  }
  return true;
}

int box_apply(const BoxMor& f, int x) {
  int y = 0;
  for (int j = 0; j < f.dst; ++j)
    if ((f.comp[j] >> x) & 1) y |= (1 << j);
  return y;
}

BoxMor box_compose(const BoxMor& f, const BoxMor& g) {
  if (g.dst != f.src) throw std::logic_error("box_compose: domain mismatch");
  BoxMor h;
  h.src = g.src;
  h.dst = f.dst;
  h.comp.assign(f.dst, 0);
  int pts = 1 << g.src;
  for (int x = 0; x < pts; ++x) {
    int y = box_apply(g, x);
    for (int j = 0; j < f.dst; ++j)
      if ((f.comp[j] >> y) & 1) h.comp[j] |= (Table)(1 << x);
  }
  return h;
}

BoxMor box_identity(int n) {
  BoxMor f;
  f.src = f.dst = n;
  f.comp.assign(n, 0);
  int pts = 1 << n;
  for (int x = 0; x < pts; ++x)
    for (int j = 0; j < n; ++j)
      if ((x >> j) & 1) f.comp[j] |= (Table)(1 << x);
  return f;
}

BoxCat::BoxCat(int dim) : dim_(dim) {
  if (dim < 0 || dim > 3) throw std::invalid_argument("BoxCat: dim must be 0..3");
  mono_.resize(dim + 1);
  for (int n = 0; n <= dim; ++n) {
    int masks = 1 << (1 << n);
    for (int t = 0; t < masks; ++t)
      if (table_monotone((Table)t, n)) mono_[n].push_back((Table)t);
  }
  for (int n = 0; n <= dim; ++n) {
    for (int m = 0; m <= dim; ++m) {
      std::vector<BoxMor>& hs = hom_[key(n, m)];
      // all m-tuples of monotone n-tables
      std::vector<int> pick(m, 0);
      while (true) {
        BoxMor f;
        f.src = n;
        f.dst = m;
        for (int j = 0; j < m; ++j) f.comp.push_back(mono_[n][pick[j]]);
        hs.push_back(f);
        int j = m - 1;
        while (j >= 0 && pick[j] + 1 == (int)mono_[n].size()) pick[j--] = 0;
        if (j < 0) break;
        ++pick[j];
      }
      for (int i = 0; i < (int)hs.size(); ++i) index_[hs[i]] = i;
    }
  }
}

int BoxCat::index_of(const BoxMor& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) throw std::logic_error("BoxCat: unknown morphism");
  return it->second;
}

int BoxCat::compose_idx(int n, int m, int k, int f_idx, int g_idx) const {
  const BoxMor& f = hom(m, k)[f_idx];
  const BoxMor& g = hom(n, m)[g_idx];
  return index_of(box_compose(f, g));
}

int BoxCat::id_idx(int n) const { return index_of(box_identity(n)); }

void BoxCat::check_identities() const {
  for (int n = 0; n <= dim_; ++n) {
    BoxMor idn = box_identity(n);
    for (int m = 0; m <= dim_; ++m) {
      for (const BoxMor& f : hom(n, m)) {
        if (!(box_compose(f, idn) == f))
          throw std::logic_error("right identity failed");
        if (!(box_compose(box_identity(m), f) == f))
          throw std::logic_error("left identity failed");
      }
    }
  }
}

void BoxCat::check_tables_match_pointwise() const {
  for (int n = 0; n <= dim_; ++n)
    for (int m = 0; m <= dim_; ++m)
      for (int k = 0; k <= dim_; ++k)
        for (const BoxMor& g : hom(n, m))
          for (const BoxMor& f : hom(m, k)) {
            BoxMor h = box_compose(f, g);
            for (int x = 0; x < (1 << n); ++x)
              if (box_apply(h, x) != box_apply(f, box_apply(g, x)))
                throw std::logic_error("composition table mismatch");
          }
}

void BoxCat::check_associativity(long budget) const {
  for (int n = 0; n <= dim_; ++n)
    for (int m = 0; m <= dim_; ++m)
      for (int k = 0; k <= dim_; ++k)
        for (int l = 0; l <= dim_; ++l) {
          long cnt = (long)hom_size(n, m) * hom_size(m, k) * hom_size(k, l);
          if (cnt > budget) continue;
          for (const BoxMor& h : hom(n, m))
            for (const BoxMor& g : hom(m, k))
              for (const BoxMor& f : hom(k, l)) {
                BoxMor a = box_compose(f, box_compose(g, h));
                BoxMor b = box_compose(box_compose(f, g), h);
                if (!(a == b)) throw std::logic_error("associativity failed");
              }
        }
}

} // namespace ctt::cube
