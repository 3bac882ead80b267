#pragma once

// Brute-force reference implementations. Nothing here calls the search or
// quotient code of the library; only the raw tables of categories, functors
// and pseudofunctors are read.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "twocat/bicolim.hpp"
#include "twocat/bilim.hpp"
#include "twocat/fincat.hpp"
#include "twocat/pseudo.hpp"
#include "twocat/setdiag.hpp"

namespace twocat::oracle {

// ---------------------------------------------------------------------------
// Categories

inline bool filtered(const FinCategory& c) {
  if (c.num_objects() == 0) return false;
  for (ObjId a = 0; a < c.num_objects(); ++a)
    for (ObjId b = 0; b < c.num_objects(); ++b) {
      bool ok = false;
      for (ObjId t = 0; t < c.num_objects() && !ok; ++t) ok = !c.hom(a, t).empty() && !c.hom(b, t).empty();
      if (!ok) return false;
    }
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    for (MorId g = 0; g < c.num_morphisms(); ++g) {
      if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g)) continue;
      bool ok = false;
      for (MorId h = 0; h < c.num_morphisms() && !ok; ++h)
        ok = c.dom(h) == c.cod(f) && c.compose(h, f) == c.compose(h, g);
      if (!ok) return false;
    }
  return true;
}

/// Every functor from -> to, by exhaustive assignment. Stops after `limit`
/// candidate object maps have been tried.
inline std::vector<FinFunctor> all_functors(const CatRef& from, const CatRef& to, std::size_t limit = 1u << 20) {
  const auto& s = *from;
  const auto& t = *to;
  std::vector<FinFunctor> out;
  std::vector<ObjId> om(s.num_objects(), 0);
  std::size_t tried = 0;
  std::function<void(ObjId)> objects = [&](ObjId o) {
    if (tried > limit) return;
    if (o == s.num_objects()) {
      ++tried;
      std::vector<MorId> mm(s.num_morphisms(), -1);
      std::function<void(MorId)> morphisms = [&](MorId m) {
        if (m == s.num_morphisms()) {
          for (MorId f = 0; f < s.num_morphisms(); ++f)
            for (MorId g = 0; g < s.num_morphisms(); ++g)
              if (s.composable(g, f) && t.compose(mm[g], mm[f]) != mm[s.compose(g, f)]) return;
          out.emplace_back(from, to, om, mm);
          return;
        }
        if (s.is_identity(m)) {
          mm[m] = t.id(om[s.dom(m)]);
          morphisms(m + 1);
          return;
        }
        for (MorId c : t.hom(om[s.dom(m)], om[s.cod(m)])) {
          mm[m] = c;
          morphisms(m + 1);
        }
      };
      morphisms(0);
      return;
    }
    for (ObjId x = 0; x < t.num_objects(); ++x) {
      om[o] = x;
      objects(o + 1);
    }
  };
  objects(0);
  return out;
}

/// Number of candidate assignments all_functors walks through.
inline double functor_candidates(const FinCategory& s, const FinCategory& t) {
  double n = 1;
  for (ObjId o = 0; o < s.num_objects(); ++o) n *= t.num_objects();
  for (MorId m = 0; m < s.num_morphisms(); ++m)
    if (!s.is_identity(m)) n *= t.num_morphisms();
  return n;
}

/// True when f is bijective on objects and on morphisms.
inline bool bijective(const FinFunctor& f) {
  const auto& s = *f.source();
  const auto& t = *f.target();
  if (s.num_objects() != t.num_objects() || s.num_morphisms() != t.num_morphisms()) return false;
  std::set<int> objs(f.object_map().begin(), f.object_map().end());
  std::set<int> mors(f.morphism_map().begin(), f.morphism_map().end());
  return static_cast<int>(objs.size()) == t.num_objects() && static_cast<int>(mors.size()) == t.num_morphisms();
}

/// Checks that f is a functor by reading its tables.
inline bool functorial(const FinFunctor& f) {
  const auto& s = *f.source();
  const auto& t = *f.target();
  for (MorId m = 0; m < s.num_morphisms(); ++m) {
    if (t.dom(f.mor(m)) != f.obj(s.dom(m)) || t.cod(f.mor(m)) != f.obj(s.cod(m))) return false;
    if (s.is_identity(m) && !t.is_identity(f.mor(m))) return false;
  }
  for (MorId g = 0; g < s.num_morphisms(); ++g)
    for (MorId h = 0; h < s.num_morphisms(); ++h)
      if (s.composable(g, h) && t.compose(f.mor(g), f.mor(h)) != f.mor(s.compose(g, h))) return false;
  return true;
}

inline bool same_functor(const FinFunctor& f, const FinFunctor& g) {
  return f.object_map() == g.object_map() && f.morphism_map() == g.morphism_map();
}

// ---------------------------------------------------------------------------
// Set diagrams

/// Class label of every element, as the least element reachable by the
/// symmetric closure of the actions. Flat index: offsets[o] + p.
struct Partition {
  std::vector<int> offsets;
  std::vector<int> label;
  int classes = 0;
  int of(ObjId o, int p) const { return label[offsets[o] + p]; }
};

inline Partition closure_colim(const SetDiagram& d) {
  Partition out;
  int n = 0;
  for (ObjId o = 0; o < static_cast<ObjId>(d.elements.size()); ++o) {
    out.offsets.push_back(n);
    n += d.size(o);
  }
  out.label.resize(n);
  for (int k = 0; k < n; ++k) out.label[k] = k;
  const auto& idx = *d.index;
  for (bool changed = true; changed;) {
    changed = false;
    for (MorId m = 0; m < idx.num_morphisms(); ++m)
      for (int p = 0; p < d.size(idx.dom(m)); ++p) {
        int& a = out.label[out.offsets[idx.dom(m)] + p];
        int& b = out.label[out.offsets[idx.cod(m)] + d.actions[m][p]];
        if (a != b) {
          a = b = std::min(a, b);
          changed = true;
        }
      }
  }
  std::set<int> distinct(out.label.begin(), out.label.end());
  out.classes = static_cast<int>(distinct.size());
  return out;
}

/// Every compatible family of positions, by enumerating the whole product.
inline std::set<std::vector<int>> exhaustive_lim(const SetDiagram& d) {
  const auto& idx = *d.index;
  const int n = idx.num_objects();
  std::set<std::vector<int>> out;
  for (ObjId o = 0; o < n; ++o)
    if (d.size(o) == 0) return out;
  std::vector<int> f(n, 0);
  while (true) {
    bool ok = true;
    for (MorId m = 0; m < idx.num_morphisms() && ok; ++m) ok = d.actions[m][f[idx.dom(m)]] == f[idx.cod(m)];
    if (ok) out.insert(f);
    int k = 0;
    while (k < n && ++f[k] == d.size(k)) f[k++] = 0;
    if (k == n) break;
  }
  return out;
}

/// Both sides of the set interchange for d on I x K, and whether the
/// canonical map is a bijection, computed from the oracles above.
struct SetSides {
  int colim_of_lims = 0;
  int lim_of_colims = 0;
  bool bijective = false;
};

inline SetSides set_interchange(const CatRef& left, const CatRef& right, const SetDiagram& d) {
  const auto& ic = *left;
  const auto& kc = *right;
  const int nk = kc.num_objects();
  auto obj = [&](ObjId i, ObjId k) { return i * nk + k; };
  auto mor = [&](MorId s, MorId t) { return s * kc.num_morphisms() + t; };

  // rows: lim over K at each i, as families
  std::vector<std::vector<std::vector<int>>> rows(ic.num_objects());
  for (ObjId i = 0; i < ic.num_objects(); ++i) {
    SetDiagram r{right, {}, {}};
    for (ObjId k = 0; k < nk; ++k) r.elements.push_back(d.elements[obj(i, k)]);
    for (MorId t = 0; t < kc.num_morphisms(); ++t) r.actions.push_back(d.actions[mor(ic.id(i), t)]);
    auto fams = exhaustive_lim(r);
    rows[i].assign(fams.begin(), fams.end());
  }
  SetDiagram col{left, {}, {}};
  for (ObjId i = 0; i < ic.num_objects(); ++i) col.elements.push_back(std::vector<int>(rows[i].size(), 0));
  for (MorId s = 0; s < ic.num_morphisms(); ++s) {
    std::vector<int> act;
    for (const auto& fam : rows[ic.dom(s)]) {
      std::vector<int> img;
      for (ObjId k = 0; k < nk; ++k) img.push_back(d.actions[mor(s, kc.id(k))][fam[k]]);
      const auto& target = rows[ic.cod(s)];
      act.push_back(static_cast<int>(std::find(target.begin(), target.end(), img) - target.begin()));
    }
    col.actions.push_back(act);
  }
  const Partition left_side = closure_colim(col);

  // columns: colim over I at each k
  std::vector<Partition> columns;
  for (ObjId k = 0; k < nk; ++k) {
    SetDiagram c{left, {}, {}};
    for (ObjId i = 0; i < ic.num_objects(); ++i) c.elements.push_back(d.elements[obj(i, k)]);
    for (MorId s = 0; s < ic.num_morphisms(); ++s) c.actions.push_back(d.actions[mor(s, kc.id(k))]);
    columns.push_back(closure_colim(c));
  }
  // lim over K of the class sets; classes are labelled by flat least element
  std::vector<std::vector<int>> labels(nk);
  for (ObjId k = 0; k < nk; ++k) {
    std::set<int> l(columns[k].label.begin(), columns[k].label.end());
    labels[k].assign(l.begin(), l.end());
  }
  SetDiagram lim{right, {}, {}};
  for (ObjId k = 0; k < nk; ++k) lim.elements.push_back(labels[k]);
  for (MorId t = 0; t < kc.num_morphisms(); ++t) {
    const ObjId ka = kc.dom(t), kb = kc.cod(t);
    std::vector<int> act;
    for (int lab : labels[ka]) {
      // a representative of the class at some i
      ObjId i = 0;
      while (i + 1 < ic.num_objects() && columns[ka].offsets[i + 1] <= lab) ++i;
      const int p = lab - columns[ka].offsets[i];
      const int q = d.actions[mor(ic.id(i), t)][p];
      const int target = columns[kb].of(i, q);
      act.push_back(static_cast<int>(std::find(labels[kb].begin(), labels[kb].end(), target) - labels[kb].begin()));
    }
    lim.actions.push_back(act);
  }
  const auto right_side = exhaustive_lim(lim);

  // canonical map on classes
  std::map<int, std::vector<int>> image;
  for (ObjId i = 0; i < ic.num_objects(); ++i)
    for (std::size_t r = 0; r < rows[i].size(); ++r) {
      std::vector<int> fam;
      for (ObjId k = 0; k < nk; ++k) {
        const int lab = columns[k].of(i, rows[i][r][k]);
        fam.push_back(static_cast<int>(std::find(labels[k].begin(), labels[k].end(), lab) - labels[k].begin()));
      }
      image[left_side.of(i, static_cast<int>(r))] = fam;
    }
  std::set<std::vector<int>> hit;
  for (const auto& [cls, fam] : image) hit.insert(fam);
  SetSides out;
  out.colim_of_lims = left_side.classes;
  out.lim_of_colims = static_cast<int>(right_side.size());
  out.bijective = hit.size() == image.size() && hit == right_side;
  return out;
}

// ---------------------------------------------------------------------------
// 2-colimits

/// An element of the hom diagram: apex k, legs s : i -> k, s2 : i2 -> k and
/// h : b(s)x -> b(s2)y in b(k).
struct ColimElement {
  ObjId apex;
  MorId s, s2;
  MorId h;
  auto operator<=>(const ColimElement&) const = default;
};

/// Moves e along v : apex -> m.
inline ColimElement transport(const PseudoFunctor& b, ObjId x, ObjId y, const ColimElement& e, MorId v) {
  const auto& idx = *b.index();
  const auto& at = *b.at(idx.cod(v));
  const MorId moved = b.on(v).mor(e.h);
  const MorId in = b.comp_at(v, e.s, x);
  const MorId out = b.comp_inv_at(v, e.s2, y);
  return {idx.cod(v), idx.compose(v, e.s), idx.compose(v, e.s2), at.compose(out, at.compose(moved, in))};
}

struct ColimHom {
  std::vector<ColimElement> elements;
  std::vector<int> label;  // class label per element
  int classes = 0;
  int class_of(const ColimElement& e) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), e);
    return label[it - elements.begin()];
  }
};

/// Hom from (i, x) to (i2, y) by listing every element and closing under
/// transport.
inline ColimHom colim_hom(const PseudoFunctor& b, ObjId i, ObjId x, ObjId i2, ObjId y) {
  const auto& idx = *b.index();
  ColimHom out;
  for (ObjId k = 0; k < idx.num_objects(); ++k)
    for (MorId s : idx.hom(i, k))
      for (MorId s2 : idx.hom(i2, k)) {
        const auto& at = *b.at(k);
        for (MorId h : at.hom(b.on(s).obj(x), b.on(s2).obj(y))) out.elements.push_back({k, s, s2, h});
      }
  std::sort(out.elements.begin(), out.elements.end());
  const int n = static_cast<int>(out.elements.size());
  out.label.resize(n);
  for (int k = 0; k < n; ++k) out.label[k] = k;
  auto find = [&](const ColimElement& e) {
    return static_cast<int>(std::lower_bound(out.elements.begin(), out.elements.end(), e) - out.elements.begin());
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (int k = 0; k < n; ++k)
      for (ObjId c = 0; c < idx.num_objects(); ++c)
        for (MorId v : idx.hom(out.elements[k].apex, c)) {
          const int j = find(transport(b, x, y, out.elements[k], v));
          if (out.label[k] != out.label[j]) {
            out.label[k] = out.label[j] = std::min(out.label[k], out.label[j]);
            changed = true;
          }
        }
  }
  std::set<int> distinct(out.label.begin(), out.label.end());
  out.classes = static_cast<int>(distinct.size());
  return out;
}

/// Every composite g o f obtained by moving f : (i,x) -> (i2,y) and
/// g : (i2,y) -> (i3,z) to a common apex in every possible way.
inline std::vector<ColimElement> all_composites(const PseudoFunctor& b, ObjId x, ObjId y, ObjId z,
                                                const ColimElement& f, const ColimElement& g) {
  const auto& idx = *b.index();
  std::vector<ColimElement> out;
  for (ObjId m = 0; m < idx.num_objects(); ++m)
    for (MorId v : idx.hom(f.apex, m))
      for (MorId w : idx.hom(g.apex, m)) {
        if (idx.compose(v, f.s2) != idx.compose(w, g.s)) continue;
        const ColimElement f2 = transport(b, x, y, f, v);
        const ColimElement g2 = transport(b, y, z, g, w);
        out.push_back({m, f2.s, g2.s2, b.at(m)->compose(g2.h, f2.h)});
      }
  return out;
}

// ---------------------------------------------------------------------------
// 2-limits

/// Every object of the 2-limit of c : K -> Cat by enumerating families of
/// objects and of isomorphisms theta_m : X_b -> c(m) X_a.
inline std::set<LimObject> lim_objects(const PseudoFunctor& c) {
  const auto& k = *c.index();
  std::set<LimObject> out;
  LimObject cur;
  cur.x.assign(k.num_objects(), 0);
  cur.theta.assign(k.num_morphisms(), 0);
  auto conditions = [&]() {
    for (ObjId b = 0; b < k.num_objects(); ++b) {
      const auto& cb = *c.at(b);
      if (cb.compose(c.unit_at(b, cur.x[b]), cur.theta[k.id(b)]) != cb.id(cur.x[b])) return false;
    }
    for (MorId m1 = 0; m1 < k.num_morphisms(); ++m1)
      for (MorId m2 = 0; m2 < k.num_morphisms(); ++m2) {
        if (!k.composable(m2, m1)) continue;
        const auto& cc = *c.at(k.cod(m2));
        const MorId lhs = cc.compose(c.on(m2).mor(cur.theta[m1]), cur.theta[m2]);
        const MorId rhs = cc.compose(c.comp_at(m2, m1, cur.x[k.dom(m1)]), cur.theta[k.compose(m2, m1)]);
        if (lhs != rhs) return false;
      }
    return true;
  };
  std::function<void(MorId)> thetas = [&](MorId m) {
    if (m == k.num_morphisms()) {
      if (conditions()) out.insert(cur);
      return;
    }
    const ObjId a = k.dom(m), b = k.cod(m);
    const auto& cb = *c.at(b);
    for (MorId t : cb.hom(cur.x[b], c.on(m).obj(cur.x[a]))) {
      if (!cb.is_iso(t)) continue;
      cur.theta[m] = t;
      thetas(m + 1);
    }
  };
  std::function<void(ObjId)> objects = [&](ObjId o) {
    if (o == k.num_objects()) {
      thetas(0);
      return;
    }
    for (ObjId x = 0; x < c.at(o)->num_objects(); ++x) {
      cur.x[o] = x;
      objects(o + 1);
    }
  };
  objects(0);
  return out;
}

/// Every family h_k : X_k -> Y_k with c(m)(h_a) o theta^X_m = theta^Y_m o h_b.
inline std::set<Family> lim_hom(const PseudoFunctor& c, const LimObject& x, const LimObject& y) {
  const auto& k = *c.index();
  std::set<Family> out;
  Family h(k.num_objects(), 0);
  std::function<void(ObjId)> go = [&](ObjId o) {
    if (o == k.num_objects()) {
      for (MorId m = 0; m < k.num_morphisms(); ++m) {
        const auto& cb = *c.at(k.cod(m));
        if (cb.compose(c.on(m).mor(h[k.dom(m)]), x.theta[m]) != cb.compose(y.theta[m], h[k.cod(m)])) return;
      }
      out.insert(h);
      return;
    }
    for (MorId f : c.at(o)->hom(x.x[o], y.x[o])) {
      h[o] = f;
      go(o + 1);
    }
  };
  go(0);
  return out;
}

}  // namespace twocat::oracle
