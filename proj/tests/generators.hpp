#pragma once

// Hand-rolled generators for property tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "twocat/fincat.hpp"
#include "twocat/setdiag.hpp"

namespace twocat::gen {

inline int pick(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

/// A random set-valued functor on `index` with every set of size at most
/// `max_size`: a sum of representables Hom(p, -) and singletons, divided by
/// the congruence generated by a few random identifications. Returns an
/// empty index pointer when no candidate fits within `attempts` tries.
inline SetDiagram random_set_diagram(const CatRef& index, std::mt19937_64& rng, int max_size = 4,
                                     int attempts = 200) {
  const auto& c = *index;
  const int n = c.num_objects();
  for (int attempt = 0; attempt < attempts; ++attempt) {
    // elements: (summand, morphism from p) or (summand, -1) for a singleton
    struct Elem {
      int summand;
      MorId via;
    };
    std::vector<std::vector<Elem>> sets(n);
    const int summands = 1 + pick(rng, 3);
    for (int r = 0; r < summands; ++r) {
      if (pick(rng, 4) == 0) {
        for (ObjId o = 0; o < n; ++o) sets[o].push_back({r, -1});
        continue;
      }
      const ObjId p = pick(rng, n);
      for (ObjId o = 0; o < n; ++o)
        for (MorId m : c.hom(p, o)) sets[o].push_back({r, m});
    }
    std::vector<int> offsets;
    int total = 0;
    for (ObjId o = 0; o < n; ++o) {
      offsets.push_back(total);
      total += static_cast<int>(sets[o].size());
    }
    auto act = [&](MorId m, int p) {
      const Elem& e = sets[c.dom(m)][p];
      const Elem target{e.summand, e.via < 0 ? -1 : c.compose(m, e.via)};
      const auto& s = sets[c.cod(m)];
      for (int q = 0; q < static_cast<int>(s.size()); ++q)
        if (s[q].summand == target.summand && s[q].via == target.via) return q;
      return -1;
    };
    // congruence: union-find closed under the actions
    std::vector<int> parent(total);
    for (int k = 0; k < total; ++k) parent[k] = k;
    std::function<int(int)> find = [&](int k) { return parent[k] == k ? k : parent[k] = find(parent[k]); };
    const int merges = pick(rng, 3);
    for (int k = 0; k < merges; ++k) {
      const ObjId o = pick(rng, n);
      if (sets[o].size() < 2) continue;
      const int a = pick(rng, static_cast<int>(sets[o].size()));
      const int b = pick(rng, static_cast<int>(sets[o].size()));
      parent[find(offsets[o] + a)] = find(offsets[o] + b);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (MorId m = 0; m < c.num_morphisms(); ++m)
        for (int p = 0; p < static_cast<int>(sets[c.dom(m)].size()); ++p)
          for (int q = p + 1; q < static_cast<int>(sets[c.dom(m)].size()); ++q) {
            if (find(offsets[c.dom(m)] + p) != find(offsets[c.dom(m)] + q)) continue;
            const int a = find(offsets[c.cod(m)] + act(m, p));
            const int b = find(offsets[c.cod(m)] + act(m, q));
            if (a != b) {
              parent[a] = b;
              changed = true;
            }
          }
    }
    SetDiagram d{index, std::vector<std::vector<int>>(n), {}};
    std::vector<std::vector<int>> position(n);
    bool fits = true;
    for (ObjId o = 0; o < n && fits; ++o) {
      std::vector<int> roots;
      for (int p = 0; p < static_cast<int>(sets[o].size()); ++p) {
        const int r = find(offsets[o] + p);
        auto it = std::find(roots.begin(), roots.end(), r);
        position[o].push_back(static_cast<int>(it - roots.begin()));
        if (it == roots.end()) roots.push_back(r);
      }
      fits = static_cast<int>(roots.size()) <= max_size;
      for (int k = 0; k < static_cast<int>(roots.size()); ++k) d.elements[o].push_back(k);
    }
    if (!fits) continue;
    for (MorId m = 0; m < c.num_morphisms(); ++m) {
      std::vector<int> a(d.elements[c.dom(m)].size(), 0);
      for (int p = 0; p < static_cast<int>(sets[c.dom(m)].size()); ++p)
        a[position[c.dom(m)][p]] = position[c.cod(m)][act(m, p)];
      d.actions.push_back(std::move(a));
    }
    return d;
  }
  return {};
}

}  // namespace twocat::gen
