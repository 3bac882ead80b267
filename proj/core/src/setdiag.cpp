#include "twocat/setdiag.hpp"

#include <boost/pending/disjoint_sets.hpp>

namespace twocat {

void validate_diagram(const SetDiagram& d) {
  const auto& c = *d.index;
  if (static_cast<int>(d.elements.size()) != c.num_objects() ||
      static_cast<int>(d.actions.size()) != c.num_morphisms())
    throw Error(ErrorCode::ShapeMismatch, "diagram tables do not match index " + c.name());
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    const auto& act = d.actions[m];
    if (static_cast<int>(act.size()) != d.size(c.dom(m)))
      throw Error(ErrorCode::ShapeMismatch, "action of " + c.morphism_name(m) + " is not total");
    for (int x : act)
      if (x < 0 || x >= d.size(c.cod(m)))
        throw Error(ErrorCode::NotFunctorial,
                    "action of " + c.morphism_name(m) + " leaves its codomain",
                    {c.morphism_name(m)});
  }
  for (ObjId o = 0; o < c.num_objects(); ++o)
    for (int x = 0; x < d.size(o); ++x)
      if (d.actions[c.id(o)][x] != x)
        throw Error(ErrorCode::NotFunctorial, "identity of " + c.object_name(o) + " acts nontrivially",
                    {c.object_name(o)});
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    for (ObjId z = 0; z < c.num_objects(); ++z)
      for (MorId g : c.hom(c.cod(f), z)) {
        const auto& gf = d.actions[c.compose(g, f)];
        for (int x = 0; x < d.size(c.dom(f)); ++x)
          if (gf[x] != d.actions[g][d.actions[f][x]])
            throw Error(ErrorCode::NotFunctorial,
                        "composite " + c.morphism_name(g) + " o " + c.morphism_name(f) +
                            " acts inconsistently",
                        {c.morphism_name(g), c.morphism_name(f)});
      }
}

ColimSet::ColimSet(const SetDiagram& d) {
  const auto& c = *d.index;
  offsets_.resize(c.num_objects() + 1, 0);
  for (ObjId o = 0; o < c.num_objects(); ++o) offsets_[o + 1] = offsets_[o] + d.size(o);
  const int total = offsets_.back();

  std::vector<int> rank(total), parent(total);
  boost::disjoint_sets<int*, int*> sets(rank.data(), parent.data());
  for (int x = 0; x < total; ++x) sets.make_set(x);
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    const int from = offsets_[c.dom(m)];
    const int to = offsets_[c.cod(m)];
    const auto& act = d.actions[m];
    for (std::size_t x = 0; x < act.size(); ++x) sets.union_set(from + static_cast<int>(x), to + act[x]);
  }

  // Classes are numbered by their least member, which is met first in flat order.
  class_of_.assign(total, -1);
  std::vector<int> class_of_root(total, -1);
  for (ObjId o = 0; o < c.num_objects(); ++o)
    for (int p = 0; p < d.size(o); ++p) {
      const int flat = offsets_[o] + p;
      const int root = sets.find_set(flat);
      if (class_of_root[root] < 0) {
        class_of_root[root] = static_cast<int>(members_.size());
        members_.emplace_back();
      }
      class_of_[flat] = class_of_root[root];
      members_[class_of_root[root]].push_back({o, p});
    }
}

LimSet::LimSet(const SetDiagram& d) {
  const auto& c = *d.index;
  const int n = c.num_objects();
  // Morphisms are checked as soon as both endpoints are assigned.
  std::vector<std::vector<MorId>> check_at(n);
  for (MorId m = 0; m < c.num_morphisms(); ++m)
    check_at[std::max(c.dom(m), c.cod(m))].push_back(m);

  std::vector<int> current(n, 0);
  auto consistent = [&](ObjId o) {
    for (MorId m : check_at[o])
      if (d.actions[m][current[c.dom(m)]] != current[c.cod(m)]) return false;
    return true;
  };
  auto recurse = [&](auto& self, ObjId o) -> void {
    if (o == n) {
      index_.emplace(current, static_cast<int>(families_.size()));
      families_.push_back(current);
      return;
    }
    for (int x = 0; x < d.size(o); ++x) {
      current[o] = x;
      if (consistent(o)) self(self, o + 1);
    }
  };
  recurse(recurse, 0);
}

std::optional<int> LimSet::find(const std::vector<int>& family) const {
  auto it = index_.find(family);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ColimSet colim_set(const SetDiagram& d) { return ColimSet(d); }
LimSet lim_set(const SetDiagram& d) { return LimSet(d); }

SetInterchange interchange_map_set(const CatRef& colim_index, const CatRef& lim_index,
                                   const SetDiagram& d) {
  const auto& ci = *colim_index;
  const auto& li = *lim_index;
  const int n_i = ci.num_objects();
  const int n_k = li.num_objects();
  const int m_k = li.num_morphisms();
  if (d.index->num_objects() != n_i * n_k ||
      d.index->num_morphisms() != ci.num_morphisms() * m_k)
    throw Error(ErrorCode::ShapeMismatch, "diagram is not indexed by " + ci.name() + " x " + li.name());
  validate_diagram(d);
  auto obj = [&](ObjId i, ObjId k) { return i * n_k + k; };
  auto mor = [&](MorId s, MorId t) { return s * m_k + t; };

  // colim over I of (lim over K)
  std::vector<LimSet> row_limits;
  row_limits.reserve(n_i);
  for (ObjId i = 0; i < n_i; ++i) {
    SetDiagram row{lim_index, {}, {}};
    for (ObjId k = 0; k < n_k; ++k) row.elements.push_back(d.elements[obj(i, k)]);
    for (MorId t = 0; t < m_k; ++t) row.actions.push_back(d.actions[mor(ci.id(i), t)]);
    row_limits.emplace_back(row);
  }
  SetDiagram outer_colim{colim_index, {}, {}};
  for (ObjId i = 0; i < n_i; ++i) {
    std::vector<int> labels(row_limits[i].size());
    for (int f = 0; f < row_limits[i].size(); ++f) labels[f] = f;
    outer_colim.elements.push_back(std::move(labels));
  }
  for (MorId s = 0; s < ci.num_morphisms(); ++s) {
    const auto& from = row_limits[ci.dom(s)];
    const auto& to = row_limits[ci.cod(s)];
    std::vector<int> act(from.size());
    for (int f = 0; f < from.size(); ++f) {
      std::vector<int> image(n_k);
      for (ObjId k = 0; k < n_k; ++k) image[k] = d.actions[mor(s, li.id(k))][from.family(f)[k]];
      auto hit = to.find(image);
      if (!hit) throw Error(ErrorCode::InternalInvariant, "I-action does not preserve compatible families");
      act[f] = *hit;
    }
    outer_colim.actions.push_back(std::move(act));
  }
  const ColimSet lhs(outer_colim);

  // lim over K of (colim over I)
  std::vector<ColimSet> column_colimits;
  column_colimits.reserve(n_k);
  for (ObjId k = 0; k < n_k; ++k) {
    SetDiagram col{colim_index, {}, {}};
    for (ObjId i = 0; i < n_i; ++i) col.elements.push_back(d.elements[obj(i, k)]);
    for (MorId s = 0; s < ci.num_morphisms(); ++s) col.actions.push_back(d.actions[mor(s, li.id(k))]);
    column_colimits.emplace_back(col);
  }
  SetDiagram outer_lim{lim_index, {}, {}};
  for (ObjId k = 0; k < n_k; ++k) {
    std::vector<int> labels(column_colimits[k].num_classes());
    for (std::size_t c = 0; c < labels.size(); ++c) labels[c] = static_cast<int>(c);
    outer_lim.elements.push_back(std::move(labels));
  }
  for (MorId t = 0; t < m_k; ++t) {
    const auto& from = column_colimits[li.dom(t)];
    const auto& to = column_colimits[li.cod(t)];
    std::vector<int> act(from.num_classes(), -1);
    for (int cls = 0; cls < from.num_classes(); ++cls)
      for (const auto& e : from.members(cls)) {
        const int image = to.class_of(e.object, d.actions[mor(ci.id(e.object), t)][e.position]);
        if (act[cls] >= 0 && act[cls] != image)
          throw Error(ErrorCode::NonWellDefined, "K-action on classes depends on the representative");
        act[cls] = image;
      }
    outer_lim.actions.push_back(std::move(act));
  }
  const LimSet rhs(outer_lim);

  SetInterchange out;
  out.colim_of_lims_size = lhs.num_classes();
  out.lim_of_colims_size = rhs.size();
  out.map.assign(lhs.num_classes(), -1);
  for (int cls = 0; cls < lhs.num_classes(); ++cls)
    for (const auto& e : lhs.members(cls)) {
      const auto& fam = row_limits[e.object].family(e.position);
      std::vector<int> image(n_k);
      for (ObjId k = 0; k < n_k; ++k) image[k] = column_colimits[k].class_of(e.object, fam[k]);
      auto hit = rhs.find(image);
      if (!hit) throw Error(ErrorCode::InternalInvariant, "family of classes is not compatible");
      if (out.map[cls] >= 0 && out.map[cls] != *hit)
        throw Error(ErrorCode::NonWellDefined, "interchange map depends on the representative");
      out.map[cls] = *hit;
    }

  std::vector<int> preimage(rhs.size(), -1);
  out.injective = true;
  for (int cls = 0; cls < lhs.num_classes(); ++cls) {
    int& slot = preimage[out.map[cls]];
    if (slot >= 0 && out.injective) {
      out.injective = false;
      out.witness = "classes " + std::to_string(slot) + " and " + std::to_string(cls) +
                    " have the same image";
    }
    if (slot < 0) slot = cls;
  }
  out.surjective = true;
  for (int f = 0; f < rhs.size(); ++f)
    if (preimage[f] < 0) {
      out.surjective = false;
      if (!out.witness) out.witness = "family " + std::to_string(f) + " has no preimage";
      break;
    }
  out.bijective = out.injective && out.surjective;
  if (out.bijective) out.inverse = std::move(preimage);
  return out;
}

}  // namespace twocat
