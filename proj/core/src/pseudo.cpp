#include "twocat/pseudo.hpp"

namespace twocat {

namespace {

/// Builds an invertible cell, mapping malformed components to `code`.
NatTransformation make_cell(const FinFunctor& source, const FinFunctor& target,
                            std::vector<MorId> comps, ErrorCode code, const std::string& what) {
  try {
    auto cell = validate_nat(source, target, std::move(comps), false);
    if (!cell.is_iso()) throw Error(ErrorCode::NotIsoCell, what + " has a non-invertible component");
    return cell;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotIsoCell) throw;
    throw Error(code, what + ": " + e.what(), e.witness());
  }
}

std::vector<MorId> identity_components(const FinFunctor& f, const FinFunctor& g, ErrorCode code,
                                       const std::string& what) {
  if (!(f == g)) throw Error(code, what + " omitted but the functors differ");
  const auto& c = *f.target();
  std::vector<MorId> comps(f.object_map().size());
  for (std::size_t x = 0; x < comps.size(); ++x) comps[x] = c.id(f.obj(static_cast<ObjId>(x)));
  return comps;
}

bool all_identities(const NatTransformation& n) {
  const auto& c = *n.source().target();
  for (MorId m : n.components())
    if (!c.is_identity(m)) return false;
  return true;
}

}  // namespace

const NatTransformation& PseudoFunctor::comp(MorId t, MorId s) const {
  const int slot = comp_slot_[static_cast<std::size_t>(t) * index_->num_morphisms() + s];
  if (slot < 0)
    throw Error(ErrorCode::BadEndpoints, "no composition cell for non-composable pair");
  return comp_[slot];
}

MorId PseudoFunctor::unit_inv_at(ObjId i, ObjId x) const {
  return *at_[i]->inverse(unit_at(i, x));
}

MorId PseudoFunctor::comp_inv_at(MorId t, MorId s, ObjId x) const {
  return *at_[index_->cod(t)]->inverse(comp_at(t, s, x));
}

PseudoFunctor validate_pseudofunctor(PseudoFunctorSpec spec) {
  const auto& idx = *spec.index;
  if (static_cast<int>(spec.at.size()) != idx.num_objects() ||
      static_cast<int>(spec.on.size()) != idx.num_morphisms())
    throw Error(ErrorCode::BadEndpoints, "pseudofunctor tables do not match index " + idx.name());
  for (MorId m = 0; m < idx.num_morphisms(); ++m)
    if (!same_category(spec.on[m].source(), spec.at[idx.dom(m)]) ||
        !same_category(spec.on[m].target(), spec.at[idx.cod(m)]))
      throw Error(ErrorCode::BadEndpoints, "functor on " + idx.morphism_name(m) + " has wrong endpoints",
                  {idx.morphism_name(m)});

  PseudoFunctor p;
  p.index_ = spec.index;
  p.at_ = spec.at;
  p.on_ = spec.on;

  for (ObjId i = 0; i < idx.num_objects(); ++i) {
    const FinFunctor& on_id = spec.on[idx.id(i)];
    const FinFunctor id = identity_functor(spec.at[i]);
    const std::string what = "unit cell at " + idx.object_name(i);
    auto given = spec.unit.find(i);
    auto comps = given != spec.unit.end() ? given->second
                                          : identity_components(on_id, id, ErrorCode::IncoherentUnit, what);
    p.unit_.push_back(make_cell(on_id, id, std::move(comps), ErrorCode::IncoherentUnit, what));
  }

  const int n_mor = idx.num_morphisms();
  p.comp_slot_.assign(static_cast<std::size_t>(n_mor) * n_mor, -1);
  for (MorId s = 0; s < n_mor; ++s)
    for (ObjId c = 0; c < idx.num_objects(); ++c)
      for (MorId t : idx.hom(idx.cod(s), c)) {
        const FinFunctor& whole = spec.on[idx.compose(t, s)];
        const FinFunctor parts = compose(spec.on[t], spec.on[s]);
        const std::string what =
            "composition cell at (" + idx.morphism_name(t) + ", " + idx.morphism_name(s) + ")";
        auto given = spec.comp.find({t, s});
        auto comps = given != spec.comp.end()
                         ? given->second
                         : identity_components(whole, parts, ErrorCode::IncoherentAssoc, what);
        p.comp_slot_[static_cast<std::size_t>(t) * n_mor + s] = static_cast<int>(p.comp_.size());
        p.comp_.push_back(make_cell(whole, parts, std::move(comps), ErrorCode::IncoherentAssoc, what));
      }

  p.strict_ = true;
  for (const auto& u : p.unit_) p.strict_ = p.strict_ && all_identities(u);
  for (const auto& c : p.comp_) p.strict_ = p.strict_ && all_identities(c);
  if (p.strict_) return p;

  // Unit laws: both triangles collapse to the identity of on(s)(x).
  for (MorId s = 0; s < n_mor; ++s) {
    const ObjId a = idx.dom(s);
    const ObjId b = idx.cod(s);
    const auto& vb = *spec.at[b];
    for (ObjId x = 0; x < spec.at[a]->num_objects(); ++x) {
      const ObjId sx = spec.on[s].obj(x);
      const MorId left = vb.compose(p.unit_at(b, sx), p.comp_at(idx.id(b), s, x));
      const MorId right = vb.compose(spec.on[s].mor(p.unit_at(a, x)), p.comp_at(s, idx.id(a), x));
      if (left != vb.id(sx) || right != vb.id(sx))
        throw Error(ErrorCode::IncoherentUnit,
                    "unit coherence fails for " + idx.morphism_name(s) + " at " +
                        spec.at[a]->object_name(x),
                    {idx.morphism_name(s), spec.at[a]->object_name(x)});
    }
  }
  // Associativity: the two ways of splitting on(r o t o s) agree.
  for (MorId s = 0; s < n_mor; ++s)
    for (ObjId c = 0; c < idx.num_objects(); ++c)
      for (MorId t : idx.hom(idx.cod(s), c))
        for (ObjId d = 0; d < idx.num_objects(); ++d)
          for (MorId r : idx.hom(c, d)) {
            const auto& vd = *spec.at[d];
            const MorId ts = idx.compose(t, s);
            const MorId rt = idx.compose(r, t);
            for (ObjId x = 0; x < spec.at[idx.dom(s)]->num_objects(); ++x) {
              const MorId lhs = vd.compose(spec.on[r].mor(p.comp_at(t, s, x)), p.comp_at(r, ts, x));
              const MorId rhs =
                  vd.compose(p.comp_at(r, t, spec.on[s].obj(x)), p.comp_at(rt, s, x));
              if (lhs != rhs)
                throw Error(ErrorCode::IncoherentAssoc,
                            "associativity coherence fails for (" + idx.morphism_name(r) + ", " +
                                idx.morphism_name(t) + ", " + idx.morphism_name(s) + ")",
                            {idx.morphism_name(r), idx.morphism_name(t), idx.morphism_name(s),
                             spec.at[idx.dom(s)]->object_name(x)});
            }
          }
  return p;
}

// ---------------------------------------------------------------------------

PseudoNatural validate_pseudonatural(const PseudoFunctor& from, const PseudoFunctor& to,
                                     PseudoNaturalSpec spec) {
  const auto& idx = *from.index();
  if (!same_category(from.index(), to.index()))
    throw Error(ErrorCode::IncompatibleCells, "pseudofunctors have different indices");
  if (static_cast<int>(spec.components.size()) != idx.num_objects())
    throw Error(ErrorCode::IncompatibleCells, "family components are not total");
  for (ObjId i = 0; i < idx.num_objects(); ++i)
    if (!same_category(spec.components[i].source(), from.at(i)) ||
        !same_category(spec.components[i].target(), to.at(i)))
      throw Error(ErrorCode::IncompatibleCells,
                  "family component at " + idx.object_name(i) + " has wrong endpoints");

  PseudoNatural u;
  u.components = spec.components;
  for (MorId s = 0; s < idx.num_morphisms(); ++s) {
    const FinFunctor lhs = compose(u.components[idx.cod(s)], from.on(s));
    const FinFunctor rhs = compose(to.on(s), u.components[idx.dom(s)]);
    const std::string what = "family cell at " + idx.morphism_name(s);
    auto given = spec.cells.find(s);
    auto comps = given != spec.cells.end()
                     ? given->second
                     : identity_components(lhs, rhs, ErrorCode::IncompatibleCells, what);
    try {
      u.cells.push_back(validate_nat(lhs, rhs, std::move(comps), true));
    } catch (const Error& e) {
      throw Error(ErrorCode::IncompatibleCells, what + ": " + e.what(), e.witness());
    }
  }

  for (ObjId i = 0; i < idx.num_objects(); ++i) {
    const auto& vi = *to.at(i);
    const FinFunctor& ui = u.components[i];
    for (ObjId x = 0; x < from.at(i)->num_objects(); ++x) {
      const MorId lhs = ui.mor(from.unit_at(i, x));
      const MorId rhs = vi.compose(to.unit_at(i, ui.obj(x)), u.cells[idx.id(i)].at(x));
      if (lhs != rhs)
        throw Error(ErrorCode::IncompatibleCells, "family fails unit compatibility at " + idx.object_name(i),
                    {idx.object_name(i), from.at(i)->object_name(x)});
    }
  }
  for (MorId s = 0; s < idx.num_morphisms(); ++s)
    for (ObjId c = 0; c < idx.num_objects(); ++c)
      for (MorId s2 : idx.hom(idx.cod(s), c)) {
        const ObjId i = idx.dom(s);
        const auto& vc = *to.at(c);
        const MorId whole = idx.compose(s2, s);
        for (ObjId x = 0; x < from.at(i)->num_objects(); ++x) {
          const ObjId ux = u.components[i].obj(x);
          const MorId lhs = vc.compose(to.comp_at(s2, s, ux), u.cells[whole].at(x));
          const MorId rhs = vc.compose(
              to.on(s2).mor(u.cells[s].at(x)),
              vc.compose(u.cells[s2].at(from.on(s).obj(x)),
                         u.components[c].mor(from.comp_at(s2, s, x))));
          if (lhs != rhs)
            throw Error(ErrorCode::IncompatibleCells,
                        "family fails composition compatibility at (" + idx.morphism_name(s2) +
                            ", " + idx.morphism_name(s) + ")",
                        {idx.morphism_name(s2), idx.morphism_name(s)});
        }
      }
  return u;
}

PseudoNatural identity_pseudonatural(const PseudoFunctor& b) {
  PseudoNaturalSpec spec;
  for (ObjId i = 0; i < b.index()->num_objects(); ++i) spec.components.push_back(identity_functor(b.at(i)));
  return validate_pseudonatural(b, b, std::move(spec));
}

PseudoNatural compose(const FinCategory& index, const PseudoNatural& v, const PseudoNatural& u) {
  PseudoNatural out;
  for (std::size_t i = 0; i < u.components.size(); ++i)
    out.components.push_back(compose(v.components[i], u.components[i]));
  // v_{i'} u_{i'} b(s) => v_{i'} b'(s) u_i => b''(s) v_i u_i
  for (MorId s = 0; s < index.num_morphisms(); ++s) {
    const auto& cu = u.cells[s];
    const auto& cv = v.cells[s];
    const FinFunctor& u_dom = u.components[index.dom(s)];
    out.cells.push_back(vertical(whisker(cv, u_dom), whisker(v.components[index.cod(s)], cu)));
  }
  return out;
}

// ---------------------------------------------------------------------------

ProductIndex product_index(const CatRef& left, const CatRef& right) {
  ProductIndex p;
  p.left = left;
  p.right = right;
  p.right_op = opposite(right);
  p.category = product_category(left, p.right_op);
  return p;
}

BiIndexedPseudoFunctor make_biindexed(const CatRef& left, const CatRef& right, PseudoFunctor a,
                                      bool require_filtered) {
  ProductIndex shape = product_index(left, right);
  if (!same_category(a.index(), shape.category))
    throw Error(ErrorCode::ShapeMismatch,
                "pseudofunctor is not indexed by " + left->name() + " x " + right->name() + "^op");
  FilteredWitness w = is_filtered(*left);
  if (require_filtered && !w.verdict)
    throw Error(ErrorCode::NotFiltered, left->name() + " is not filtered");
  return {std::move(shape), std::move(a), std::move(w)};
}

PseudoFunctor slice_at_left(const BiIndexedPseudoFunctor& a, ObjId i) {
  const auto& sh = a.shape;
  if (i < 0 || i >= sh.left->num_objects())
    throw Error(ErrorCode::UnknownObject, "no object " + std::to_string(i) + " in " + sh.left->name());
  const auto& j = *sh.right_op;
  const MorId id_i = sh.left->id(i);
  PseudoFunctorSpec spec;
  spec.index = sh.right_op;
  for (ObjId k = 0; k < j.num_objects(); ++k) spec.at.push_back(a.underlying.at(sh.object(i, k)));
  for (MorId t = 0; t < j.num_morphisms(); ++t) spec.on.push_back(a.underlying.on(sh.morphism(id_i, t)));
  for (ObjId k = 0; k < j.num_objects(); ++k)
    spec.unit[k] = a.underlying.unit(sh.object(i, k)).components();
  for (MorId t = 0; t < j.num_morphisms(); ++t)
    for (ObjId c = 0; c < j.num_objects(); ++c)
      for (MorId t2 : j.hom(j.cod(t), c))
        spec.comp[{t2, t}] = a.underlying.comp(sh.morphism(id_i, t2), sh.morphism(id_i, t)).components();
  return validate_pseudofunctor(std::move(spec));
}

PseudoFunctor slice_at_right(const BiIndexedPseudoFunctor& a, ObjId k) {
  const auto& sh = a.shape;
  if (k < 0 || k >= sh.right->num_objects())
    throw Error(ErrorCode::UnknownObject, "no object " + std::to_string(k) + " in " + sh.right->name());
  const auto& ic = *sh.left;
  const MorId id_k = sh.right->id(k);
  PseudoFunctorSpec spec;
  spec.index = sh.left;
  for (ObjId i = 0; i < ic.num_objects(); ++i) spec.at.push_back(a.underlying.at(sh.object(i, k)));
  for (MorId s = 0; s < ic.num_morphisms(); ++s) spec.on.push_back(a.underlying.on(sh.morphism(s, id_k)));
  for (ObjId i = 0; i < ic.num_objects(); ++i)
    spec.unit[i] = a.underlying.unit(sh.object(i, k)).components();
  for (MorId s = 0; s < ic.num_morphisms(); ++s)
    for (ObjId c = 0; c < ic.num_objects(); ++c)
      for (MorId s2 : ic.hom(ic.cod(s), c))
        spec.comp[{s2, s}] = a.underlying.comp(sh.morphism(s2, id_k), sh.morphism(s, id_k)).components();
  return validate_pseudofunctor(std::move(spec));
}

PseudoNatural along_left(const BiIndexedPseudoFunctor& a, const PseudoFunctor& from,
                         const PseudoFunctor& to, MorId s) {
  const auto& sh = a.shape;
  const auto& p = a.underlying;
  const auto& j = *sh.right_op;
  const ObjId i = sh.left->dom(s);
  const ObjId i2 = sh.left->cod(s);
  PseudoNaturalSpec spec;
  for (ObjId k = 0; k < j.num_objects(); ++k)
    spec.components.push_back(p.on(sh.morphism(s, j.id(k))));
  // a(s,id_b) a(id_i,t) <= a(s,t) => a(id_i',t) a(s,id_a)
  for (MorId t = 0; t < j.num_morphisms(); ++t) {
    const ObjId ka = j.dom(t);
    const ObjId kb = j.cod(t);
    const auto& target = *p.at(sh.object(i2, kb));
    std::vector<MorId> comps;
    for (ObjId x = 0; x < p.at(sh.object(i, ka))->num_objects(); ++x) {
      const MorId split_first = p.comp_inv_at(sh.morphism(s, j.id(kb)), sh.morphism(sh.left->id(i), t), x);
      const MorId split_second = p.comp_at(sh.morphism(sh.left->id(i2), t), sh.morphism(s, j.id(ka)), x);
      comps.push_back(target.compose(split_second, split_first));
    }
    spec.cells[t] = std::move(comps);
  }
  return validate_pseudonatural(from, to, std::move(spec));
}

PseudoNatural along_right(const BiIndexedPseudoFunctor& a, const PseudoFunctor& from,
                          const PseudoFunctor& to, MorId t) {
  const auto& sh = a.shape;
  const auto& p = a.underlying;
  const auto& ic = *sh.left;
  const ObjId ka = sh.right_op->dom(t);
  const ObjId kb = sh.right_op->cod(t);
  PseudoNaturalSpec spec;
  for (ObjId i = 0; i < ic.num_objects(); ++i)
    spec.components.push_back(p.on(sh.morphism(ic.id(i), t)));
  // a(id_i',t) a(s,id_a) <= a(s,t) => a(s,id_b) a(id_i,t)
  for (MorId s = 0; s < ic.num_morphisms(); ++s) {
    const ObjId i = ic.dom(s);
    const ObjId i2 = ic.cod(s);
    const auto& target = *p.at(sh.object(i2, kb));
    std::vector<MorId> comps;
    for (ObjId x = 0; x < p.at(sh.object(i, ka))->num_objects(); ++x) {
      const MorId split_first =
          p.comp_inv_at(sh.morphism(ic.id(i2), t), sh.morphism(s, sh.right_op->id(ka)), x);
      const MorId split_second =
          p.comp_at(sh.morphism(s, sh.right_op->id(kb)), sh.morphism(ic.id(i), t), x);
      comps.push_back(target.compose(split_second, split_first));
    }
    spec.cells[s] = std::move(comps);
  }
  return validate_pseudonatural(from, to, std::move(spec));
}

}  // namespace twocat
