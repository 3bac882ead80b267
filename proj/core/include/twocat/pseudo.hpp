#pragma once

// Pseudofunctors from a finite index category into finite categories, with
// explicit unit and composition cells, pseudonatural families between them,
// and the slicing of pseudofunctors indexed by a product I x J^op.

#include <map>
#include <utility>
#include <vector>

#include "twocat/fincat.hpp"

namespace twocat {

/// Raw pseudofunctor data. Omitted cells mean identity cells, which is only
/// accepted where the functors already agree on the nose.
struct PseudoFunctorSpec {
  CatRef index;
  std::vector<CatRef> at;
  std::vector<FinFunctor> on;
  /// unit[i][x] : on(id_i)(x) -> x
  std::map<ObjId, std::vector<MorId>> unit;
  /// comp[{t, s}][x] : on(t o s)(x) -> on(t)(on(s)(x))
  std::map<std::pair<MorId, MorId>, std::vector<MorId>> comp;
};

class PseudoFunctor {
 public:
  const CatRef& index() const noexcept { return index_; }
  const CatRef& at(ObjId i) const { return at_[i]; }
  const FinFunctor& on(MorId m) const { return on_[m]; }

  /// on(id_i) => Id
  const NatTransformation& unit(ObjId i) const { return unit_[i]; }
  /// on(t o s) => on(t) o on(s)
  const NatTransformation& comp(MorId t, MorId s) const;

  MorId unit_at(ObjId i, ObjId x) const { return unit_[i].at(x); }
  MorId unit_inv_at(ObjId i, ObjId x) const;
  MorId comp_at(MorId t, MorId s, ObjId x) const { return comp(t, s).at(x); }
  MorId comp_inv_at(MorId t, MorId s, ObjId x) const;

  /// True when every cell is an identity.
  bool is_strict() const noexcept { return strict_; }

 private:
  friend PseudoFunctor validate_pseudofunctor(PseudoFunctorSpec spec);
  PseudoFunctor() = default;

  CatRef index_;
  std::vector<CatRef> at_;
  std::vector<FinFunctor> on_;
  std::vector<NatTransformation> unit_;
  std::vector<NatTransformation> comp_;
  std::vector<int> comp_slot_;  // |Mor|^2 -> index into comp_
  bool strict_ = true;
};

/// Checks endpoints, invertibility of every cell (NotIsoCell), naturality
/// of the cells, and the unit (IncoherentUnit) and associativity
/// (IncoherentAssoc) coherence laws pointwise on every object.
PseudoFunctor validate_pseudofunctor(PseudoFunctorSpec spec);

/// Data of a pseudonatural transformation u : from => to.
struct PseudoNatural {
  std::vector<FinFunctor> components;  // per index object
  /// per index morphism s : i -> i',  u_{i'} o from(s) => to(s) o u_i
  std::vector<NatTransformation> cells;
};

struct PseudoNaturalSpec {
  std::vector<FinFunctor> components;
  std::map<MorId, std::vector<MorId>> cells;  // omitted = identity
};

/// Throws IncompatibleCells when a cell is malformed or the unit or
/// composition compatibility fails.
PseudoNatural validate_pseudonatural(const PseudoFunctor& from, const PseudoFunctor& to,
                                     PseudoNaturalSpec spec);
PseudoNatural identity_pseudonatural(const PseudoFunctor& b);
/// v after u.
PseudoNatural compose(const FinCategory& index, const PseudoNatural& v, const PseudoNatural& u);

// ---------------------------------------------------------------------------

/// The index I x J^op. Object (i,j) and morphism (s,t) use the ids of
/// product_category(I, opposite(J)); t is a morphism of J read backwards.
struct ProductIndex {
  CatRef left;
  CatRef right;
  CatRef right_op;
  CatRef category;

  ObjId object(ObjId i, ObjId j) const { return i * right->num_objects() + j; }
  MorId morphism(MorId s, MorId t) const { return s * right->num_morphisms() + t; }
  std::pair<ObjId, ObjId> split_object(ObjId o) const {
    return {o / right->num_objects(), o % right->num_objects()};
  }
  std::pair<MorId, MorId> split_morphism(MorId m) const {
    return {m / right->num_morphisms(), m % right->num_morphisms()};
  }
};

ProductIndex product_index(const CatRef& left, const CatRef& right);

struct BiIndexedPseudoFunctor {
  ProductIndex shape;
  PseudoFunctor underlying;
  FilteredWitness filtered;  // of shape.left
};

/// Throws ShapeMismatch when `a` is not indexed by I x J^op and NotFiltered
/// when I is not filtered and `require_filtered` is set.
BiIndexedPseudoFunctor make_biindexed(const CatRef& left, const CatRef& right, PseudoFunctor a,
                                      bool require_filtered = true);

/// a(i, .) as a pseudofunctor on J^op.
PseudoFunctor slice_at_left(const BiIndexedPseudoFunctor& a, ObjId i);
/// a(., j) as a pseudofunctor on I.
PseudoFunctor slice_at_right(const BiIndexedPseudoFunctor& a, ObjId j);

/// a(s, .) : a(i, .) => a(i', .) for s : i -> i'.
PseudoNatural along_left(const BiIndexedPseudoFunctor& a, const PseudoFunctor& from,
                         const PseudoFunctor& to, MorId s);
/// a(., t) : a(., j) => a(., j') for t : j -> j' in J^op.
PseudoNatural along_right(const BiIndexedPseudoFunctor& a, const PseudoFunctor& from,
                          const PseudoFunctor& to, MorId t);

}  // namespace twocat
