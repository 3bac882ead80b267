#pragma once

// Filtered 2-colimits of pseudofunctors into finite categories.
//
// Objects are pairs (i, x) with x an object of b(i). The morphisms
// (i, x) -> (i', y) are the classes of the set-valued colimit, over the
// cospan category I_{i,i'}, of  (apex, s, s') |-> Hom(b(s)x, b(s')y),  with
// transition maps h |-> comp(t,s')^-1 o b(t)(h) o comp(t,s).

#include <map>
#include <vector>

#include "twocat/fincat.hpp"
#include "twocat/pseudo.hpp"
#include "twocat/setdiag.hpp"

namespace twocat {

struct ColimObject {
  ObjId index;
  ObjId value;
};

/// A representative of a hom class: a morphism of b(apex) sitting at one
/// object of the cospan category.
struct ColimRep {
  int cospan_object;
  MorId morphism;
  bool operator==(const ColimRep&) const = default;
};

struct ColimOptions {
  /// Refuse non-filtered indices (NotFiltered). Diagnostic runs clear this
  /// and accept SearchExhausted if a composite genuinely cannot be formed.
  bool require_filtered = true;
};

class TwoColimCategory {
 public:
  const PseudoFunctor& system() const noexcept { return system_; }
  const FilteredWitness& filtered() const noexcept { return filtered_; }
  const CatRef& base() const noexcept { return base_; }

  int num_objects() const noexcept { return static_cast<int>(objects_.size()); }
  const ColimObject& object(ObjId o) const { return objects_[o]; }
  ObjId object_of(ObjId i, ObjId x) const { return object_offset_[i] + x; }

  const CospanCategory& cospan(ObjId i, ObjId i2) const;
  const SetDiagram& hom_diagram(ObjId a, ObjId b) const { return hom(a, b).diagram; }
  const ColimSet& hom_classes(ObjId a, ObjId b) const { return hom(a, b).classes; }

  MorId morphism_of(ObjId a, ObjId b, int cls) const { return hom(a, b).first_morphism + cls; }
  /// Class index of a base morphism inside hom_classes(dom, cod).
  int class_of(MorId m) const { return morphism_class_[m]; }
  ColimRep representative(MorId m) const;
  ColimRep as_rep(ObjId a, ObjId b, SetElement e) const;

  const FinFunctor& injection(ObjId i) const { return injections_[i]; }
  /// theta_s : sigma_i => sigma_{i'} o b(s)
  const NatTransformation& cell(MorId s) const { return cells_[s]; }

  /// Moves h : b(s)x -> b(s2)y in b(apex) along v : apex -> m, giving a
  /// morphism b(v o s)x -> b(v o s2)y of b(m).
  MorId transport(MorId v, MorId s, MorId s2, ObjId x, ObjId y, MorId h) const;

  /// Composes two representatives without consulting the table; returns the
  /// class in hom_classes(a, c).
  int compose_reps(ObjId a, ObjId b, ObjId c, ColimRep g, ColimRep f) const;

 private:
  friend TwoColimCategory build_2colim(PseudoFunctor b, ColimOptions options);

  struct Hom {
    SetDiagram diagram;
    ColimSet classes;
    MorId first_morphism = 0;
  };
  const Hom& hom(ObjId a, ObjId b) const {
    return homs_[static_cast<std::size_t>(a) * objects_.size() + b];
  }
  explicit TwoColimCategory(PseudoFunctor b) : system_(std::move(b)) {}

  PseudoFunctor system_;
  FilteredWitness filtered_;
  bool checked_search_ = true;
  std::vector<ColimObject> objects_;
  std::vector<ObjId> object_offset_;
  std::vector<CospanCategory> cospans_;
  std::vector<Hom> homs_;
  std::vector<int> morphism_class_;
  CatRef base_;
  std::vector<FinFunctor> injections_;
  std::vector<NatTransformation> cells_;
};

TwoColimCategory build_2colim(PseudoFunctor b, ColimOptions options = {});

/// Class of a representative in hom((a), (b)); BadRepresentative if the
/// morphism does not live at that cospan object.
int colim_hom_class(const TwoColimCategory& colim, ObjId a, ObjId b, ColimRep rep);

/// g o f computed from canonical representatives, as a base morphism.
MorId compose_in_colim(const TwoColimCategory& colim, MorId g, MorId f);

/// A pseudonatural cocone rho : b => const(target).
struct PseudoCocone {
  CatRef target;
  std::vector<FinFunctor> legs;          // rho_i : b(i) -> target
  std::vector<NatTransformation> cells;  // per s : i -> i',  rho_i => rho_{i'} o b(s)
};

/// Omitted cells are identities. Throws NotACocone.
PseudoCocone validate_cocone(const PseudoFunctor& b, CatRef target, std::vector<FinFunctor> legs,
                             std::map<MorId, std::vector<MorId>> cells = {});
PseudoCocone injection_cocone(const TwoColimCategory& colim);

struct LaxFactorization {
  FinFunctor functor;
  std::vector<NatTransformation> comparison;  // phi_i : rho_i => F o sigma_i
};

/// The strict factorization F with F o sigma_i = rho_i on the nose.
/// NonWellDefined if two representatives of a class disagree.
LaxFactorization strong_factor_colim(const TwoColimCategory& colim, const PseudoCocone& rho);

/// Checks (F . theta_s) o phi_i = (phi_{i'} . b(s)) o theta^rho_s for all s.
bool is_lax_factorization(const TwoColimCategory& colim, const PseudoCocone& rho,
                          const LaxFactorization& f);

/// The unique Lambda : F => G with phi^G_i o lambda_i = (Lambda . sigma_i) o phi^F_i,
/// for a modification lambda : rho => rho'. IncompatibleCells if lambda is
/// not a modification.
NatTransformation factor_modification(const TwoColimCategory& colim, const PseudoCocone& rho,
                                      const LaxFactorization& f, const PseudoCocone& rho2,
                                      const LaxFactorization& g,
                                      const std::vector<NatTransformation>& lambda);

/// Functor between 2-colimits over the same index induced by u : b => b'.
FinFunctor induced_functor_colim(const TwoColimCategory& from, const TwoColimCategory& to,
                                 const PseudoNatural& u);

}  // namespace twocat
