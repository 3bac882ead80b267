#pragma once

// Finite categories given by explicit composition tables, functors and
// natural transformations between them, and the filteredness machinery
// (decision procedure, cospan categories, cocone/equalizer search).

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "twocat/error.hpp"

namespace twocat {

using ObjId = int;
using MorId = int;

struct Morphism {
  std::string name;
  ObjId dom = 0;
  ObjId cod = 0;
};

class FinCategory;
using CatRef = std::shared_ptr<const FinCategory>;

/// A finite category with a total composition table. Instances are only
/// produced by CategoryBuilder::build(), which checks every law
/// exhaustively, so a FinCategory in hand is always lawful.
class FinCategory {
 public:
  const std::string& name() const noexcept { return name_; }
  int num_objects() const noexcept { return static_cast<int>(objects_.size()); }
  int num_morphisms() const noexcept { return static_cast<int>(morphisms_.size()); }

  const std::string& object_name(ObjId o) const { return objects_.at(o); }
  const Morphism& morphism(MorId m) const { return morphisms_.at(m); }
  const std::string& morphism_name(MorId m) const { return morphisms_.at(m).name; }
  ObjId dom(MorId m) const { return morphisms_[m].dom; }
  ObjId cod(MorId m) const { return morphisms_[m].cod; }

  MorId id(ObjId o) const { return identities_[o]; }
  bool is_identity(MorId m) const { return identities_[dom(m)] == m; }

  bool composable(MorId g, MorId f) const { return cod(f) == dom(g); }
  /// g after f; requires cod(f) == dom(g).
  MorId compose(MorId g, MorId f) const;

  /// Morphisms a -> b in declaration order.
  const std::vector<MorId>& hom(ObjId a, ObjId b) const {
    return homs_[static_cast<std::size_t>(a) * objects_.size() + b];
  }
  /// Index of m inside hom(dom m, cod m).
  int position_in_hom(MorId m) const { return hom_position_[m]; }

  std::optional<MorId> inverse(MorId m) const {
    if (inverses_[m] < 0) return std::nullopt;
    return inverses_[m];
  }
  bool is_iso(MorId m) const { return inverses_[m] >= 0; }

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;

  /// Structural equality: same names, endpoints, identities and table.
  bool operator==(const FinCategory& other) const;

 private:
  friend class CategoryBuilder;
  FinCategory() = default;

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identities_;
  std::vector<MorId> table_;  // num_morphisms^2, -1 where not composable
  std::vector<std::vector<MorId>> homs_;
  std::vector<int> hom_position_;
  std::vector<MorId> inverses_;
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, MorId> morphism_index_;
};

/// Accumulates objects, morphisms and composites, then validates.
/// Composites with an identity are filled in automatically unless given.
class CategoryBuilder {
 public:
  explicit CategoryBuilder(std::string name);

  ObjId add_object(std::string name);
  MorId add_morphism(std::string name, ObjId dom, ObjId cod);
  /// Adds a morphism named `name` (default "id_<object>") and marks it as
  /// the identity of `o`.
  MorId add_identity(ObjId o, std::string name = {});
  void set_identity(ObjId o, MorId m);
  void set_compose(MorId g, MorId f, MorId h);

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }

  /// Throws Error with MissingComposite, NonAssociative, UnitLaw,
  /// BadEndpoints or DuplicateIdentifier.
  CatRef build() &&;

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identities_;
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, MorId> morphism_index_;
  std::vector<std::tuple<MorId, MorId, MorId>> composites_;
};

/// Name-based description of a category, as written in a .catml file.
/// Identities are implicit and named "id_<object>".
struct RawCategory {
  struct Arrow {
    std::string name, dom, cod;
  };
  struct Composite {
    std::string g, f, h;  // g after f is h
  };
  std::string name;
  std::vector<std::string> objects;
  std::vector<Arrow> morphisms;
  std::vector<Composite> composites;
};

CatRef validate_category(const RawCategory& raw);

/// The opposite category. Object and morphism ids and names are shared with
/// the original; endpoints and composition order are swapped.
CatRef opposite(const CatRef& c);

/// Plain product A x B with componentwise composition. Object (a,b) has id
/// a * |Ob B| + b; morphism (f,g) has id f * |Mor B| + g.
CatRef product_category(const CatRef& a, const CatRef& b);

CatRef terminal_category(std::string name = "1");
CatRef discrete_category(std::string name, const std::vector<std::string>& objects);

class FinFunctor {
 public:
  /// Unchecked; use validate_functor for untrusted maps.
  FinFunctor(CatRef source, CatRef target, std::vector<ObjId> objects,
             std::vector<MorId> morphisms);

  const CatRef& source() const noexcept { return source_; }
  const CatRef& target() const noexcept { return target_; }
  ObjId obj(ObjId o) const { return objects_[o]; }
  MorId mor(MorId m) const { return morphisms_[m]; }
  const std::vector<ObjId>& object_map() const noexcept { return objects_; }
  const std::vector<MorId>& morphism_map() const noexcept { return morphisms_; }

  bool operator==(const FinFunctor& other) const;

 private:
  CatRef source_;
  CatRef target_;
  std::vector<ObjId> objects_;
  std::vector<MorId> morphisms_;
};

bool same_category(const CatRef& a, const CatRef& b);

FinFunctor validate_functor(CatRef source, CatRef target, std::vector<ObjId> objects,
                            std::vector<MorId> morphisms);
FinFunctor identity_functor(const CatRef& c);
FinFunctor constant_functor(const CatRef& source, const CatRef& target, ObjId value);
/// g after f.
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);

class NatTransformation {
 public:
  /// Unchecked; use validate_nat for untrusted components.
  NatTransformation(FinFunctor source, FinFunctor target, std::vector<MorId> components);

  const FinFunctor& source() const noexcept { return source_; }
  const FinFunctor& target() const noexcept { return target_; }
  MorId at(ObjId o) const { return components_[o]; }
  const std::vector<MorId>& components() const noexcept { return components_; }
  bool is_iso() const;

 private:
  FinFunctor source_;
  FinFunctor target_;
  std::vector<MorId> components_;
};

/// Throws NotNatural (with the offending morphism), BadEndpoints, or NotIso
/// when `require_iso` is set and some component is not invertible.
NatTransformation validate_nat(FinFunctor source, FinFunctor target,
                               std::vector<MorId> components, bool require_iso = false);
NatTransformation identity_nat(const FinFunctor& f);
/// beta after alpha.
NatTransformation vertical(const NatTransformation& beta, const NatTransformation& alpha);
/// h . alpha, components h(alpha_x).
NatTransformation whisker(const FinFunctor& h, const NatTransformation& alpha);
/// alpha . k, components alpha_{k(x)}.
NatTransformation whisker(const NatTransformation& alpha, const FinFunctor& k);
NatTransformation inverse(const NatTransformation& alpha);

// ---------------------------------------------------------------------------
// Filteredness

enum class FilteredCondition { NonEmpty, Cospan, Equalize };

const char* to_string(FilteredCondition c) noexcept;

struct FilteredViolation {
  FilteredCondition condition;
  std::vector<ObjId> objects;    // (ii): the two objects
  std::vector<MorId> morphisms;  // (iii): the parallel pair
};

struct FilteredWitness {
  bool verdict = false;
  std::optional<FilteredViolation> counterexample;
};

/// Exhaustive decision of the three filteredness conditions; the first
/// violation found in declaration order is reported.
FilteredWitness is_filtered(const FinCategory& c);

/// True iff `v` describes a genuine violation in `c`.
bool replays(const FinCategory& c, const FilteredViolation& v);

struct CospanObject {
  ObjId apex;
  MorId left;   // i -> apex
  MorId right;  // i' -> apex
};

/// The category of cospans i -> apex <- i' with commuting-triangle maps.
struct CospanCategory {
  CatRef category;
  ObjId left_end = 0;
  ObjId right_end = 0;
  std::vector<CospanObject> objects;
  std::vector<MorId> labels;  // per morphism, the underlying morphism of I
  /// False when the result is empty or I is not filtered, so the
  /// filteredness post-check did not apply.
  bool filtered_checked = false;

  std::optional<int> find(ObjId apex, MorId left, MorId right) const;
  /// The morphism from -> to labelled t, if any.
  std::optional<MorId> morphism(int from, int to, MorId t) const;
};

CospanCategory cospan_category(const CatRef& index, ObjId i, ObjId i2);

/// Requires leg[first_tip] o first == leg[second_tip] o second, where
/// `first` and `second` share their domain and land in the given tips.
struct EqualizeConstraint {
  std::size_t first_tip;
  MorId first;
  std::size_t second_tip;
  MorId second;
};

struct Cocone {
  ObjId vertex = 0;
  std::vector<MorId> legs;
  int rounds = 0;  // equalization rounds used
};

/// Builds a cocone over `tips` pairwise (condition (ii)), then post-composes
/// with equalizing morphisms (condition (iii)) until every constraint holds.
/// Searches run in declaration order, so the answer is deterministic.
/// Throws NotFiltered if `witness` says the index is not filtered and
/// SearchExhausted if a search fails anyway.
Cocone cocone_and_equalize(const FinCategory& index, const FilteredWitness& witness,
                           std::span<const ObjId> tips,
                           std::span<const EqualizeConstraint> constraints);

/// Same search without the filteredness precondition; used by diagnostic
/// constructions over non-filtered indices.
Cocone cocone_and_equalize_unchecked(const FinCategory& index, std::span<const ObjId> tips,
                                     std::span<const EqualizeConstraint> constraints);

/// Isomorphism D -> C matching objects and non-identity morphisms by name;
/// nullopt when names or structure disagree.
std::optional<FinFunctor> isomorphism_by_names(const CatRef& from, const CatRef& to);

}  // namespace twocat
