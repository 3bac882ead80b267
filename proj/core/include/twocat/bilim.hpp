#pragma once

// 2-limits of pseudofunctors c : K -> Cat with finite values.
//
// An object is a family X_k in c(k) together with isomorphisms
// theta_m : X_b -> c(m) X_a for every m : a -> b, subject to
//   unit_b(X_b) o theta_{id_b} = id
//   c(m2)(theta_{m1}) o theta_{m2} = comp(m2, m1)(X_a) o theta_{m2 o m1}.
// A morphism is a family h_k : X_k -> Y_k with
//   c(m)(h_a) o theta^X_m = theta^Y_m o h_b.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twocat/fincat.hpp"
#include "twocat/pseudo.hpp"
#include "twocat/setdiag.hpp"

namespace twocat {

struct LimObject {
  std::vector<ObjId> x;      // per object of K
  std::vector<MorId> theta;  // per morphism of K
  auto operator<=>(const LimObject&) const = default;
};

struct LimOptions {
  /// Build the underlying FinCategory with every hom set. Large limits
  /// can be left lazy; homs are then computed on demand.
  bool materialize = true;
  /// SearchExhausted past this many objects.
  std::size_t max_objects = 250000;
};

using Family = std::vector<MorId>;

class TwoLimCategory {
 public:
  const PseudoFunctor& system() const noexcept { return system_; }
  int num_objects() const noexcept { return static_cast<int>(objects_.size()); }
  const LimObject& object(int o) const { return objects_[o]; }
  std::optional<int> find(const LimObject& x) const;
  std::string object_label(int o) const;

  /// The K-indexed set diagram whose limit is hom(a, b).
  SetDiagram hom_diagram(int a, int b) const;
  const LimSet& hom(int a, int b) const;
  bool is_morphism(int a, int b, const Family& h) const;
  Family identity(int a) const;
  /// g after f, componentwise.
  Family compose(const Family& g, const Family& f) const;

  bool materialized() const noexcept { return base_ != nullptr; }
  /// Throws InternalInvariant when the limit was left lazy.
  const CatRef& base() const;
  MorId morphism_of(int a, int b, int family_index) const;
  std::optional<MorId> morphism_of(int a, int b, const Family& h) const;
  const Family& family_of(MorId m) const;

  const FinFunctor& projection(ObjId k) const;
  /// theta_m : pi_b => c(m) o pi_a
  const NatTransformation& cell(MorId m) const;

 private:
  friend TwoLimCategory build_2lim(PseudoFunctor c, LimOptions options);
  explicit TwoLimCategory(PseudoFunctor c) : system_(std::move(c)) {}

  PseudoFunctor system_;
  std::vector<LimObject> objects_;
  std::map<LimObject, int> index_;
  mutable std::map<std::pair<int, int>, LimSet> homs_;
  CatRef base_;
  std::vector<MorId> first_morphism_;  // per (a, b) when materialized
  std::vector<Family> families_;       // per base morphism
  std::vector<FinFunctor> projections_;
  std::vector<NatTransformation> cells_;
};

TwoLimCategory build_2lim(PseudoFunctor c, LimOptions options = {});

/// Describes the first violated object condition, or nullopt if `x` is an
/// object of the 2-limit.
std::optional<std::string> check_object_conditions(const PseudoFunctor& c, const LimObject& x);

/// A pseudonatural cone: legs_k : source -> c(k), and for m : a -> b
/// cells_m : legs_b => c(m) o legs_a.
struct PseudoCone {
  CatRef source;
  std::vector<FinFunctor> legs;
  std::vector<NatTransformation> cells;
};

/// Omitted cells are identities. Throws NotACone.
PseudoCone validate_cone(const PseudoFunctor& c, CatRef source, std::vector<FinFunctor> legs,
                         std::map<MorId, std::vector<MorId>> cells = {});

/// A functor into a 2-limit, given by object indices and morphism families
/// so that it also makes sense for lazy limits.
struct LimValuedFunctor {
  CatRef source;
  std::vector<int> objects;
  std::vector<Family> morphisms;
};

/// The functor F with pi_k o F = legs_k and theta . F = cells on the nose.
LimValuedFunctor strong_factor_lim(const TwoLimCategory& lim, const PseudoCone& cone);

/// Checks that identities and composites are preserved componentwise.
bool is_functorial(const TwoLimCategory& lim, const LimValuedFunctor& f);

/// Requires a materialized limit.
FinFunctor as_functor(const TwoLimCategory& lim, const LimValuedFunctor& f);

/// Functor between materialized 2-limits over the same index induced by
/// u : c => c'.
FinFunctor induced_functor_lim(const TwoLimCategory& from, const TwoLimCategory& to,
                               const PseudoNatural& u);

}  // namespace twocat
