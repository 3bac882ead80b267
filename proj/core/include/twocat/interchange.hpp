#pragma once

// The two composites of a pseudofunctor a : I x J^op -> Cat, the comparison
// functor Psi between them, and a constructive check that Psi is an
// equivalence of categories.

#include <optional>
#include <string>
#include <vector>

#include "twocat/bicolim.hpp"
#include "twocat/bilim.hpp"
#include "twocat/pseudo.hpp"

namespace twocat {

struct InterchangeOptions {
  /// Cleared by diagnostic runs over non-filtered I.
  bool require_filtered = true;
  std::size_t max_lim_objects = 250000;
};

/// 2colim_i 2lim_j a(i, j). Objects are triples (i, X, theta^X).
struct ColimOfLims {
  std::vector<TwoLimCategory> rows;  // per object of I
  std::optional<TwoColimCategory> colim;

  const TwoColimCategory& category() const { return *colim; }
  const LimObject& triple(ObjId o) const;  // X and theta of object o
};

/// 2lim_j 2colim_i a(i, j). Objects are pairs of families (i_j, X_j) and
/// classes [theta_t]. Hom sets are computed on demand.
struct LimOfColims {
  std::vector<TwoColimCategory> columns;  // per object of J
  std::optional<TwoLimCategory> lim;

  const TwoLimCategory& category() const { return *lim; }
};

ColimOfLims build_colim_of_lims(const BiIndexedPseudoFunctor& a, InterchangeOptions options = {});
LimOfColims build_lim_of_colims(const BiIndexedPseudoFunctor& a, InterchangeOptions options = {});

/// Psi built from the universal properties: per j the factorization of the
/// cocone sigma_i o pi_j, then the factorization of the resulting cone.
/// Throws InternalInvariant if it disagrees with psi_by_formula or is not
/// a functor.
LimValuedFunctor build_psi(const BiIndexedPseudoFunctor& a, const ColimOfLims& col,
                           const LimOfColims& loc);
/// (i, X, theta) |-> ((i, X_j), [theta_t]), class of a family |-> family of classes.
LimValuedFunctor psi_by_formula(const ColimOfLims& col, const LimOfColims& loc);

struct HomBijection {
  ObjId from = 0;
  ObjId to = 0;
  int source_size = 0;
  int target_size = 0;
  bool bijective = false;
  /// target position (in loc hom) -> source base morphism, when bijective
  std::vector<MorId> inverse;
  std::optional<std::string> witness;
};

struct FullyFaithfulReport {
  bool verdict = true;
  std::vector<HomBijection> pairs;
};

FullyFaithfulReport fully_faithful_report(const ColimOfLims& col, const LimOfColims& loc,
                                          const LimValuedFunctor& psi);

struct EssentialPreimage {
  int target = 0;  // object of the LimOfColims
  bool found = false;
  ObjId vertex = 0;           // k
  ObjId source = -1;          // object of the ColimOfLims
  Family iso;                 // target -> psi(source), componentwise isos
  int rounds = 0;             // vertex advancements
  std::optional<std::string> failure;
  std::string target_label;
  std::string source_label;  // empty unless found
};

/// Reconstructs a triple whose image under psi is isomorphic to `target`:
/// cocone over the i_j, push every [theta_t] to the vertex, equalize, and
/// read off the triple. Throws SearchExhausted when no equalizing morphism
/// exists within |Mor(I)| rounds.
EssentialPreimage essential_preimage(const BiIndexedPseudoFunctor& a, const ColimOfLims& col,
                                     const LimOfColims& loc, const LimValuedFunctor& psi,
                                     int target);

struct EquivalenceReport {
  bool filtered = true;
  std::optional<FilteredViolation> filtered_counterexample;
  int colim_of_lims_objects = 0;
  int colim_of_lims_morphisms = 0;
  int lim_of_colims_objects = 0;
  bool psi_functorial = false;
  bool psi_matches_formula = false;
  FullyFaithfulReport fully_faithful;
  bool essentially_surjective = false;
  std::vector<EssentialPreimage> preimages;
  bool verdict = false;
};

/// Runs the whole pipeline. With require_filtered cleared, a non-filtered
/// I is accepted and failures show up in the report instead of as errors.
EquivalenceReport check_equivalence(const BiIndexedPseudoFunctor& a, InterchangeOptions options = {});

}  // namespace twocat
