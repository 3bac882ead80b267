#include "doctest.h"

#include <algorithm>

#include "checks.hpp"
#include "support.hpp"
#include "twocat/catml.hpp"
#include "twocat/fuzz.hpp"
#include "twocat/shapes.hpp"

using namespace twocat;
using namespace twocat::test;

namespace {

std::string data(const char* file) { return std::string(TWOCAT_DATA_DIR) + "/" + file; }

void check_instance(const BiIndexedPseudoFunctor& a, int* rounds) {
  const EquivalenceReport r = check_equivalence(a);
  CHECK(r.filtered);
  CHECK(r.psi_functorial);
  CHECK(r.psi_matches_formula);
  CHECK(r.fully_faithful.verdict);
  CHECK(r.essentially_surjective);
  CHECK(r.verdict);
  const ColimOfLims col = build_colim_of_lims(a);
  const LimOfColims loc = build_lim_of_colims(a);
  const LimValuedFunctor psi = build_psi(a, col, loc);
  CHECK(r.colim_of_lims_objects == col.category().num_objects());
  CHECK(r.lim_of_colims_objects == loc.category().num_objects());
  CHECK_FALSE(check::psi_homs(col, loc, psi));
  CHECK_FALSE(check::preimages(a, col, loc, psi, rounds));
}

}  // namespace

TEST_CASE("the bundled 2x2 instance") {
  const Workspace w = parse_catml_files({data("interchange_2x2.catml")});
  const auto& p = w.pseudofunctor("A");
  REQUIRE(p.biindexed);
  const EquivalenceReport r = check_equivalence(*p.biindexed);
  CHECK(r.verdict);
  CHECK(r.colim_of_lims_objects == 8);
  CHECK(r.colim_of_lims_morphisms == 64);
  CHECK(r.lim_of_colims_objects == 16);
  int rounds = 0;
  check_instance(*p.biindexed, &rounds);
}

TEST_CASE("generated instances are equivalences") {
  int rounds = 0;
  for (int n = 0; n < 56; ++n) {
    const FuzzCase fc = generate_case(17, n);
    CAPTURE(fc.description);
    check_instance(fc.a, &rounds);
  }
}

TEST_CASE("perturbed instances are equivalences") {
  for (int n = 0; n < 24; ++n) {
    const FuzzCase fc = generate_case(19, n);
    const PseudoFunctor q = perturb(fc.a.underlying, 1000 + n);
    CAPTURE(fc.description);
    int rounds = 0;
    check_instance(make_biindexed(fc.a.shape.left, fc.a.shape.right, q), &rounds);
  }
}

TEST_CASE("preimages that need equalization") {
  // I has an equalizing endomorphism; the summand at p = 0 twisted by the
  // swap makes the theta classes disagree until pushed along e
  auto eq = shapes::equalizing();
  int rounds = 0;
  for (const auto& j : shapes::finite_library()) {
    for (ObjId p = 0; p < eq->num_objects(); ++p)
      for (ObjId q = 0; q < j->num_objects(); ++q) {
        const PseudoFunctor s = sum_of_representables(eq, j, {{p, q, iso_cat(), true}, {std::nullopt, q, z2_cat()}});
        check_instance(make_biindexed(eq, j, s), &rounds);
      }
  }
  CHECK(rounds > 0);
}

TEST_CASE("psi from the universal property matches the formula") {
  for (int n = 0; n < 12; ++n) {
    const FuzzCase fc = generate_case(23, n);
    const ColimOfLims col = build_colim_of_lims(fc.a);
    const LimOfColims loc = build_lim_of_colims(fc.a);
    const LimValuedFunctor u = build_psi(fc.a, col, loc);
    const LimValuedFunctor f = psi_by_formula(col, loc);
    CHECK(u.objects == f.objects);
    CHECK(u.morphisms == f.morphisms);
  }
}

TEST_CASE("non-filtered diagnostic") {
  const Workspace w = parse_catml_files({data("non_filtered.catml")});
  const auto& d = w.pseudofunctor("D");
  REQUIRE(d.biindexed);
  try {
    check_equivalence(*d.biindexed);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFiltered);
  }
  const EquivalenceReport r = check_equivalence(*d.biindexed, {.require_filtered = false});
  CHECK_FALSE(r.filtered);
  CHECK(r.filtered_counterexample);
  CHECK_FALSE(r.verdict);
  CHECK_FALSE(r.fully_faithful.verdict);
  const auto bad = std::find_if(r.fully_faithful.pairs.begin(), r.fully_faithful.pairs.end(),
                                [](const HomBijection& h) { return !h.bijective; });
  REQUIRE(bad != r.fully_faithful.pairs.end());
  CHECK(bad->witness);
  CHECK(bad->source_size != bad->target_size);
}
