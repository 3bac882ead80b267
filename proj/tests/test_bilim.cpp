#include "doctest.h"

#include "checks.hpp"
#include "support.hpp"
#include "twocat/catml.hpp"
#include "twocat/fuzz.hpp"
#include "twocat/shapes.hpp"

using namespace twocat;
using namespace twocat::test;

namespace {

std::string data(const char* file) { return std::string(TWOCAT_DATA_DIR) + "/" + file; }

}  // namespace

TEST_CASE("2-limit over the point is the value") {
  auto one = terminal_category("One");
  for (const auto& v : shapes::value_library()) {
    CAPTURE(v->name());
    CHECK_FALSE(check::lim_over_point(v, constant(one, v)));
  }
}

TEST_CASE("objects and homs against exhaustive enumeration") {
  int built = 0;
  for (int n = 0; n < 24; ++n) {
    const FuzzCase fc = generate_case(13, n);
    CAPTURE(fc.description);
    for (ObjId x = 0; x < fc.a.shape.left->num_objects(); ++x) {
      const TwoLimCategory l = build_2lim(slice_at_left(fc.a, x));
      CHECK_FALSE(check::lim_against_oracle(l, 64));
      ++built;
    }
    const PseudoFunctor q = perturb(fc.a.underlying, n);
    const BiIndexedPseudoFunctor qa = make_biindexed(fc.a.shape.left, fc.a.shape.right, q);
    CHECK_FALSE(check::lim_against_oracle(build_2lim(slice_at_left(qa, 0)), 64));
  }
  CHECK(built > 24);

  const Workspace w = parse_catml_files({data("twisted.catml")});
  const TwoLimCategory t = build_2lim(w.pseudofunctor("T").value);
  CHECK_FALSE(check::lim_against_oracle(t));
  for (int o = 0; o < t.num_objects(); ++o) CHECK_FALSE(check_object_conditions(t.system(), t.object(o)));
}

TEST_CASE("object conditions") {
  const Workspace w = parse_catml_files({data("twisted.catml")});
  const PseudoFunctor& t = w.pseudofunctor("T").value;
  auto z2 = w.category("Z2");
  const MorId g = *z2->find_morphism("g");
  const auto& idx = *t.index();
  LimObject x{{0, 0}, std::vector<MorId>(idx.num_morphisms(), z2->id(0))};
  // the unit of T forces theta at id_0 to be g
  CHECK(check_object_conditions(t, x));
  x.theta[idx.id(0)] = g;
  CHECK(check_object_conditions(t, x).has_value() == !oracle::lim_objects(t).contains(x));
}

TEST_CASE("strong factorization of cones") {
  const Workspace w = parse_catml_files({data("twisted.catml")});
  const ConeEntry& q = w.cone("Q");
  const TwoLimCategory l = build_2lim(w.pseudofunctor("T").value);
  const check::FactorResult f = check::lim_factorization(l, q.value);
  CHECK_FALSE(f.failure);
  CHECK(f.uniqueness_checked);
  CHECK(oracle::functorial(as_functor(l, strong_factor_lim(l, q.value))));

  for (int n = 0; n < 8; ++n) {
    const FuzzCase fc = generate_case(21, n);
    const PseudoFunctor row = slice_at_left(fc.a, 0);
    const TwoLimCategory lr = build_2lim(row);
    // the projections form a cone that factors through the identity
    PseudoCone proj;
    proj.source = lr.base();
    for (ObjId k = 0; k < row.index()->num_objects(); ++k) proj.legs.push_back(lr.projection(k));
    for (MorId m = 0; m < row.index()->num_morphisms(); ++m) proj.cells.push_back(lr.cell(m));
    CHECK_FALSE(check::lim_factorization(lr, proj, 50).failure);
    CHECK(oracle::same_functor(as_functor(lr, strong_factor_lim(lr, proj)), identity_functor(lr.base())));
    CHECK(oracle::same_functor(induced_functor_lim(lr, lr, identity_pseudonatural(row)),
                               identity_functor(lr.base())));
  }
}

TEST_CASE("invalid cones are rejected") {
  const Workspace w = parse_catml_files({data("twisted.catml")});
  const PseudoFunctor& t = w.pseudofunctor("T").value;
  auto z2 = w.category("Z2");
  const auto id = identity_functor(z2);
  try {
    validate_cone(t, z2, {id, id});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotACone);
  }
}

TEST_CASE("search bound") {
  auto two = arrow_cat();
  const PseudoFunctor b = constant(two, iso_cat());
  CHECK(build_2lim(b, {.max_objects = 100}).num_objects() == 4);
  try {
    build_2lim(b, {.max_objects = 2});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SearchExhausted);
  }
  const TwoLimCategory lazy = build_2lim(b, {.materialize = false});
  CHECK_FALSE(lazy.materialized());
  CHECK(lazy.hom(0, 1).size() == 1);
  CHECK_THROWS_AS(lazy.base(), Error);
}
