#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "twocat/shapes.hpp"

using namespace twocat;
using namespace twocat::test;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::InternalInvariant;
}

std::vector<CatRef> all_shapes() {
  std::vector<CatRef> out;
  for (auto v : {shapes::filtered_library(), shapes::finite_library(), shapes::non_filtered_library(),
                 shapes::value_library()})
    out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace

TEST_CASE("composition table") {
  auto c = cat("C", {"a", "b", "c"}, {{"f", "a", "b"}, {"g", "b", "c"}, {"h", "a", "c"}}, {{"g", "f", "h"}});
  CHECK(c->num_objects() == 3);
  CHECK(c->num_morphisms() == 6);
  const MorId f = *c->find_morphism("f"), g = *c->find_morphism("g"), h = *c->find_morphism("h");
  CHECK(c->compose(g, f) == h);
  CHECK(c->compose(g, c->id(1)) == g);
  CHECK(c->compose(c->id(2), h) == h);
  CHECK(c->hom(0, 2) == std::vector<MorId>{h});
  CHECK(c->is_identity(*c->find_morphism("id_b")));
  CHECK_FALSE(c->inverse(f));

  auto i = iso_cat();
  const MorId u = *i->find_morphism("u"), v = *i->find_morphism("v");
  CHECK(i->inverse(u) == v);
  CHECK(i->is_iso(v));
}

TEST_CASE("malformed categories") {
  CHECK(code_of([] { cat("C", {"a", "b", "c"}, {{"f", "a", "b"}, {"g", "b", "c"}}); }) == ErrorCode::MissingComposite);
  CHECK(code_of([] { cat("C", {"a"}, {{"f", "a", "b"}}); }) == ErrorCode::BadEndpoints);
  CHECK(code_of([] { cat("C", {"a", "b"}, {{"f", "a", "b"}, {"f", "a", "b"}}); }) ==
        ErrorCode::DuplicateIdentifier);
  CHECK(code_of([] { cat("C", {"a", "a"}); }) == ErrorCode::DuplicateIdentifier);
  // e o e = id but e o (e o e) would need to be e
  CHECK(code_of([] {
          cat("C", {"*"}, {{"e", "*", "*"}, {"k", "*", "*"}},
              {{"e", "e", "k"}, {"e", "k", "k"}, {"k", "e", "e"}, {"k", "k", "k"}});
        }) == ErrorCode::NonAssociative);
  CHECK(code_of([] { cat("C", {"a", "b"}, {{"f", "a", "b"}}, {{"f", "id_a", "id_b"}}); }) !=
        ErrorCode::InternalInvariant);
}

TEST_CASE("opposite and product") {
  for (const auto& c : all_shapes()) {
    auto op = opposite(c);
    CHECK(*opposite(op) == *c);
    for (MorId f = 0; f < c->num_morphisms(); ++f) {
      CHECK(op->dom(f) == c->cod(f));
      for (MorId g = 0; g < c->num_morphisms(); ++g)
        if (c->composable(g, f)) CHECK(op->compose(f, g) == c->compose(g, f));
    }
  }
  auto a = shapes::cospan();
  auto b = shapes::equalizing();
  auto p = product_category(a, b);
  CHECK(p->num_objects() == a->num_objects() * b->num_objects());
  CHECK(p->num_morphisms() == a->num_morphisms() * b->num_morphisms());
  for (MorId f = 0; f < p->num_morphisms(); ++f)
    for (MorId g = 0; g < p->num_morphisms(); ++g) {
      if (!p->composable(g, f)) continue;
      const int nb = b->num_morphisms();
      CHECK(p->compose(g, f) == a->compose(g / nb, f / nb) * nb + b->compose(g % nb, f % nb));
    }
}

TEST_CASE("is_filtered agrees with the definition") {
  for (const auto& c : all_shapes()) {
    const FilteredWitness w = is_filtered(*c);
    CAPTURE(c->name());
    CHECK(w.verdict == oracle::filtered(*c));
    if (!w.verdict) {
      REQUIRE(w.counterexample);
      CHECK(replays(*c, *w.counterexample));
    }
  }
  for (const auto& c : shapes::filtered_library()) CHECK(is_filtered(*c).verdict);
  for (const auto& c : shapes::non_filtered_library()) CHECK_FALSE(is_filtered(*c).verdict);
  CHECK_FALSE(is_filtered(*discrete_category("Empty", {})).verdict);
}

TEST_CASE("cospan categories of filtered categories are filtered") {
  for (const auto& c : shapes::filtered_library())
    for (ObjId i = 0; i < c->num_objects(); ++i)
      for (ObjId j = 0; j < c->num_objects(); ++j) {
        const CospanCategory cs = cospan_category(c, i, j);
        CAPTURE(c->name());
        CHECK(oracle::filtered(*cs.category));
        CHECK(cs.filtered_checked);
        // objects are exactly the cospans i -> k <- j
        int expected = 0;
        for (ObjId k = 0; k < c->num_objects(); ++k)
          expected += static_cast<int>(c->hom(i, k).size() * c->hom(j, k).size());
        CHECK(cs.category->num_objects() == expected);
        // a morphism labelled t commutes with both legs
        for (MorId m = 0; m < cs.category->num_morphisms(); ++m) {
          const auto& from = cs.objects[cs.category->dom(m)];
          const auto& to = cs.objects[cs.category->cod(m)];
          CHECK(c->compose(cs.labels[m], from.left) == to.left);
          CHECK(c->compose(cs.labels[m], from.right) == to.right);
        }
      }
}

TEST_CASE("cocone_and_equalize satisfies its constraints") {
  std::mt19937_64 rng(3);
  for (const auto& c : shapes::filtered_library()) {
    const FilteredWitness w = is_filtered(*c);
    for (int round = 0; round < 40; ++round) {
      std::vector<ObjId> tips;
      const int n = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < n; ++k) tips.push_back(static_cast<ObjId>(rng() % c->num_objects()));
      std::vector<EqualizeConstraint> cons;
      for (int k = 0; k < 3; ++k) {
        const std::size_t a = rng() % tips.size(), b = rng() % tips.size();
        const ObjId src = static_cast<ObjId>(rng() % c->num_objects());
        const auto& ha = c->hom(src, tips[a]);
        const auto& hb = c->hom(src, tips[b]);
        if (ha.empty() || hb.empty()) continue;
        cons.push_back({a, ha[rng() % ha.size()], b, hb[rng() % hb.size()]});
      }
      const Cocone cc = cocone_and_equalize(*c, w, tips, cons);
      REQUIRE(cc.legs.size() == tips.size());
      for (std::size_t k = 0; k < tips.size(); ++k) {
        CHECK(c->dom(cc.legs[k]) == tips[k]);
        CHECK(c->cod(cc.legs[k]) == cc.vertex);
      }
      for (const auto& e : cons)
        CHECK(c->compose(cc.legs[e.first_tip], e.first) == c->compose(cc.legs[e.second_tip], e.second));
    }
  }
  const auto d = shapes::discrete_pair();
  const std::vector<ObjId> tips{0, 1};
  CHECK(code_of([&] { cocone_and_equalize(*d, is_filtered(*d), tips, {}); }) == ErrorCode::NotFiltered);
}

TEST_CASE("functors and natural transformations") {
  auto two = arrow_cat();
  auto iso = iso_cat();
  CHECK(oracle::all_functors(two, iso).size() == 4);
  CHECK(oracle::all_functors(iso, two).size() == 2);
  auto f = functor(two, iso, {{"0", "x"}, {"1", "y"}}, {{"f", "u"}});
  CHECK(oracle::functorial(f));
  CHECK(code_of([&] {
          validate_functor(two, iso, {0, 1}, {iso->id(0), iso->id(1), *iso->find_morphism("v")});
        }) != ErrorCode::InternalInvariant);

  auto z2 = z2_cat();
  const auto id = identity_functor(z2);
  const MorId g = *z2->find_morphism("g");
  auto flip = validate_nat(id, id, {g}, true);
  CHECK(flip.is_iso());
  CHECK(vertical(flip, flip).at(0) == z2->id(0));
  CHECK(inverse(flip).at(0) == g);

  auto cx = constant_functor(iso, iso, 0);
  const MorId u = *iso->find_morphism("u");
  CHECK(validate_nat(cx, identity_functor(iso), {iso->id(0), u}).at(1) == u);
  CHECK(code_of([&] { validate_nat(cx, identity_functor(iso), {u, u}); }) == ErrorCode::BadEndpoints);
  auto par = parallel_pair();
  auto fpar = functor(two, par, {{"0", "0"}, {"1", "1"}}, {{"f", "f"}});
  auto gpar = functor(two, par, {{"0", "0"}, {"1", "1"}}, {{"f", "g"}});
  CHECK(code_of([&] { validate_nat(fpar, gpar, {par->id(0), par->id(1)}); }) == ErrorCode::NotNatural);
  auto e = idempotent_cat();
  const MorId em = *e->find_morphism("e");
  CHECK(code_of([&] { validate_nat(identity_functor(e), identity_functor(e), {em}, true); }) == ErrorCode::NotIso);
}

TEST_CASE("isomorphism by names") {
  auto a = cat("A", {"a", "b"}, {{"f", "a", "b"}, {"g", "a", "b"}});
  auto b = cat("A", {"b", "a"}, {{"g", "a", "b"}, {"f", "a", "b"}});
  auto iso = isomorphism_by_names(a, b);
  REQUIRE(iso);
  CHECK(oracle::bijective(*iso));
  CHECK(oracle::functorial(*iso));
  CHECK_FALSE(isomorphism_by_names(a, arrow_cat()));
}
