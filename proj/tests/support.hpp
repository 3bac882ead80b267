#pragma once

// Small builders shared by the unit tests.

#include <map>
#include <string>
#include <vector>

#include "twocat/fincat.hpp"
#include "twocat/pseudo.hpp"

namespace twocat::test {

inline CatRef cat(std::string name, std::vector<std::string> objects,
                  std::vector<RawCategory::Arrow> morphisms = {},
                  std::vector<RawCategory::Composite> composites = {}) {
  return validate_category({std::move(name), std::move(objects), std::move(morphisms), std::move(composites)});
}

inline CatRef arrow_cat(std::string name = "2") { return cat(std::move(name), {"0", "1"}, {{"f", "0", "1"}}); }

inline CatRef iso_cat(std::string name = "Iso") {
  return cat(std::move(name), {"x", "y"}, {{"u", "x", "y"}, {"v", "y", "x"}},
             {{"v", "u", "id_x"}, {"u", "v", "id_y"}});
}

inline CatRef z2_cat(std::string name = "Z2") {
  return cat(std::move(name), {"*"}, {{"g", "*", "*"}}, {{"g", "g", "id_*"}});
}

inline CatRef idempotent_cat(std::string name = "E") {
  return cat(std::move(name), {"*"}, {{"e", "*", "*"}}, {{"e", "e", "e"}});
}

inline CatRef cospan_shape(std::string name = "Cospan") {
  return cat(std::move(name), {"a", "b", "c"}, {{"p", "a", "c"}, {"q", "b", "c"}});
}

/// x => y with s, s2, u = e o s = e o s2 and an idempotent e on y.
inline CatRef equalizing_shape(std::string name = "Eq") {
  return cat(std::move(name), {"x", "y"},
             {{"s", "x", "y"}, {"s2", "x", "y"}, {"u", "x", "y"}, {"e", "y", "y"}},
             {{"e", "e", "e"}, {"e", "s", "u"}, {"e", "s2", "u"}, {"e", "u", "u"}});
}

inline CatRef parallel_pair(std::string name = "Par") {
  return cat(std::move(name), {"0", "1"}, {{"f", "0", "1"}, {"g", "0", "1"}});
}

inline CatRef pullback_shape(std::string name = "Pb") { return cospan_shape(std::move(name)); }

/// Functor by name tables: objects and non-identity morphisms.
inline FinFunctor functor(const CatRef& from, const CatRef& to, const std::map<std::string, std::string>& objs,
                          const std::map<std::string, std::string>& mors = {}) {
  std::vector<ObjId> om(from->num_objects());
  for (ObjId o = 0; o < from->num_objects(); ++o) om[o] = *to->find_object(objs.at(from->object_name(o)));
  std::vector<MorId> mm(from->num_morphisms());
  for (MorId m = 0; m < from->num_morphisms(); ++m)
    mm[m] = from->is_identity(m) ? to->id(om[from->dom(m)]) : *to->find_morphism(mors.at(from->morphism_name(m)));
  return validate_functor(from, to, std::move(om), std::move(mm));
}

inline PseudoFunctor strict(const CatRef& index, std::vector<CatRef> at, std::vector<FinFunctor> on) {
  PseudoFunctorSpec spec;
  spec.index = index;
  spec.at = std::move(at);
  spec.on = std::move(on);
  return validate_pseudofunctor(std::move(spec));
}

/// Every object to c, every morphism to the identity.
inline PseudoFunctor constant(const CatRef& index, const CatRef& c) {
  std::vector<CatRef> at(index->num_objects(), c);
  std::vector<FinFunctor> on(index->num_morphisms(), identity_functor(c));
  return strict(index, std::move(at), std::move(on));
}

}  // namespace twocat::test
