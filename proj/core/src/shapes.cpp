#include "twocat/shapes.hpp"

namespace twocat::shapes {

namespace {

CatRef make(std::string name, std::vector<std::string> objects, std::vector<RawCategory::Arrow> arrows = {},
            std::vector<RawCategory::Composite> composites = {}) {
  return validate_category({std::move(name), std::move(objects), std::move(arrows), std::move(composites)});
}

}  // namespace

CatRef terminal() { return terminal_category("One"); }

CatRef arrow() { return make("Two", {"0", "1"}, {{"f", "0", "1"}}); }

CatRef cospan() { return make("Cospan", {"a", "b", "c"}, {{"p", "a", "c"}, {"q", "b", "c"}}); }

CatRef equalizing() {
  return make("Equalizing", {"x", "y"}, {{"s", "x", "y"}, {"s2", "x", "y"}, {"u", "x", "y"}, {"e", "y", "y"}},
              {{"e", "e", "e"}, {"e", "s", "u"}, {"e", "s2", "u"}, {"e", "u", "u"}});
}

CatRef parallel_pair() { return make("ParallelPair", {"0", "1"}, {{"f", "0", "1"}, {"g", "0", "1"}}); }

CatRef pullback() { return make("Pullback", {"a", "b", "c"}, {{"p", "a", "c"}, {"q", "b", "c"}}); }

CatRef discrete_pair() { return discrete_category("DiscretePair", {"p", "q"}); }

CatRef span() { return make("Span", {"a", "b", "c"}, {{"p", "c", "a"}, {"q", "c", "b"}}); }

CatRef walking_iso() {
  return make("Iso", {"x", "y"}, {{"u", "x", "y"}, {"v", "y", "x"}}, {{"v", "u", "id_x"}, {"u", "v", "id_y"}});
}

CatRef idempotent() { return make("Idem", {"*"}, {{"e", "*", "*"}}, {{"e", "e", "e"}}); }

CatRef z2() { return make("Z2", {"*"}, {{"g", "*", "*"}}, {{"g", "g", "id_*"}}); }

std::vector<CatRef> filtered_library() { return {terminal(), arrow(), cospan(), equalizing()}; }

std::vector<CatRef> finite_library() { return {terminal(), arrow(), parallel_pair(), pullback()}; }

std::vector<CatRef> non_filtered_library() { return {discrete_pair(), parallel_pair(), span()}; }

std::vector<CatRef> value_library() {
  return {terminal_category("Pt"), make("Arrow", {"0", "1"}, {{"f", "0", "1"}}), walking_iso(), idempotent(),
          z2()};
}

}  // namespace twocat::shapes
