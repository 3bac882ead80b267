#pragma once

// Named index shapes and small value categories used by the generator,
// the bundled examples and the tests.

#include <string>
#include <vector>

#include "twocat/fincat.hpp"

namespace twocat::shapes {

CatRef terminal();        // 1
CatRef arrow();           // 2 : 0 -> 1
CatRef cospan();          // a -> c <- b
/// x => y with s, s2, u and an idempotent e on y; e o s = e o s2 = u.
CatRef equalizing();
CatRef parallel_pair();   // f, g : 0 -> 1
CatRef pullback();        // the cospan a -> c <- b, used as a limit shape
CatRef discrete_pair();   // p, q
CatRef span();            // a <- c -> b

CatRef walking_iso();     // x <-> y
CatRef idempotent();      // one object, e o e = e
CatRef z2();              // one object, g o g = id

/// Filtered shapes for the colimit side.
std::vector<CatRef> filtered_library();
/// Finite shapes for the limit side.
std::vector<CatRef> finite_library();
/// Shapes failing one of the filteredness conditions.
std::vector<CatRef> non_filtered_library();
/// Value categories for generated instances.
std::vector<CatRef> value_library();

}  // namespace twocat::shapes
