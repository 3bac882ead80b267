#include "doctest.h"

#include <filesystem>

#include "checks.hpp"
#include "support.hpp"
#include "twocat/catml.hpp"
#include "twocat/shapes.hpp"

using namespace twocat;

namespace {

std::string data(const char* file) { return std::string(TWOCAT_DATA_DIR) + "/" + file; }

std::vector<std::string> corpus() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(TWOCAT_DATA_DIR))
    if (e.path().extension() == ".catml") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

ErrorCode code_of(std::string_view text, std::string* message = nullptr, ParseOptions options = {}) {
  try {
    parse_catml(text, "t.catml", options);
  } catch (const Error& e) {
    if (message) *message = e.message();
    return e.code();
  }
  FAIL("accepted");
  return ErrorCode::InternalInvariant;
}

}  // namespace

TEST_CASE("terminal category") {
  const Workspace w = parse_catml_files({data("terminal.catml")});
  REQUIRE(w.categories().size() == 1);
  const CatRef& one = w.category("One");
  CHECK(one->num_objects() == 1);
  CHECK(one->num_morphisms() == 1);
}

TEST_CASE("parse errors") {
  std::string msg;
  CHECK(code_of("[category C]\nobjects = a b\nmor f : a -> b\nmor g : b -> b\ncompose g f = h\n", &msg) ==
        ErrorCode::UnresolvedReference);
  CHECK(msg.starts_with("t.catml:5:"));

  CHECK(code_of("[category C]\nobjects = a\nmor f a -> a\n", &msg) == ErrorCode::SyntaxError);
  CHECK(msg.starts_with("t.catml:3:"));
  CHECK(code_of("[category C\n", &msg) == ErrorCode::SyntaxError);
  CHECK(msg.starts_with("t.catml:1:"));
  CHECK(code_of("objects = a\n") == ErrorCode::SyntaxError);

  CHECK(code_of("[category C]\nobjects = a\n[category C]\nobjects = b\n", &msg) == ErrorCode::DuplicateIdentifier);
  CHECK(msg.starts_with("t.catml:3:"));
  CHECK(code_of("[category C]\nobjects = a a\n") == ErrorCode::DuplicateIdentifier);

  CHECK(code_of("[functor F : C -> D]\nobj a = b\n") == ErrorCode::UnresolvedReference);
  CHECK(code_of("[category C]\nobjects = a b\nmor f : a -> b\nmor g : b -> a\n") == ErrorCode::MissingComposite);
}

TEST_CASE("presentations") {
  const Workspace w = parse_catml_files({data("presentation.catml")});
  const CatRef& p = w.category("Equalizing");
  const CatRef reference = shapes::equalizing();
  CHECK(p->num_morphisms() == reference->num_morphisms());
  int isos = 0;
  for (const auto& f : oracle::all_functors(p, reference))
    if (oracle::bijective(f) && reference->morphism_name(f.mor(*p->find_morphism("e"))) == "e") ++isos;
  CHECK(isos > 0);
  CHECK(oracle::functorial(w.functor("Sx").value));

  // a free loop never closes up
  std::string msg;
  CHECK(code_of("[presentation N]\nobjects = x\ngen f : x -> x\n", &msg, {.max_elab = 16}) ==
        ErrorCode::ElaborationDiverges);
  // f.f.f = id closes to Z3
  const Workspace z3 = parse_catml("[presentation Z3]\nobjects = x\ngen f : x -> x\nrel f.f.f = id_x\n");
  CHECK(z3.category("Z3")->num_morphisms() == 3);
}

TEST_CASE("print then parse is the identity up to isomorphism") {
  const auto files = corpus();
  CHECK(files.size() >= 6);
  for (const auto& file : files) {
    CAPTURE(file);
    const Workspace w = parse_catml_files({file});
    CHECK_FALSE(check::round_trip(w));
  }
}

TEST_CASE("paths") {
  const Workspace w = parse_catml_files({data("values.catml")});
  const CatRef& iso = w.category("Iso");
  CHECK(resolve_morphism(*iso, "v.u") == iso->id(0));
  CHECK(resolve_morphism(*iso, "u") == *iso->find_morphism("u"));
  CHECK_THROWS_AS(resolve_morphism(*iso, "u.u"), Error);
}
