// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>

#include "checks.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "support.hpp"
#include "twocat/catml.hpp"
#include "twocat/cli.hpp"
#include "twocat/fuzz.hpp"
#include "twocat/shapes.hpp"

using namespace twocat;

namespace {

constexpr int kInstances = 56;
constexpr std::uint64_t kSeed = 2024;
constexpr double kMaxSeconds = 300;
constexpr int kSetDiagrams = 100;
constexpr double kCandidateLimit = 200;

struct Outcome {
  check::Failure failure;
  std::string detail;
};

std::vector<std::string> corpus() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(TWOCAT_DATA_DIR))
    if (e.path().extension() == ".catml") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string data(const char* file) { return std::string(TWOCAT_DATA_DIR) + "/" + file; }

bool has(const std::vector<CatRef>& lib, const std::string& name) {
  return std::any_of(lib.begin(), lib.end(), [&](const CatRef& c) { return c->name() == name; });
}

// The generated suite, plus perturbed copies and hand-picked instances whose
// preimages need equalization.
std::vector<BiIndexedPseudoFunctor> suite() {
  std::vector<BiIndexedPseudoFunctor> out;
  for (int n = 0; n < kInstances; ++n) out.push_back(generate_case(kSeed, n).a);
  for (int n = 0; n < 16; ++n) {
    const FuzzCase fc = generate_case(kSeed + 1, n);
    out.push_back(make_biindexed(fc.a.shape.left, fc.a.shape.right, perturb(fc.a.underlying, n)));
  }
  auto eq = shapes::equalizing();
  for (const auto& j : shapes::finite_library())
    out.push_back(make_biindexed(
        eq, j, sum_of_representables(eq, j, {{0, 0, shapes::walking_iso(), true}, {std::nullopt, 0, shapes::z2()}})));
  const Workspace w = parse_catml_files({data("interchange_2x2.catml")});
  out.push_back(*w.pseudofunctor("A").biindexed);
  return out;
}

Outcome main_property() {
  const auto lefts = shapes::filtered_library();
  const auto rights = shapes::finite_library();
  if (lefts.size() < 4 || rights.size() < 4) return {"shape libraries too small", ""};
  for (const char* n : {"One", "Two", "Cospan", "Equalizing"})
    if (!has(lefts, n)) return {std::string("filtered library lacks ") + n, ""};
  for (const char* n : {"One", "Two", "ParallelPair", "Pullback"})
    if (!has(rights, n)) return {std::string("finite library lacks ") + n, ""};
  const auto start = std::chrono::steady_clock::now();
  int passed = 0;
  for (int n = 0; n < kInstances; ++n) {
    const FuzzCase fc = generate_case(kSeed, n);
    if (!fc.a.underlying.is_strict()) return {"generated instance is not strict", fc.description};
    for (ObjId o = 0; o < fc.a.underlying.index()->num_objects(); ++o) {
      const auto& v = *fc.a.underlying.at(o);
      if (v.num_objects() > 4 || v.num_morphisms() > 12) return {"value category too large", fc.description};
    }
    const EquivalenceReport r = check_equivalence(fc.a);
    if (!r.verdict) return {"verdict false on " + fc.description, ""};
    ++passed;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > kMaxSeconds) return {"took " + std::to_string(secs) + " s", ""};
  return {std::nullopt, std::to_string(passed) + "/" + std::to_string(kInstances) + " instances in " +
                            std::to_string(secs) + " s"};
}

Outcome set_interchange() {
  std::mt19937_64 rng(kSeed);
  int checked = 0;
  while (checked < kSetDiagrams)
    for (const auto& i : shapes::filtered_library())
      for (const auto& j : shapes::finite_library()) {
        const SetDiagram d = gen::random_set_diagram(product_category(i, j), rng);
        if (!d.index) continue;
        const SetInterchange r = interchange_map_set(i, j, d);
        const oracle::SetSides o = oracle::set_interchange(i, j, d);
        if (!r.bijective) return {"not bijective over " + i->name() + " x " + j->name(), ""};
        if (r.colim_of_lims_size != o.colim_of_lims || r.lim_of_colims_size != o.lim_of_colims)
          return {"sizes disagree with the oracles", ""};
        const ColimSet c(d);
        if (c.num_classes() != oracle::closure_colim(d).classes) return {"colimit disagrees with closure", ""};
        if (LimSet(d).size() != static_cast<int>(oracle::exhaustive_lim(d).size()))
          return {"limit disagrees with enumeration", ""};
        ++checked;
      }
  auto pair = shapes::discrete_pair();
  auto empty = discrete_category("Empty", {});
  const SetInterchange bad = interchange_map_set(pair, empty, SetDiagram{product_category(pair, empty), {}, {}});
  if (bad.bijective) return {"non-filtered counterexample is bijective", ""};
  return {std::nullopt, std::to_string(checked) + " diagrams, counterexample 2 -> 1"};
}

Outcome cospan_filtered() {
  int pairs = 0;
  for (const auto& c : shapes::filtered_library())
    for (ObjId i = 0; i < c->num_objects(); ++i)
      for (ObjId j = 0; j < c->num_objects(); ++j) {
        const CospanCategory cs = cospan_category(c, i, j);
        if (!is_filtered(*cs.category).verdict || !oracle::filtered(*cs.category))
          return {"cospan category of " + c->name() + " not filtered", ""};
        ++pairs;
      }
  int refuted = 0;
  for (const auto& c : shapes::non_filtered_library()) {
    const FilteredWitness w = is_filtered(*c);
    if (w.verdict || !w.counterexample || !replays(*c, *w.counterexample))
      return {"no replayable counterexample for " + c->name(), ""};
    ++refuted;
  }
  return {std::nullopt, std::to_string(pairs) + " pairs, " + std::to_string(refuted) + " counterexamples"};
}

Outcome degenerations() {
  std::vector<CatRef> values = shapes::value_library();
  for (const auto& f : corpus()) {
    const Workspace w = parse_catml_files({f});
    for (const auto& [name, c] : w.categories()) values.push_back(c);
  }
  auto one = terminal_category("One");
  for (const auto& v : values) {
    if (auto f = check::colim_over_point(v, test::constant(one, v))) return {*f, v->name()};
    if (auto f = check::lim_over_point(v, test::constant(one, v))) return {*f, v->name()};
  }
  return {std::nullopt, std::to_string(values.size()) + " value categories"};
}

Outcome quotient_composition(const std::vector<BiIndexedPseudoFunctor>& instances) {
  int built = 0;
  for (const auto& a : instances)
    for (ObjId k = 0; k < a.shape.right->num_objects(); ++k) {
      const TwoColimCategory c = build_2colim(slice_at_right(a, k));
      if (auto f = check::colim_homs(c)) return {*f, ""};
      if (auto f = check::colim_composition(c)) return {*f, ""};
      ++built;
    }
  return {std::nullopt, std::to_string(built) + " 2-colimits"};
}

Outcome factorization(const std::vector<BiIndexedPseudoFunctor>& instances) {
  int samples = 0, unique = 0, modifications = 0;
  auto record = [&](const check::FactorResult& r) -> check::Failure {
    ++samples;
    unique += r.uniqueness_checked;
    return r.failure;
  };
  std::vector<Workspace> spaces;
  for (const auto& f : corpus()) spaces.push_back(parse_catml_files({f}));
  for (const auto& w : spaces) {
    for (const auto& r : w.cocones()) {
      const TwoColimCategory c = build_2colim(w.pseudofunctor(r.pseudofunctor).value);
      if (auto f = record(check::colim_factorization(c, r.value, kCandidateLimit))) return {*f, r.name};
      // the identity modification and, on automorphic legs, every constant one
      std::vector<NatTransformation> ident;
      for (const auto& leg : r.value.legs) ident.push_back(identity_nat(leg));
      if (auto f = check::modification_factorization(c, r.value, ident)) return {*f, r.name};
      ++modifications;
      const auto& t = *r.value.target;
      for (MorId g : t.hom(0, 0)) {
        std::vector<NatTransformation> lambda;
        try {
          for (const auto& leg : r.value.legs)
            lambda.push_back(validate_nat(leg, leg, std::vector<MorId>(leg.source()->num_objects(), g)));
        } catch (const Error&) {
          continue;
        }
        if (auto f = check::modification_factorization(c, r.value, lambda)) return {*f, r.name};
        ++modifications;
      }
    }
    for (const auto& q : w.cones()) {
      const TwoLimCategory l = build_2lim(w.pseudofunctor(q.pseudofunctor).value);
      if (auto f = record(check::lim_factorization(l, q.value, kCandidateLimit))) return {*f, q.name};
    }
  }
  for (std::size_t n = 0; n < instances.size(); n += 7) {
    const auto& a = instances[n];
    const TwoColimCategory c = build_2colim(slice_at_right(a, 0));
    if (auto f = record(check::colim_factorization(c, injection_cocone(c), kCandidateLimit))) return {*f, ""};
    const PseudoFunctor row = slice_at_left(a, 0);
    const TwoLimCategory l = build_2lim(row);
    PseudoCone proj{l.base(), {}, {}};
    for (ObjId k = 0; k < row.index()->num_objects(); ++k) proj.legs.push_back(l.projection(k));
    for (MorId m = 0; m < row.index()->num_morphisms(); ++m) proj.cells.push_back(l.cell(m));
    if (auto f = record(check::lim_factorization(l, proj, kCandidateLimit))) return {*f, ""};
  }
  if (unique == 0) return {"uniqueness never checked", ""};
  return {std::nullopt, std::to_string(samples) + " samples, " + std::to_string(unique) + " with uniqueness, " +
                            std::to_string(modifications) + " modifications"};
}

Outcome essential_preimages(const std::vector<BiIndexedPseudoFunctor>& instances) {
  int objects = 0, rounds = 0;
  for (const auto& a : instances) {
    const ColimOfLims col = build_colim_of_lims(a);
    const LimOfColims loc = build_lim_of_colims(a);
    const LimValuedFunctor psi = build_psi(a, col, loc);
    if (auto f = check::preimages(a, col, loc, psi, &rounds)) return {*f, ""};
    objects += loc.category().num_objects();
  }
  return {std::nullopt, std::to_string(objects) + " objects, at most " + std::to_string(rounds) + " rounds"};
}

Outcome cli_round_trip() {
  std::vector<Command> commands;
  auto add = [&](std::string name, std::string file, std::function<void(Command&)> set) {
    Command c;
    c.name = std::move(name);
    if (!file.empty()) c.files = {data(file.c_str())};
    set(c);
    commands.push_back(c);
  };
  for (const auto& f : corpus()) {
    Command c;
    c.name = "validate";
    c.files = {f};
    commands.push_back(c);
  }
  add("filtered", "walking_arrow.catml", [](Command& c) { c.category = "TwoArrow"; });
  add("colim", "twisted.catml", [](Command& c) { c.pseudofunctor = "T"; });
  add("lim", "twisted.catml", [](Command& c) { c.pseudofunctor = "T"; });
  add("factor", "twisted.catml", [](Command& c) { c.pseudofunctor = "T", c.cocone = "R"; });
  add("factor", "twisted.catml", [](Command& c) { c.pseudofunctor = "T", c.cone = "Q"; });
  add("interchange", "interchange_2x2.catml", [](Command& c) { c.pseudofunctor = "A"; });
  add("interchange", "non_filtered.catml", [](Command& c) { c.pseudofunctor = "D", c.skip_filter_check = true; });
  add("fuzz", "", [](Command& c) { c.cases = 8, c.seed = kSeed; });
  for (const auto& c : commands) {
    const Report a = run(c), b = run(c);
    if (a.json != b.json || a.human != b.human || a.exit_status != b.exit_status)
      return {"report of " + c.name + " differs between runs", ""};
  }
  int files = 0;
  for (const auto& f : corpus()) {
    if (auto why = check::round_trip(parse_catml_files({f}))) return {*why, f};
    ++files;
  }
  return {std::nullopt, std::to_string(commands.size()) + " commands, " + std::to_string(files) + " files"};
}

}  // namespace

int main() {
  const auto instances = suite();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"interchange equivalence on the generated suite", main_property},
      {"set-level interchange against oracles", set_interchange},
      {"cospan categories of filtered categories", cospan_filtered},
      {"2-colimit and 2-limit over the point", degenerations},
      {"quotient composition well defined", [&] { return quotient_composition(instances); }},
      {"strong factorization and uniqueness", [&] { return factorization(instances); }},
      {"essential preimage replay", [&] { return essential_preimages(instances); }},
      {"CLI determinism and print/parse round trip", cli_round_trip},
  };
  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    try {
      o = criteria[n].second();
    } catch (const std::exception& e) {
      o.failure = std::string("exception: ") + e.what();
    }
    const bool ok = !o.failure;
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " " << n + 1 << " " << criteria[n].first;
    if (o.failure) std::cout << ": " << *o.failure;
    if (!o.detail.empty()) std::cout << (ok ? " (" : " [") << o.detail << (ok ? ")" : "]");
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
