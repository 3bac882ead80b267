#include "twocat/cli.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "twocat/fuzz.hpp"
#include "twocat/interchange.hpp"

namespace twocat {

namespace {

using json = nlohmann::ordered_json;

std::string mor_name(const FinCategory& c, MorId m) {
  return c.is_identity(m) ? "id_" + c.object_name(c.dom(m)) : c.morphism_name(m);
}

// Aligned columns, two spaces apart.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (width.size() <= c) width.push_back(0);
        width[c] = std::max(width[c], r[c].size());
      }
    std::ostringstream out;
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        line += r[c];
        if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
      }
      out << line << '\n';
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string join(const std::vector<std::string>& v, const char* sep = " ") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

json category_json(const FinCategory& c) {
  json objects = json::array();
  for (ObjId o = 0; o < c.num_objects(); ++o) objects.push_back(c.object_name(o));
  json morphisms = json::array();
  for (MorId m = 0; m < c.num_morphisms(); ++m)
    morphisms.push_back({{"name", mor_name(c, m)}, {"dom", c.object_name(c.dom(m))}, {"cod", c.object_name(c.cod(m))}});
  json table = json::array();
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    for (ObjId o = 0; o < c.num_objects(); ++o)
      for (MorId g : c.hom(c.cod(f), o)) table.push_back({mor_name(c, g), mor_name(c, f), mor_name(c, c.compose(g, f))});
  return {{"name", c.name()}, {"objects", objects}, {"morphisms", morphisms}, {"compose", table}};
}

std::string category_human(const FinCategory& c, bool with_compose = true) {
  std::ostringstream out;
  std::vector<std::string> objects;
  for (ObjId o = 0; o < c.num_objects(); ++o) objects.push_back(c.object_name(o));
  out << "category " << c.name() << ": " << c.num_objects() << " objects, " << c.num_morphisms() << " morphisms\n";
  out << "objects: " << join(objects) << "\n\n";
  Table mors({"morphism", "dom", "cod"});
  for (MorId m = 0; m < c.num_morphisms(); ++m)
    mors.add({mor_name(c, m), c.object_name(c.dom(m)), c.object_name(c.cod(m))});
  out << mors.str();
  if (with_compose) {
    Table comp({"g", "f", "g o f"});
    bool any = false;
    for (MorId f = 0; f < c.num_morphisms(); ++f)
      for (ObjId o = 0; o < c.num_objects(); ++o)
        for (MorId g : c.hom(c.cod(f), o)) {
          if (c.is_identity(f) || c.is_identity(g)) continue;
          comp.add({mor_name(c, g), mor_name(c, f), mor_name(c, c.compose(g, f))});
          any = true;
        }
    if (any) out << '\n' << comp.str();
  }
  return out.str();
}

json violation_json(const FinCategory& c, const FilteredViolation& v) {
  json objects = json::array(), morphisms = json::array();
  for (ObjId o : v.objects) objects.push_back(c.object_name(o));
  for (MorId m : v.morphisms) morphisms.push_back(mor_name(c, m));
  return {{"condition", to_string(v.condition)}, {"objects", objects}, {"morphisms", morphisms}};
}

std::string violation_human(const FinCategory& c, const FilteredViolation& v) {
  std::vector<std::string> parts;
  for (ObjId o : v.objects) parts.push_back(c.object_name(o));
  for (MorId m : v.morphisms) parts.push_back(mor_name(c, m));
  return std::string(to_string(v.condition)) + (parts.empty() ? "" : " " + join(parts, ", "));
}

struct Result {
  json data;
  std::string human;
  int exit_status = 0;
};

Result validate(const Workspace& w) {
  json r;
  std::ostringstream h;
  json cats = json::array();
  for (const auto& [name, c] : w.categories()) {
    cats.push_back(category_json(*c));
    h << category_human(*c) << '\n';
  }
  r["categories"] = cats;
  json functors = json::array();
  for (const auto& f : w.functors()) {
    json objects = json::array(), morphisms = json::array();
    const auto& s = *f.value.source();
    const auto& t = *f.value.target();
    for (ObjId o = 0; o < s.num_objects(); ++o) objects.push_back({s.object_name(o), t.object_name(f.value.obj(o))});
    for (MorId m = 0; m < s.num_morphisms(); ++m) morphisms.push_back({mor_name(s, m), mor_name(t, f.value.mor(m))});
    functors.push_back({{"name", f.name}, {"source", f.source}, {"target", f.target}, {"objects", objects},
                        {"morphisms", morphisms}});
  }
  r["functors"] = functors;
  json nats = json::array();
  for (const auto& n : w.nats()) nats.push_back({{"name", n.name}, {"source", n.source}, {"target", n.target}});
  r["nats"] = nats;
  json ps = json::array();
  for (const auto& p : w.pseudofunctors())
    ps.push_back({{"name", p.name},
                  {"index", p.right ? p.left + " x " + *p.right + "^op" : p.left},
                  {"strict", p.value.is_strict()}});
  r["pseudofunctors"] = ps;
  json cocones = json::array(), cones = json::array();
  for (const auto& c : w.cocones()) cocones.push_back({{"name", c.name}, {"pseudofunctor", c.pseudofunctor}, {"target", c.target}});
  for (const auto& c : w.cones()) cones.push_back({{"name", c.name}, {"source", c.source}, {"pseudofunctor", c.pseudofunctor}});
  r["cocones"] = cocones;
  r["cones"] = cones;

  Table t({"kind", "name", "shape"});
  for (const auto& f : w.functors()) t.add({"functor", f.name, f.source + " -> " + f.target});
  for (const auto& n : w.nats()) t.add({"nat", n.name, n.source + " => " + n.target});
  for (const auto& p : w.pseudofunctors())
    t.add({"pseudofunctor", p.name, (p.right ? p.left + " x " + *p.right + "^op" : p.left) + " -> CAT"});
  for (const auto& c : w.cocones()) t.add({"cocone", c.name, c.pseudofunctor + " -> " + c.target});
  for (const auto& c : w.cones()) t.add({"cone", c.name, c.source + " -> " + c.pseudofunctor});
  h << t.str();
  return {r, h.str(), 0};
}

Result filtered(const Workspace& w, const Command& c) {
  const auto& cat = *w.category(c.category);
  const FilteredWitness fw = is_filtered(cat);
  json r{{"category", c.category}, {"verdict", fw.verdict}};
  std::string h = "filtered " + c.category + ": " + yes_no(fw.verdict) + "\n";
  if (fw.counterexample) {
    r["counterexample"] = violation_json(cat, *fw.counterexample);
    h += "counterexample: " + violation_human(cat, *fw.counterexample) + "\n";
  }
  return {r, h, fw.verdict ? 0 : 1};
}

Result colim(const Workspace& w, const Command& c) {
  const PseudoFunctor& p = w.pseudofunctor(c.pseudofunctor).value;
  const TwoColimCategory col = build_2colim(p);
  const auto& base = *col.base();
  const auto& idx = *p.index();
  json homs = json::array();
  Table t({"morphism", "from", "to", "apex", "left", "right", "representative"});
  for (ObjId a = 0; a < col.num_objects(); ++a)
    for (ObjId b = 0; b < col.num_objects(); ++b) {
      const auto& classes = col.hom_classes(a, b);
      if (classes.num_classes() == 0) continue;
      const auto& cs = col.cospan(col.object(a).index, col.object(b).index);
      json list = json::array();
      for (int k = 0; k < classes.num_classes(); ++k) {
        const MorId m = col.morphism_of(a, b, k);
        const ColimRep rep = col.representative(m);
        const CospanObject& o = cs.objects[rep.cospan_object];
        const std::string apex = idx.object_name(o.apex);
        const std::string rep_name = mor_name(*p.at(o.apex), rep.morphism);
        list.push_back({{"morphism", mor_name(base, m)}, {"apex", apex}, {"left", mor_name(idx, o.left)},
                        {"right", mor_name(idx, o.right)}, {"representative", rep_name}});
        t.add({mor_name(base, m), base.object_name(a), base.object_name(b), apex, mor_name(idx, o.left),
               mor_name(idx, o.right), rep_name});
      }
      homs.push_back({{"from", base.object_name(a)}, {"to", base.object_name(b)}, {"classes", list}});
    }
  json r{{"pseudofunctor", c.pseudofunctor}, {"category", category_json(base)}, {"homs", homs}};
  return {r, category_human(base) + "\n" + t.str(), 0};
}

std::vector<std::string> family_names(const TwoLimCategory& lim, const Family& f) {
  std::vector<std::string> out;
  for (ObjId k = 0; k < static_cast<ObjId>(f.size()); ++k) out.push_back(mor_name(*lim.system().at(k), f[k]));
  return out;
}

Result lim(const Workspace& w, const Command& c) {
  const PseudoFunctor& p = w.pseudofunctor(c.pseudofunctor).value;
  const TwoLimCategory lim = build_2lim(p);
  const auto& base = *lim.base();
  json families = json::array();
  Table t({"morphism", "components"});
  for (MorId m = 0; m < base.num_morphisms(); ++m) {
    const auto names = family_names(lim, lim.family_of(m));
    families.push_back({{"morphism", mor_name(base, m)}, {"components", names}});
    t.add({mor_name(base, m), join(names, ", ")});
  }
  json r{{"pseudofunctor", c.pseudofunctor}, {"category", category_json(base)}, {"families", families}};
  return {r, category_human(base) + "\n" + t.str(), 0};
}

bool same_functor(const FinFunctor& f, const FinFunctor& g) {
  const auto& s = *f.source();
  for (ObjId o = 0; o < s.num_objects(); ++o)
    if (f.obj(o) != g.obj(o)) return false;
  for (MorId m = 0; m < s.num_morphisms(); ++m)
    if (f.mor(m) != g.mor(m)) return false;
  return true;
}

Result factor(const Workspace& w, const Command& c) {
  const PseudoFunctor& p = w.pseudofunctor(c.pseudofunctor).value;
  json r{{"pseudofunctor", c.pseudofunctor}};
  std::ostringstream h;
  if (!c.cocone.empty()) {
    const CoconeEntry& e = w.cocone(c.cocone);
    if (e.pseudofunctor != c.pseudofunctor)
      throw Error(ErrorCode::ShapeMismatch, "cocone " + e.name + " is over " + e.pseudofunctor, {e.name});
    const TwoColimCategory col = build_2colim(p);
    const LaxFactorization f = strong_factor_colim(col, e.value);
    bool nose = true;
    for (ObjId i = 0; i < p.index()->num_objects(); ++i)
      nose = nose && same_functor(compose(f.functor, col.injection(i)), e.value.legs[i]);
    const bool lax = is_lax_factorization(col, e.value, f);
    const auto& s = *col.base();
    const auto& t = *e.value.target;
    json objects = json::array(), morphisms = json::array();
    Table ot({"object", "image"});
    Table mt({"morphism", "image"});
    for (ObjId o = 0; o < s.num_objects(); ++o) {
      objects.push_back({s.object_name(o), t.object_name(f.functor.obj(o))});
      ot.add({s.object_name(o), t.object_name(f.functor.obj(o))});
    }
    for (MorId m = 0; m < s.num_morphisms(); ++m) {
      if (s.is_identity(m)) continue;
      morphisms.push_back({mor_name(s, m), mor_name(t, f.functor.mor(m))});
      mt.add({mor_name(s, m), mor_name(t, f.functor.mor(m))});
    }
    r["cocone"] = c.cocone;
    r["functor"] = {{"objects", objects}, {"morphisms", morphisms}};
    r["on_the_nose"] = nose;
    r["lax_factorization"] = lax;
    h << "factorization of " << c.cocone << " through 2colim " << c.pseudofunctor << " -> " << e.target << "\n\n"
      << ot.str() << '\n' << mt.str() << "\non the nose: " << yes_no(nose) << "\nlax factorization: " << yes_no(lax)
      << '\n';
    return {r, h.str(), nose && lax ? 0 : 1};
  }
  if (c.cone.empty()) throw Error(ErrorCode::UnresolvedReference, "factor needs --cocone or --cone");
  const ConeEntry& e = w.cone(c.cone);
  if (e.pseudofunctor != c.pseudofunctor)
    throw Error(ErrorCode::ShapeMismatch, "cone " + e.name + " is over " + e.pseudofunctor, {e.name});
  const TwoLimCategory lim = build_2lim(p);
  const LimValuedFunctor f = strong_factor_lim(lim, e.value);
  const auto& s = *e.value.source;
  bool nose = true;
  for (ObjId k = 0; k < p.index()->num_objects(); ++k) {
    for (ObjId o = 0; o < s.num_objects(); ++o) nose = nose && lim.object(f.objects[o]).x[k] == e.value.legs[k].obj(o);
    for (MorId m = 0; m < s.num_morphisms(); ++m) nose = nose && f.morphisms[m][k] == e.value.legs[k].mor(m);
  }
  const bool functorial = is_functorial(lim, f);
  json objects = json::array(), morphisms = json::array();
  Table ot({"object", "image"});
  Table mt({"morphism", "components"});
  for (ObjId o = 0; o < s.num_objects(); ++o) {
    objects.push_back({s.object_name(o), lim.object_label(f.objects[o])});
    ot.add({s.object_name(o), lim.object_label(f.objects[o])});
  }
  for (MorId m = 0; m < s.num_morphisms(); ++m) {
    if (s.is_identity(m)) continue;
    const auto names = family_names(lim, f.morphisms[m]);
    morphisms.push_back({mor_name(s, m), names});
    mt.add({mor_name(s, m), join(names, ", ")});
  }
  r["cone"] = c.cone;
  r["functor"] = {{"objects", objects}, {"morphisms", morphisms}};
  r["on_the_nose"] = nose;
  r["functorial"] = functorial;
  h << "factorization of " << c.cone << " through 2lim " << c.pseudofunctor << "\n\n"
    << ot.str() << '\n' << mt.str() << "\non the nose: " << yes_no(nose) << "\nfunctorial: " << yes_no(functorial)
    << '\n';
  return {r, h.str(), nose && functorial ? 0 : 1};
}

Result interchange(const Workspace& w, const Command& c) {
  const PseudoEntry& e = w.pseudofunctor(c.pseudofunctor);
  if (!e.biindexed)
    throw Error(ErrorCode::ShapeMismatch, "pseudofunctor " + e.name + " is not indexed by I x J^op", {e.name});
  const auto& a = *e.biindexed;
  const auto& ic = *a.shape.left;
  if (!c.skip_filter_check && !a.filtered.verdict) {
    std::vector<std::string> witness{ic.name()};
    if (a.filtered.counterexample) witness.push_back(violation_human(ic, *a.filtered.counterexample));
    throw Error(ErrorCode::NotFiltered, ic.name() + " is not filtered", witness);
  }
  InterchangeOptions options;
  options.require_filtered = !c.skip_filter_check;
  const EquivalenceReport rep = check_equivalence(a, options);

  json r{{"pseudofunctor", c.pseudofunctor}, {"filtered", rep.filtered}};
  std::ostringstream h;
  h << "interchange " << c.pseudofunctor << " : " << ic.name() << " x " << a.shape.right->name() << "^op -> CAT\n\n";
  Table t({"check", "value"});
  t.add({"filtered", yes_no(rep.filtered)});
  if (rep.filtered_counterexample) {
    r["counterexample"] = violation_json(ic, *rep.filtered_counterexample);
    t.add({"counterexample", violation_human(ic, *rep.filtered_counterexample)});
  }
  r["colim_of_lims"] = {{"objects", rep.colim_of_lims_objects}, {"morphisms", rep.colim_of_lims_morphisms}};
  r["lim_of_colims"] = {{"objects", rep.lim_of_colims_objects}};
  r["psi_functorial"] = rep.psi_functorial;
  r["psi_matches_formula"] = rep.psi_matches_formula;
  r["fully_faithful"] = rep.fully_faithful.verdict;
  json bad = json::array();
  for (const auto& hb : rep.fully_faithful.pairs) {
    if (hb.bijective) continue;
    json entry{{"from", hb.from}, {"to", hb.to}, {"source_size", hb.source_size}, {"target_size", hb.target_size}};
    if (hb.witness) entry["witness"] = *hb.witness;
    bad.push_back(entry);
  }
  r["non_bijective_homs"] = bad;
  r["essentially_surjective"] = rep.essentially_surjective;
  json pre = json::array();
  Table pt({"target", "found", "vertex", "preimage", "rounds"});
  for (const auto& p : rep.preimages) {
    json entry{{"target", p.target_label}, {"found", p.found}};
    if (p.found) {
      entry["vertex"] = ic.object_name(p.vertex);
      entry["source"] = p.source_label;
      entry["rounds"] = p.rounds;
      pt.add({p.target_label, "true", ic.object_name(p.vertex), p.source_label, std::to_string(p.rounds)});
    } else {
      pt.add({p.target_label, "false", "-", p.failure.value_or("-"), "-"});
    }
    if (p.failure) entry["failure"] = *p.failure;
    pre.push_back(entry);
  }
  r["preimages"] = pre;
  r["verdict"] = rep.verdict;

  t.add({"colim of lims", std::to_string(rep.colim_of_lims_objects) + " objects, " +
                              std::to_string(rep.colim_of_lims_morphisms) + " morphisms"});
  t.add({"lim of colims", std::to_string(rep.lim_of_colims_objects) + " objects"});
  t.add({"psi functorial", yes_no(rep.psi_functorial)});
  t.add({"psi matches formula", yes_no(rep.psi_matches_formula)});
  t.add({"fully faithful", yes_no(rep.fully_faithful.verdict)});
  t.add({"non-bijective homs", std::to_string(bad.size())});
  t.add({"essentially surjective", yes_no(rep.essentially_surjective)});
  t.add({"verdict", yes_no(rep.verdict)});
  h << t.str() << '\n' << pt.str();
  return {r, h.str(), rep.verdict ? 0 : 1};
}

Result fuzz_command(const Command& c) {
  const FuzzReport rep = fuzz(c.cases, c.seed);
  json results = json::array();
  Table t({"case", "instance", "colim of lims", "lim of colims", "verdict"});
  for (const auto& x : rep.results) {
    json entry{{"index", x.index}, {"description", x.description}, {"verdict", x.verdict},
               {"colim_of_lims_objects", x.colim_of_lims_objects}, {"lim_of_colims_objects", x.lim_of_colims_objects}};
    if (x.error) entry["error"] = *x.error;
    results.push_back(entry);
    t.add({std::to_string(x.index), x.description, std::to_string(x.colim_of_lims_objects),
           std::to_string(x.lim_of_colims_objects), x.error ? *x.error : yes_no(x.verdict)});
  }
  json r{{"seed", rep.seed}, {"cases", c.cases}, {"passed", rep.passed}, {"failed", rep.failed}, {"results", results}};
  std::ostringstream h;
  h << "fuzz seed " << rep.seed << ": " << rep.passed << " passed, " << rep.failed << " failed\n\n" << t.str();
  return {r, h.str(), rep.failed == 0 ? 0 : 1};
}

json echo(const Command& c) {
  json e{{"name", c.name}, {"files", c.files}};
  if (!c.category.empty()) e["category"] = c.category;
  if (!c.pseudofunctor.empty()) e["pseudofunctor"] = c.pseudofunctor;
  if (!c.cocone.empty()) e["cocone"] = c.cocone;
  if (!c.cone.empty()) e["cone"] = c.cone;
  if (c.skip_filter_check) e["diagnostic_skip_filter_check"] = true;
  if (c.name == "fuzz") {
    e["cases"] = c.cases;
    e["seed"] = c.seed;
  }
  if (c.max_elab != 64) e["max_elab"] = c.max_elab;
  return e;
}

std::string echo_human(const Command& c) {
  std::string s = "twocat " + c.name;
  for (const auto& f : c.files) s += " " + f;
  if (!c.category.empty()) s += " --category " + c.category;
  if (!c.pseudofunctor.empty()) s += " --pseudofunctor " + c.pseudofunctor;
  if (!c.cocone.empty()) s += " --cocone " + c.cocone;
  if (!c.cone.empty()) s += " --cone " + c.cone;
  if (c.skip_filter_check) s += " --diagnostic-skip-filter-check";
  if (c.name == "fuzz") s += " --cases " + std::to_string(c.cases) + " --seed " + std::to_string(c.seed);
  return s;
}

Report ok_report(const Command& c, Result r) {
  json j{{"command", echo(c)}, {"status", "ok"}, {"exit", r.exit_status}, {"result", std::move(r.data)}};
  return {j.dump(2) + "\n", "# " + echo_human(c) + "\n\n" + r.human, r.exit_status};
}

Report error_report(const Command& c, const Error& e) {
  const int status = exit_status(e.code());
  json j{{"command", echo(c)},
         {"status", "error"},
         {"exit", status},
         {"error", {{"code", to_string(e.code())}, {"message", e.message()}, {"witness", e.witness()}}}};
  std::string human = "# " + echo_human(c) + "\n\nerror " + to_string(e.code()) + ": " + e.message() + "\n";
  if (!e.witness().empty()) human += "witness: " + join(e.witness(), ", ") + "\n";
  return {j.dump(2) + "\n", human, status};
}

}  // namespace

Report run_command(const Workspace& w, const Command& c) {
  try {
    if (c.name == "validate") return ok_report(c, validate(w));
    if (c.name == "filtered") return ok_report(c, filtered(w, c));
    if (c.name == "colim") return ok_report(c, colim(w, c));
    if (c.name == "lim") return ok_report(c, lim(w, c));
    if (c.name == "factor") return ok_report(c, factor(w, c));
    if (c.name == "interchange") return ok_report(c, interchange(w, c));
    if (c.name == "fuzz") return ok_report(c, fuzz_command(c));
    throw Error(ErrorCode::UnresolvedReference, "unknown command " + c.name, {c.name});
  } catch (const Error& e) {
    return error_report(c, e);
  } catch (const std::exception& e) {
    return error_report(c, Error(ErrorCode::InternalInvariant, e.what()));
  }
}

Report run(const Command& c) {
  if (c.name == "fuzz" && c.files.empty()) return run_command(Workspace{}, c);
  try {
    ParseOptions options;
    options.max_elab = c.max_elab;
    const Workspace w = parse_catml_files(c.files, options);
    return run_command(w, c);
  } catch (const Error& e) {
    return error_report(c, e);
  }
}

}  // namespace twocat
