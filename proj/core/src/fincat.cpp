#include "twocat/fincat.hpp"

#include <algorithm>
#include <tuple>

namespace twocat {

namespace {

std::string triple_name(const std::vector<Morphism>& ms, MorId h, MorId g, MorId f) {
  return ms[h].name + " o " + ms[g].name + " o " + ms[f].name;
}

}  // namespace

MorId FinCategory::compose(MorId g, MorId f) const {
  const MorId h = table_[static_cast<std::size_t>(g) * morphisms_.size() + f];
  if (h < 0) {
    throw Error(ErrorCode::BadEndpoints,
                "cannot compose " + morphisms_[g].name + " after " + morphisms_[f].name,
                {morphisms_[g].name, morphisms_[f].name});
  }
  return h;
}

std::optional<ObjId> FinCategory::find_object(std::string_view name) const {
  auto it = object_index_.find(std::string(name));
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCategory::find_morphism(std::string_view name) const {
  auto it = morphism_index_.find(std::string(name));
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

bool FinCategory::operator==(const FinCategory& other) const {
  if (objects_ != other.objects_ || identities_ != other.identities_ ||
      table_ != other.table_ || morphisms_.size() != other.morphisms_.size())
    return false;
  for (std::size_t m = 0; m < morphisms_.size(); ++m) {
    const auto& a = morphisms_[m];
    const auto& b = other.morphisms_[m];
    if (a.name != b.name || a.dom != b.dom || a.cod != b.cod) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

CategoryBuilder::CategoryBuilder(std::string name) : name_(std::move(name)) {}

ObjId CategoryBuilder::add_object(std::string name) {
  if (object_index_.contains(name))
    throw Error(ErrorCode::DuplicateIdentifier, "object " + name + " declared twice", {name});
  const ObjId id = static_cast<ObjId>(objects_.size());
  object_index_.emplace(name, id);
  objects_.push_back(std::move(name));
  identities_.push_back(-1);
  return id;
}

MorId CategoryBuilder::add_morphism(std::string name, ObjId dom, ObjId cod) {
  if (dom < 0 || cod < 0 || dom >= num_objects() || cod >= num_objects())
    throw Error(ErrorCode::BadEndpoints, "morphism " + name + " has unknown endpoints", {name});
  if (morphism_index_.contains(name))
    throw Error(ErrorCode::DuplicateIdentifier, "morphism " + name + " declared twice", {name});
  const MorId id = static_cast<MorId>(morphisms_.size());
  morphism_index_.emplace(name, id);
  morphisms_.push_back({std::move(name), dom, cod});
  return id;
}

MorId CategoryBuilder::add_identity(ObjId o, std::string name) {
  if (name.empty()) name = "id_" + objects_.at(o);
  const MorId m = add_morphism(std::move(name), o, o);
  set_identity(o, m);
  return m;
}

void CategoryBuilder::set_identity(ObjId o, MorId m) { identities_.at(o) = m; }

void CategoryBuilder::set_compose(MorId g, MorId f, MorId h) { composites_.emplace_back(g, f, h); }

CatRef CategoryBuilder::build() && {
  const std::size_t n_mor = morphisms_.size();
  auto cat = std::shared_ptr<FinCategory>(new FinCategory());
  cat->name_ = std::move(name_);

  for (std::size_t o = 0; o < objects_.size(); ++o) {
    const MorId i = identities_[o];
    if (i < 0)
      throw Error(ErrorCode::BadEndpoints, "object " + objects_[o] + " has no identity",
                  {objects_[o]});
    if (morphisms_[i].dom != static_cast<ObjId>(o) || morphisms_[i].cod != static_cast<ObjId>(o))
      throw Error(ErrorCode::BadEndpoints,
                  "identity " + morphisms_[i].name + " is not an endomorphism of " + objects_[o],
                  {morphisms_[i].name});
  }

  std::vector<MorId> table(n_mor * n_mor, -1);
  auto slot = [&](MorId g, MorId f) -> MorId& {
    return table[static_cast<std::size_t>(g) * n_mor + f];
  };
  for (const auto& [g, f, h] : composites_) {
    const auto& mg = morphisms_.at(g);
    const auto& mf = morphisms_.at(f);
    const auto& mh = morphisms_.at(h);
    if (mf.cod != mg.dom)
      throw Error(ErrorCode::BadEndpoints, mg.name + " and " + mf.name + " are not composable",
                  {mg.name, mf.name});
    if (mh.dom != mf.dom || mh.cod != mg.cod)
      throw Error(ErrorCode::BadEndpoints,
                  "composite " + mg.name + " o " + mf.name + " = " + mh.name + " has wrong endpoints",
                  {mg.name, mf.name, mh.name});
    MorId& cell = slot(g, f);
    if (cell >= 0 && cell != h)
      throw Error(ErrorCode::DuplicateIdentifier,
                  "composite " + mg.name + " o " + mf.name + " given twice", {mg.name, mf.name});
    cell = h;
  }

  for (std::size_t f = 0; f < n_mor; ++f) {
    const MorId fid = static_cast<MorId>(f);
    for (MorId left : {identities_[morphisms_[f].cod]}) {
      MorId& cell = slot(left, fid);
      if (cell < 0) cell = fid;
      if (cell != fid)
        throw Error(ErrorCode::UnitLaw, "identity law fails for " + morphisms_[f].name,
                    {morphisms_[left].name, morphisms_[f].name});
    }
    MorId& cell = slot(fid, identities_[morphisms_[f].dom]);
    if (cell < 0) cell = fid;
    if (cell != fid)
      throw Error(ErrorCode::UnitLaw, "identity law fails for " + morphisms_[f].name,
                  {morphisms_[f].name, morphisms_[identities_[morphisms_[f].dom]].name});
  }

  const std::size_t n_obj = objects_.size();
  std::vector<std::vector<MorId>> homs(n_obj * n_obj);
  std::vector<int> positions(n_mor);
  for (std::size_t m = 0; m < n_mor; ++m) {
    auto& h = homs[morphisms_[m].dom * n_obj + morphisms_[m].cod];
    positions[m] = static_cast<int>(h.size());
    h.push_back(static_cast<MorId>(m));
  }

  for (std::size_t f = 0; f < n_mor; ++f) {
    for (std::size_t g = 0; g < n_mor; ++g) {
      if (morphisms_[f].cod != morphisms_[g].dom) continue;
      if (slot(static_cast<MorId>(g), static_cast<MorId>(f)) < 0)
        throw Error(ErrorCode::MissingComposite,
                    "no composite for " + morphisms_[g].name + " o " + morphisms_[f].name,
                    {morphisms_[g].name, morphisms_[f].name});
    }
  }

  for (std::size_t f = 0; f < n_mor; ++f) {
    const ObjId b = morphisms_[f].cod;
    for (std::size_t c = 0; c < n_obj; ++c) {
      for (MorId g : homs[b * n_obj + c]) {
        const MorId gf = slot(g, static_cast<MorId>(f));
        for (std::size_t d = 0; d < n_obj; ++d) {
          for (MorId h : homs[c * n_obj + d]) {
            if (slot(h, gf) != slot(slot(h, g), static_cast<MorId>(f)))
              throw Error(ErrorCode::NonAssociative,
                          "associativity fails for " +
                              triple_name(morphisms_, h, g, static_cast<MorId>(f)),
                          {morphisms_[h].name, morphisms_[g].name, morphisms_[f].name});
          }
        }
      }
    }
  }

  std::vector<MorId> inverses(n_mor, -1);
  for (std::size_t m = 0; m < n_mor; ++m) {
    const ObjId a = morphisms_[m].dom;
    const ObjId b = morphisms_[m].cod;
    for (MorId g : homs[b * n_obj + a]) {
      if (slot(g, static_cast<MorId>(m)) == identities_[a] &&
          slot(static_cast<MorId>(m), g) == identities_[b]) {
        inverses[m] = g;
        break;
      }
    }
  }

  cat->objects_ = std::move(objects_);
  cat->morphisms_ = std::move(morphisms_);
  cat->identities_ = std::move(identities_);
  cat->table_ = std::move(table);
  cat->homs_ = std::move(homs);
  cat->hom_position_ = std::move(positions);
  cat->inverses_ = std::move(inverses);
  cat->object_index_ = std::move(object_index_);
  cat->morphism_index_ = std::move(morphism_index_);
  return cat;
}

// ---------------------------------------------------------------------------

CatRef validate_category(const RawCategory& raw) {
  CategoryBuilder b(raw.name);
  std::unordered_map<std::string, ObjId> objs;
  for (const auto& o : raw.objects) objs[o] = b.add_object(o);
  std::unordered_map<std::string, MorId> mors;
  for (const auto& o : raw.objects) mors["id_" + o] = b.add_identity(objs[o]);
  auto lookup_obj = [&](const std::string& n, const std::string& owner) {
    auto it = objs.find(n);
    if (it == objs.end())
      throw Error(ErrorCode::BadEndpoints, "morphism " + owner + " uses unknown object " + n,
                  {owner, n});
    return it->second;
  };
  for (const auto& m : raw.morphisms) {
    if (mors.contains(m.name))
      throw Error(ErrorCode::DuplicateIdentifier, "morphism " + m.name + " declared twice",
                  {m.name});
    mors[m.name] = b.add_morphism(m.name, lookup_obj(m.dom, m.name), lookup_obj(m.cod, m.name));
  }
  auto lookup_mor = [&](const std::string& n) {
    auto it = mors.find(n);
    if (it == mors.end())
      throw Error(ErrorCode::BadEndpoints, "composite uses unknown morphism " + n, {n});
    return it->second;
  };
  for (const auto& c : raw.composites) b.set_compose(lookup_mor(c.g), lookup_mor(c.f), lookup_mor(c.h));
  return std::move(b).build();
}

CatRef opposite(const CatRef& c) {
  CategoryBuilder b(c->name() + "^op");
  for (ObjId o = 0; o < c->num_objects(); ++o) b.add_object(c->object_name(o));
  for (MorId m = 0; m < c->num_morphisms(); ++m)
    b.add_morphism(c->morphism_name(m), c->cod(m), c->dom(m));
  for (ObjId o = 0; o < c->num_objects(); ++o) b.set_identity(o, c->id(o));
  for (MorId f = 0; f < c->num_morphisms(); ++f)
    for (MorId g = 0; g < c->num_morphisms(); ++g)
      if (c->composable(g, f)) b.set_compose(f, g, c->compose(g, f));
  return std::move(b).build();
}

CatRef product_category(const CatRef& a, const CatRef& bcat) {
  CategoryBuilder b(a->name() + " x " + bcat->name());
  const int nb = bcat->num_objects();
  const int mb = bcat->num_morphisms();
  for (ObjId x = 0; x < a->num_objects(); ++x)
    for (ObjId y = 0; y < nb; ++y)
      b.add_object("(" + a->object_name(x) + "," + bcat->object_name(y) + ")");
  for (MorId f = 0; f < a->num_morphisms(); ++f)
    for (MorId g = 0; g < mb; ++g)
      b.add_morphism("(" + a->morphism_name(f) + "," + bcat->morphism_name(g) + ")",
                     a->dom(f) * nb + bcat->dom(g), a->cod(f) * nb + bcat->cod(g));
  for (ObjId x = 0; x < a->num_objects(); ++x)
    for (ObjId y = 0; y < nb; ++y) b.set_identity(x * nb + y, a->id(x) * mb + bcat->id(y));
  for (MorId f1 = 0; f1 < a->num_morphisms(); ++f1)
    for (MorId f2 = 0; f2 < a->num_morphisms(); ++f2) {
      if (!a->composable(f2, f1)) continue;
      const MorId f21 = a->compose(f2, f1);
      for (MorId g1 = 0; g1 < mb; ++g1)
        for (MorId g2 = 0; g2 < mb; ++g2)
          if (bcat->composable(g2, g1))
            b.set_compose(f2 * mb + g2, f1 * mb + g1, f21 * mb + bcat->compose(g2, g1));
    }
  return std::move(b).build();
}

CatRef terminal_category(std::string name) {
  CategoryBuilder b(std::move(name));
  b.add_identity(b.add_object("*"));
  return std::move(b).build();
}

CatRef discrete_category(std::string name, const std::vector<std::string>& objects) {
  CategoryBuilder b(std::move(name));
  for (const auto& o : objects) b.add_identity(b.add_object(o));
  return std::move(b).build();
}

// ---------------------------------------------------------------------------

bool same_category(const CatRef& a, const CatRef& b) {
  return a == b || (a && b && *a == *b);
}

FinFunctor::FinFunctor(CatRef source, CatRef target, std::vector<ObjId> objects,
                       std::vector<MorId> morphisms)
    : source_(std::move(source)),
      target_(std::move(target)),
      objects_(std::move(objects)),
      morphisms_(std::move(morphisms)) {}

bool FinFunctor::operator==(const FinFunctor& other) const {
  return objects_ == other.objects_ && morphisms_ == other.morphisms_ &&
         same_category(source_, other.source_) && same_category(target_, other.target_);
}

FinFunctor validate_functor(CatRef source, CatRef target, std::vector<ObjId> objects,
                            std::vector<MorId> morphisms) {
  const auto& s = *source;
  const auto& t = *target;
  if (static_cast<int>(objects.size()) != s.num_objects() ||
      static_cast<int>(morphisms.size()) != s.num_morphisms())
    throw Error(ErrorCode::NotFunctorial, "functor maps are not total");
  for (ObjId o : objects)
    if (o < 0 || o >= t.num_objects())
      throw Error(ErrorCode::NotFunctorial, "object mapped outside the target");
  for (MorId m = 0; m < s.num_morphisms(); ++m) {
    const MorId fm = morphisms[m];
    if (fm < 0 || fm >= t.num_morphisms())
      throw Error(ErrorCode::NotFunctorial, "morphism mapped outside the target",
                  {s.morphism_name(m)});
    if (t.dom(fm) != objects[s.dom(m)] || t.cod(fm) != objects[s.cod(m)])
      throw Error(ErrorCode::NotFunctorial,
                  "endpoints of " + s.morphism_name(m) + " not preserved", {s.morphism_name(m)});
  }
  for (ObjId o = 0; o < s.num_objects(); ++o)
    if (morphisms[s.id(o)] != t.id(objects[o]))
      throw Error(ErrorCode::NotFunctorial, "identity of " + s.object_name(o) + " not preserved",
                  {s.morphism_name(s.id(o))});
  for (MorId f = 0; f < s.num_morphisms(); ++f)
    for (ObjId c = 0; c < s.num_objects(); ++c)
      for (MorId g : s.hom(s.cod(f), c))
        if (morphisms[s.compose(g, f)] != t.compose(morphisms[g], morphisms[f]))
          throw Error(ErrorCode::NotFunctorial,
                      "composite " + s.morphism_name(g) + " o " + s.morphism_name(f) +
                          " not preserved",
                      {s.morphism_name(g), s.morphism_name(f)});
  return FinFunctor(std::move(source), std::move(target), std::move(objects),
                    std::move(morphisms));
}

FinFunctor identity_functor(const CatRef& c) {
  std::vector<ObjId> objs(c->num_objects());
  std::vector<MorId> mors(c->num_morphisms());
  for (ObjId o = 0; o < c->num_objects(); ++o) objs[o] = o;
  for (MorId m = 0; m < c->num_morphisms(); ++m) mors[m] = m;
  return FinFunctor(c, c, std::move(objs), std::move(mors));
}

FinFunctor constant_functor(const CatRef& source, const CatRef& target, ObjId value) {
  return FinFunctor(source, target, std::vector<ObjId>(source->num_objects(), value),
                    std::vector<MorId>(source->num_morphisms(), target->id(value)));
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  if (!same_category(f.target(), g.source()))
    throw Error(ErrorCode::BadEndpoints, "functors are not composable");
  std::vector<ObjId> objs(f.object_map().size());
  std::vector<MorId> mors(f.morphism_map().size());
  for (std::size_t o = 0; o < objs.size(); ++o) objs[o] = g.obj(f.obj(static_cast<ObjId>(o)));
  for (std::size_t m = 0; m < mors.size(); ++m) mors[m] = g.mor(f.mor(static_cast<MorId>(m)));
  return FinFunctor(f.source(), g.target(), std::move(objs), std::move(mors));
}

// ---------------------------------------------------------------------------

NatTransformation::NatTransformation(FinFunctor source, FinFunctor target,
                                     std::vector<MorId> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {}

bool NatTransformation::is_iso() const {
  const auto& t = *source_.target();
  return std::all_of(components_.begin(), components_.end(),
                     [&](MorId m) { return t.is_iso(m); });
}

NatTransformation validate_nat(FinFunctor source, FinFunctor target,
                               std::vector<MorId> components, bool require_iso) {
  if (!same_category(source.source(), target.source()) ||
      !same_category(source.target(), target.target()))
    throw Error(ErrorCode::BadEndpoints, "transformation between functors of different shape");
  const auto& a = *source.source();
  const auto& b = *source.target();
  if (static_cast<int>(components.size()) != a.num_objects())
    throw Error(ErrorCode::BadEndpoints, "transformation components are not total");
  for (ObjId o = 0; o < a.num_objects(); ++o) {
    const MorId c = components[o];
    if (c < 0 || c >= b.num_morphisms() || b.dom(c) != source.obj(o) || b.cod(c) != target.obj(o))
      throw Error(ErrorCode::BadEndpoints, "component at " + a.object_name(o) + " has wrong endpoints",
                  {a.object_name(o)});
  }
  for (MorId m = 0; m < a.num_morphisms(); ++m) {
    const MorId lhs = b.compose(target.mor(m), components[a.dom(m)]);
    const MorId rhs = b.compose(components[a.cod(m)], source.mor(m));
    if (lhs != rhs)
      throw Error(ErrorCode::NotNatural, "naturality fails at " + a.morphism_name(m),
                  {a.morphism_name(m)});
  }
  if (require_iso)
    for (ObjId o = 0; o < a.num_objects(); ++o)
      if (!b.is_iso(components[o]))
        throw Error(ErrorCode::NotIso, "component at " + a.object_name(o) + " is not invertible",
                    {a.object_name(o)});
  return NatTransformation(std::move(source), std::move(target), std::move(components));
}

NatTransformation identity_nat(const FinFunctor& f) {
  std::vector<MorId> comps(f.object_map().size());
  for (std::size_t o = 0; o < comps.size(); ++o) comps[o] = f.target()->id(f.obj(static_cast<ObjId>(o)));
  return NatTransformation(f, f, std::move(comps));
}

NatTransformation vertical(const NatTransformation& beta, const NatTransformation& alpha) {
  if (!(alpha.target() == beta.source()))
    throw Error(ErrorCode::BadEndpoints, "transformations are not vertically composable");
  const auto& c = *alpha.source().target();
  std::vector<MorId> comps(alpha.components().size());
  for (std::size_t o = 0; o < comps.size(); ++o)
    comps[o] = c.compose(beta.at(static_cast<ObjId>(o)), alpha.at(static_cast<ObjId>(o)));
  return NatTransformation(alpha.source(), beta.target(), std::move(comps));
}

NatTransformation whisker(const FinFunctor& h, const NatTransformation& alpha) {
  std::vector<MorId> comps(alpha.components().size());
  for (std::size_t o = 0; o < comps.size(); ++o) comps[o] = h.mor(alpha.at(static_cast<ObjId>(o)));
  return NatTransformation(compose(h, alpha.source()), compose(h, alpha.target()), std::move(comps));
}

NatTransformation whisker(const NatTransformation& alpha, const FinFunctor& k) {
  std::vector<MorId> comps(k.object_map().size());
  for (std::size_t o = 0; o < comps.size(); ++o) comps[o] = alpha.at(k.obj(static_cast<ObjId>(o)));
  return NatTransformation(compose(alpha.source(), k), compose(alpha.target(), k), std::move(comps));
}

NatTransformation inverse(const NatTransformation& alpha) {
  const auto& c = *alpha.source().target();
  std::vector<MorId> comps(alpha.components().size());
  for (std::size_t o = 0; o < comps.size(); ++o) {
    auto inv = c.inverse(alpha.at(static_cast<ObjId>(o)));
    if (!inv) throw Error(ErrorCode::NotIso, "transformation is not invertible");
    comps[o] = *inv;
  }
  return NatTransformation(alpha.target(), alpha.source(), std::move(comps));
}

// ---------------------------------------------------------------------------

const char* to_string(FilteredCondition c) noexcept {
  switch (c) {
    case FilteredCondition::NonEmpty: return "NonEmpty";
    case FilteredCondition::Cospan: return "Cospan";
    case FilteredCondition::Equalize: return "Equalize";
  }
  return "?";
}

namespace {

bool has_cospan(const FinCategory& c, ObjId i, ObjId j) {
  for (ObjId k = 0; k < c.num_objects(); ++k)
    if (!c.hom(i, k).empty() && !c.hom(j, k).empty()) return true;
  return false;
}

bool has_equalizer(const FinCategory& c, MorId s, MorId s2) {
  const ObjId j = c.cod(s);
  for (ObjId k = 0; k < c.num_objects(); ++k)
    for (MorId h : c.hom(j, k))
      if (c.compose(h, s) == c.compose(h, s2)) return true;
  return false;
}

}  // namespace

FilteredWitness is_filtered(const FinCategory& c) {
  if (c.num_objects() == 0) return {false, FilteredViolation{FilteredCondition::NonEmpty, {}, {}}};
  for (ObjId i = 0; i < c.num_objects(); ++i)
    for (ObjId j = i; j < c.num_objects(); ++j)
      if (!has_cospan(c, i, j))
        return {false, FilteredViolation{FilteredCondition::Cospan, {i, j}, {}}};
  for (ObjId i = 0; i < c.num_objects(); ++i)
    for (ObjId j = 0; j < c.num_objects(); ++j) {
      const auto& h = c.hom(i, j);
      for (std::size_t a = 0; a < h.size(); ++a)
        for (std::size_t b = a + 1; b < h.size(); ++b)
          if (!has_equalizer(c, h[a], h[b]))
            return {false, FilteredViolation{FilteredCondition::Equalize, {i, j}, {h[a], h[b]}}};
    }
  return {true, std::nullopt};
}

bool replays(const FinCategory& c, const FilteredViolation& v) {
  switch (v.condition) {
    case FilteredCondition::NonEmpty:
      return c.num_objects() == 0;
    case FilteredCondition::Cospan:
      return v.objects.size() == 2 && !has_cospan(c, v.objects[0], v.objects[1]);
    case FilteredCondition::Equalize:
      return v.morphisms.size() == 2 && c.dom(v.morphisms[0]) == c.dom(v.morphisms[1]) &&
             c.cod(v.morphisms[0]) == c.cod(v.morphisms[1]) &&
             !has_equalizer(c, v.morphisms[0], v.morphisms[1]);
  }
  return false;
}

// ---------------------------------------------------------------------------

std::optional<int> CospanCategory::find(ObjId apex, MorId left, MorId right) const {
  for (std::size_t k = 0; k < objects.size(); ++k)
    if (objects[k].apex == apex && objects[k].left == left && objects[k].right == right)
      return static_cast<int>(k);
  return std::nullopt;
}

std::optional<MorId> CospanCategory::morphism(int from, int to, MorId t) const {
  for (MorId m : category->hom(from, to))
    if (labels[m] == t) return m;
  return std::nullopt;
}

CospanCategory cospan_category(const CatRef& index, ObjId i, ObjId i2) {
  const auto& c = *index;
  if (i < 0 || i2 < 0 || i >= c.num_objects() || i2 >= c.num_objects())
    throw Error(ErrorCode::UnknownObject, "cospan endpoints are not objects of " + c.name());
  CospanCategory result;
  result.left_end = i;
  result.right_end = i2;
  CategoryBuilder b(c.name() + "_{" + c.object_name(i) + "," + c.object_name(i2) + "}");
  for (ObjId apex = 0; apex < c.num_objects(); ++apex)
    for (MorId s : c.hom(i, apex))
      for (MorId s2 : c.hom(i2, apex)) {
        b.add_object("(" + c.object_name(apex) + "," + c.morphism_name(s) + "," +
                     c.morphism_name(s2) + ")");
        result.objects.push_back({apex, s, s2});
      }
  const int n = static_cast<int>(result.objects.size());
  std::vector<std::vector<MorId>> by_pair(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& ox = result.objects[x];
      const auto& oy = result.objects[y];
      for (MorId t : c.hom(ox.apex, oy.apex)) {
        if (c.compose(t, ox.left) != oy.left || c.compose(t, ox.right) != oy.right) continue;
        const MorId m = b.add_morphism(
            c.morphism_name(t) + ":" + std::to_string(x) + "->" + std::to_string(y), x, y);
        result.labels.push_back(t);
        by_pair[static_cast<std::size_t>(x) * n + y].push_back(m);
        if (x == y && c.is_identity(t)) b.set_identity(x, m);
      }
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (MorId f : by_pair[static_cast<std::size_t>(x) * n + y])
        for (int z = 0; z < n; ++z)
          for (MorId g : by_pair[static_cast<std::size_t>(y) * n + z]) {
            const MorId t = c.compose(result.labels[g], result.labels[f]);
            for (MorId h : by_pair[static_cast<std::size_t>(x) * n + z])
              if (result.labels[h] == t) {
                b.set_compose(g, f, h);
                break;
              }
          }
  result.category = std::move(b).build();
  if (n > 0 && is_filtered(c).verdict) {
    if (!is_filtered(*result.category).verdict)
      throw Error(ErrorCode::InternalInvariant,
                  "cospan category of a filtered index is not filtered");
    result.filtered_checked = true;
  }
  return result;
}

// ---------------------------------------------------------------------------

Cocone cocone_and_equalize(const FinCategory& index, const FilteredWitness& witness,
                           std::span<const ObjId> tips,
                           std::span<const EqualizeConstraint> constraints) {
  if (!witness.verdict)
    throw Error(ErrorCode::NotFiltered, "cocone search requires a filtered index");
  return cocone_and_equalize_unchecked(index, tips, constraints);
}

Cocone cocone_and_equalize_unchecked(const FinCategory& c, std::span<const ObjId> tips,
                                     std::span<const EqualizeConstraint> constraints) {
  if (tips.empty()) throw Error(ErrorCode::SearchExhausted, "cocone over no tips");
  Cocone out;
  out.vertex = tips[0];
  out.legs.push_back(c.id(tips[0]));
  for (std::size_t t = 1; t < tips.size(); ++t) {
    auto same = std::find(tips.begin(), tips.begin() + static_cast<std::ptrdiff_t>(t), tips[t]);
    if (same != tips.begin() + static_cast<std::ptrdiff_t>(t)) {
      out.legs.push_back(out.legs[static_cast<std::size_t>(same - tips.begin())]);
      continue;
    }
    bool found = false;
    for (ObjId k = 0; k < c.num_objects() && !found; ++k)
      for (MorId a : c.hom(out.vertex, k)) {
        const auto& into = c.hom(tips[t], k);
        if (into.empty()) continue;
        for (auto& leg : out.legs) leg = c.compose(a, leg);
        out.legs.push_back(into.front());
        out.vertex = k;
        found = true;
        break;
      }
    if (!found)
      throw Error(ErrorCode::SearchExhausted,
                  "no cospan for " + c.object_name(out.vertex) + " and " + c.object_name(tips[t]));
  }

  for (const auto& k : constraints) {
    if (k.first_tip >= tips.size() || k.second_tip >= tips.size() ||
        c.cod(k.first) != tips[k.first_tip] || c.cod(k.second) != tips[k.second_tip] ||
        c.dom(k.first) != c.dom(k.second))
      throw Error(ErrorCode::BadEndpoints, "malformed equalization constraint");
  }
  const int bound = static_cast<int>(constraints.size()) + c.num_morphisms();
  while (true) {
    const EqualizeConstraint* failing = nullptr;
    for (const auto& k : constraints)
      if (c.compose(out.legs[k.first_tip], k.first) != c.compose(out.legs[k.second_tip], k.second)) {
        failing = &k;
        break;
      }
    if (!failing) return out;
    if (out.rounds >= bound)
      throw Error(ErrorCode::SearchExhausted, "equalization did not converge");
    const MorId x = c.compose(out.legs[failing->first_tip], failing->first);
    const MorId y = c.compose(out.legs[failing->second_tip], failing->second);
    std::optional<MorId> h;
    for (ObjId k = 0; k < c.num_objects() && !h; ++k)
      for (MorId cand : c.hom(out.vertex, k))
        if (c.compose(cand, x) == c.compose(cand, y)) {
          h = cand;
          break;
        }
    if (!h)
      throw Error(ErrorCode::SearchExhausted,
                  "no morphism equalizes " + c.morphism_name(x) + " and " + c.morphism_name(y));
    for (auto& leg : out.legs) leg = c.compose(*h, leg);
    out.vertex = c.cod(*h);
    ++out.rounds;
  }
}

// ---------------------------------------------------------------------------

std::optional<FinFunctor> isomorphism_by_names(const CatRef& from, const CatRef& to) {
  if (from->num_objects() != to->num_objects() || from->num_morphisms() != to->num_morphisms())
    return std::nullopt;
  std::vector<ObjId> objs(from->num_objects());
  for (ObjId o = 0; o < from->num_objects(); ++o) {
    auto t = to->find_object(from->object_name(o));
    if (!t) return std::nullopt;
    objs[o] = *t;
  }
  std::vector<MorId> mors(from->num_morphisms());
  std::vector<bool> hit(to->num_morphisms(), false);
  for (MorId m = 0; m < from->num_morphisms(); ++m) {
    MorId t;
    if (from->is_identity(m)) {
      t = to->id(objs[from->dom(m)]);
    } else {
      auto found = to->find_morphism(from->morphism_name(m));
      if (!found || to->is_identity(*found)) return std::nullopt;
      t = *found;
    }
    if (hit[t]) return std::nullopt;
    hit[t] = true;
    mors[m] = t;
  }
  try {
    return validate_functor(from, to, std::move(objs), std::move(mors));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace twocat
