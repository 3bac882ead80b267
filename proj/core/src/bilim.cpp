#include "twocat/bilim.hpp"

#include <tuple>

namespace twocat {

namespace {

// For every morphism m of K, the composable pairs (m1, m2) whose three
// morphisms m1, m2, m2 o m1 have largest id m.
std::vector<std::vector<std::pair<MorId, MorId>>> pairs_by_last(const FinCategory& k) {
  std::vector<std::vector<std::pair<MorId, MorId>>> out(k.num_morphisms());
  for (MorId m1 = 0; m1 < k.num_morphisms(); ++m1)
    for (ObjId c = 0; c < k.num_objects(); ++c)
      for (MorId m2 : k.hom(k.cod(m1), c)) {
        const MorId last = std::max({m1, m2, k.compose(m2, m1)});
        out[last].push_back({m1, m2});
      }
  return out;
}

bool unit_holds(const PseudoFunctor& c, ObjId b, ObjId xb, MorId theta_id) {
  const auto& cb = *c.at(b);
  return cb.compose(c.unit_at(b, xb), theta_id) == cb.id(xb);
}

bool pair_holds(const PseudoFunctor& c, const std::vector<ObjId>& x, const std::vector<MorId>& theta,
                MorId m1, MorId m2) {
  const auto& k = *c.index();
  const auto& cc = *c.at(k.cod(m2));
  const MorId lhs = cc.compose(c.on(m2).mor(theta[m1]), theta[m2]);
  const MorId rhs = cc.compose(c.comp_at(m2, m1, x[k.dom(m1)]), theta[k.compose(m2, m1)]);
  return lhs == rhs;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t n = 0; n < parts.size(); ++n) out += (n ? "," : "") + parts[n];
  return out;
}

}  // namespace

std::optional<std::string> check_object_conditions(const PseudoFunctor& c, const LimObject& x) {
  const auto& k = *c.index();
  if (static_cast<int>(x.x.size()) != k.num_objects() || static_cast<int>(x.theta.size()) != k.num_morphisms())
    return "family is not total";
  for (ObjId o = 0; o < k.num_objects(); ++o)
    if (x.x[o] < 0 || x.x[o] >= c.at(o)->num_objects()) return "no object at " + k.object_name(o);
  for (MorId m = 0; m < k.num_morphisms(); ++m) {
    const auto& cb = *c.at(k.cod(m));
    const MorId t = x.theta[m];
    if (t < 0 || t >= cb.num_morphisms() || cb.dom(t) != x.x[k.cod(m)] ||
        cb.cod(t) != c.on(m).obj(x.x[k.dom(m)]))
      return "theta at " + k.morphism_name(m) + " has wrong endpoints";
    if (!cb.is_iso(t)) return "theta at " + k.morphism_name(m) + " is not invertible";
  }
  for (ObjId o = 0; o < k.num_objects(); ++o)
    if (!unit_holds(c, o, x.x[o], x.theta[k.id(o)])) return "unit condition fails at " + k.object_name(o);
  for (MorId m1 = 0; m1 < k.num_morphisms(); ++m1)
    for (ObjId o = 0; o < k.num_objects(); ++o)
      for (MorId m2 : k.hom(k.cod(m1), o))
        if (!pair_holds(c, x.x, x.theta, m1, m2))
          return "composition condition fails at (" + k.morphism_name(m2) + ", " + k.morphism_name(m1) + ")";
  return std::nullopt;
}

std::optional<int> TwoLimCategory::find(const LimObject& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string TwoLimCategory::object_label(int o) const {
  const auto& k = *system_.index();
  const LimObject& x = objects_[o];
  std::vector<std::string> xs, ts;
  for (ObjId j = 0; j < k.num_objects(); ++j) xs.push_back(system_.at(j)->object_name(x.x[j]));
  for (MorId m = 0; m < k.num_morphisms(); ++m)
    if (!k.is_identity(m)) ts.push_back(system_.at(k.cod(m))->morphism_name(x.theta[m]));
  return "(" + join(xs) + (ts.empty() ? "" : "|" + join(ts)) + ")";
}

SetDiagram TwoLimCategory::hom_diagram(int a, int b) const {
  const auto& k = *system_.index();
  const LimObject& x = objects_[a];
  const LimObject& y = objects_[b];
  SetDiagram d{system_.index(), {}, {}};
  for (ObjId j = 0; j < k.num_objects(); ++j) d.elements.push_back(system_.at(j)->hom(x.x[j], y.x[j]));
  for (MorId m = 0; m < k.num_morphisms(); ++m) {
    const auto& cb = *system_.at(k.cod(m));
    const MorId back = *cb.inverse(y.theta[m]);
    std::vector<int> act;
    for (MorId h : d.elements[k.dom(m)])
      act.push_back(cb.position_in_hom(cb.compose(back, cb.compose(system_.on(m).mor(h), x.theta[m]))));
    d.actions.push_back(std::move(act));
  }
  return d;
}

const LimSet& TwoLimCategory::hom(int a, int b) const {
  auto it = homs_.find({a, b});
  if (it == homs_.end()) it = homs_.emplace(std::pair{a, b}, LimSet(hom_diagram(a, b))).first;
  return it->second;
}

bool TwoLimCategory::is_morphism(int a, int b, const Family& h) const {
  const auto& k = *system_.index();
  const LimObject& x = objects_[a];
  const LimObject& y = objects_[b];
  if (static_cast<int>(h.size()) != k.num_objects()) return false;
  for (ObjId j = 0; j < k.num_objects(); ++j) {
    const auto& cj = *system_.at(j);
    if (h[j] < 0 || h[j] >= cj.num_morphisms() || cj.dom(h[j]) != x.x[j] || cj.cod(h[j]) != y.x[j])
      return false;
  }
  for (MorId m = 0; m < k.num_morphisms(); ++m) {
    const auto& cb = *system_.at(k.cod(m));
    if (cb.compose(system_.on(m).mor(h[k.dom(m)]), x.theta[m]) != cb.compose(y.theta[m], h[k.cod(m)]))
      return false;
  }
  return true;
}

Family TwoLimCategory::identity(int a) const {
  Family out;
  for (ObjId j = 0; j < system_.index()->num_objects(); ++j)
    out.push_back(system_.at(j)->id(objects_[a].x[j]));
  return out;
}

Family TwoLimCategory::compose(const Family& g, const Family& f) const {
  Family out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = system_.at(static_cast<ObjId>(j))->compose(g[j], f[j]);
  return out;
}

const CatRef& TwoLimCategory::base() const {
  if (!base_) throw Error(ErrorCode::InternalInvariant, "2-limit was not materialized");
  return base_;
}

MorId TwoLimCategory::morphism_of(int a, int b, int family_index) const {
  base();
  return first_morphism_[static_cast<std::size_t>(a) * objects_.size() + b] + family_index;
}

std::optional<MorId> TwoLimCategory::morphism_of(int a, int b, const Family& h) const {
  const auto& k = *system_.index();
  if (!is_morphism(a, b, h)) return std::nullopt;
  std::vector<int> positions;
  for (ObjId j = 0; j < k.num_objects(); ++j) positions.push_back(system_.at(j)->position_in_hom(h[j]));
  auto pos = hom(a, b).find(positions);
  if (!pos) return std::nullopt;
  return morphism_of(a, b, *pos);
}

const Family& TwoLimCategory::family_of(MorId m) const {
  base();
  return families_[m];
}

const FinFunctor& TwoLimCategory::projection(ObjId k) const {
  base();
  return projections_[k];
}

const NatTransformation& TwoLimCategory::cell(MorId m) const {
  base();
  return cells_[m];
}

TwoLimCategory build_2lim(PseudoFunctor c, LimOptions options) {
  TwoLimCategory out(std::move(c));
  const PseudoFunctor& sys = out.system_;
  const auto& k = *sys.index();
  const int n = k.num_objects();
  const int mors = k.num_morphisms();
  const auto pairs = pairs_by_last(k);

  // Objects of each c(j), and per morphism m, the isos X_b -> c(m) X_a.
  auto isos = [&](MorId m, ObjId xa, ObjId xb) {
    const auto& cb = *sys.at(k.cod(m));
    std::vector<MorId> found;
    for (MorId t : cb.hom(xb, sys.on(m).obj(xa)))
      if (cb.is_iso(t)) found.push_back(t);
    return found;
  };
  std::vector<std::vector<MorId>> check_at(n);
  for (MorId m = 0; m < mors; ++m) check_at[std::max(k.dom(m), k.cod(m))].push_back(m);

  LimObject cur{std::vector<ObjId>(n, 0), std::vector<MorId>(mors, -1)};
  auto choose_theta = [&](auto& self, MorId m) -> void {
    if (m == mors) {
      if (out.objects_.size() >= options.max_objects)
        throw Error(ErrorCode::SearchExhausted,
                    "2-limit has more than " + std::to_string(options.max_objects) + " objects");
      out.index_.emplace(cur, static_cast<int>(out.objects_.size()));
      out.objects_.push_back(cur);
      return;
    }
    const ObjId a = k.dom(m);
    const ObjId b = k.cod(m);
    std::vector<MorId> options_here;
    if (k.is_identity(m))
      options_here.push_back(*sys.at(b)->inverse(sys.unit_at(b, cur.x[b])));
    else
      options_here = isos(m, cur.x[a], cur.x[b]);
    for (MorId t : options_here) {
      cur.theta[m] = t;
      bool ok = true;
      for (auto [m1, m2] : pairs[m])
        if (!pair_holds(sys, cur.x, cur.theta, m1, m2)) {
          ok = false;
          break;
        }
      if (ok) self(self, m + 1);
    }
    cur.theta[m] = -1;
  };
  auto choose_x = [&](auto& self, ObjId j) -> void {
    if (j == n) {
      choose_theta(choose_theta, 0);
      return;
    }
    for (ObjId x = 0; x < sys.at(j)->num_objects(); ++x) {
      cur.x[j] = x;
      bool ok = true;
      for (MorId m : check_at[j])
        if (!k.is_identity(m) && isos(m, cur.x[k.dom(m)], cur.x[k.cod(m)]).empty()) {
          ok = false;
          break;
        }
      if (ok) self(self, j + 1);
    }
  };
  choose_x(choose_x, 0);

  if (!options.materialize) return out;

  const int objs = out.num_objects();
  CategoryBuilder builder("2lim(" + k.name() + ")");
  for (int a = 0; a < objs; ++a) builder.add_object(out.object_label(a));
  out.first_morphism_.assign(static_cast<std::size_t>(objs) * objs, 0);
  for (int a = 0; a < objs; ++a)
    for (int b = 0; b < objs; ++b) {
      const LimSet& h = out.hom(a, b);
      out.first_morphism_[static_cast<std::size_t>(a) * objs + b] = builder.num_morphisms();
      const SetDiagram d = out.hom_diagram(a, b);
      for (int f = 0; f < h.size(); ++f) {
        Family fam;
        for (ObjId j = 0; j < n; ++j) fam.push_back(d.elements[j][h.family(f)[j]]);
        builder.add_morphism(out.object_label(a) + "->" + out.object_label(b) + "." + std::to_string(f), a, b);
        out.families_.push_back(std::move(fam));
      }
    }
  // hom sets are now cached; composites are found by position lookups.
  auto locate = [&](int a, int b, const Family& fam) {
    std::vector<int> pos;
    for (ObjId j = 0; j < n; ++j) pos.push_back(sys.at(j)->position_in_hom(fam[j]));
    auto hit = out.homs_.at({a, b}).find(pos);
    if (!hit) throw Error(ErrorCode::InternalInvariant, "composite family is not compatible");
    return out.first_morphism_[static_cast<std::size_t>(a) * objs + b] + *hit;
  };
  for (int a = 0; a < objs; ++a) builder.set_identity(a, locate(a, a, out.identity(a)));
  for (int a = 0; a < objs; ++a)
    for (int b = 0; b < objs; ++b)
      for (int f = 0; f < out.homs_.at({a, b}).size(); ++f) {
        const MorId fm = out.first_morphism_[static_cast<std::size_t>(a) * objs + b] + f;
        for (int c2 = 0; c2 < objs; ++c2)
          for (int g = 0; g < out.homs_.at({b, c2}).size(); ++g) {
            const MorId gm = out.first_morphism_[static_cast<std::size_t>(b) * objs + c2] + g;
            builder.set_compose(gm, fm, locate(a, c2, out.compose(out.families_[gm], out.families_[fm])));
          }
      }
  try {
    out.base_ = std::move(builder).build();
  } catch (const Error& e) {
    throw Error(ErrorCode::InternalInvariant, std::string("2-limit composition is not lawful: ") + e.what(),
                e.witness());
  }

  for (ObjId j = 0; j < n; ++j) {
    std::vector<ObjId> om;
    std::vector<MorId> mm;
    for (int a = 0; a < objs; ++a) om.push_back(out.objects_[a].x[j]);
    for (const Family& f : out.families_) mm.push_back(f[j]);
    out.projections_.push_back(validate_functor(out.base_, sys.at(j), std::move(om), std::move(mm)));
  }
  for (MorId m = 0; m < mors; ++m) {
    std::vector<MorId> comps;
    for (int a = 0; a < objs; ++a) comps.push_back(out.objects_[a].theta[m]);
    out.cells_.push_back(validate_nat(out.projections_[k.cod(m)], compose(sys.on(m), out.projections_[k.dom(m)]),
                                      std::move(comps), true));
  }
  return out;
}

PseudoCone validate_cone(const PseudoFunctor& c, CatRef source, std::vector<FinFunctor> legs,
                         std::map<MorId, std::vector<MorId>> cells) {
  const auto& k = *c.index();
  if (static_cast<int>(legs.size()) != k.num_objects())
    throw Error(ErrorCode::NotACone, "cone legs are not total");
  for (ObjId j = 0; j < k.num_objects(); ++j)
    if (!same_category(legs[j].source(), source) || !same_category(legs[j].target(), c.at(j)))
      throw Error(ErrorCode::NotACone, "cone leg at " + k.object_name(j) + " has wrong endpoints");
  PseudoCone cone{source, std::move(legs), {}};
  for (MorId m = 0; m < k.num_morphisms(); ++m) {
    const FinFunctor& from = cone.legs[k.cod(m)];
    const FinFunctor to = compose(c.on(m), cone.legs[k.dom(m)]);
    std::vector<MorId> comps;
    if (auto it = cells.find(m); it != cells.end()) {
      comps = it->second;
    } else {
      if (!(from == to))
        throw Error(ErrorCode::NotACone, "cell at " + k.morphism_name(m) + " omitted but legs differ",
                    {k.morphism_name(m)});
      for (ObjId z = 0; z < source->num_objects(); ++z) comps.push_back(c.at(k.cod(m))->id(from.obj(z)));
    }
    try {
      cone.cells.push_back(validate_nat(from, to, std::move(comps), true));
    } catch (const Error& e) {
      throw Error(ErrorCode::NotACone, "cell at " + k.morphism_name(m) + ": " + e.what(), e.witness());
    }
  }
  for (ObjId z = 0; z < source->num_objects(); ++z) {
    LimObject x;
    for (ObjId j = 0; j < k.num_objects(); ++j) x.x.push_back(cone.legs[j].obj(z));
    for (MorId m = 0; m < k.num_morphisms(); ++m) x.theta.push_back(cone.cells[m].at(z));
    if (auto bad = check_object_conditions(c, x))
      throw Error(ErrorCode::NotACone, *bad + " at " + source->object_name(z), {source->object_name(z)});
  }
  return cone;
}

LimValuedFunctor strong_factor_lim(const TwoLimCategory& lim, const PseudoCone& cone) {
  const auto& k = *lim.system().index();
  const auto& src = *cone.source;
  LimValuedFunctor f{cone.source, {}, {}};
  for (ObjId z = 0; z < src.num_objects(); ++z) {
    LimObject x;
    for (ObjId j = 0; j < k.num_objects(); ++j) x.x.push_back(cone.legs[j].obj(z));
    for (MorId m = 0; m < k.num_morphisms(); ++m) x.theta.push_back(cone.cells[m].at(z));
    auto hit = lim.find(x);
    if (!hit) throw Error(ErrorCode::NotACone, "cone does not land in the 2-limit at " + src.object_name(z));
    f.objects.push_back(*hit);
  }
  for (MorId g = 0; g < src.num_morphisms(); ++g) {
    Family fam;
    for (ObjId j = 0; j < k.num_objects(); ++j) fam.push_back(cone.legs[j].mor(g));
    if (!lim.is_morphism(f.objects[src.dom(g)], f.objects[src.cod(g)], fam))
      throw Error(ErrorCode::NotACone, "cone cells are not natural at " + src.morphism_name(g),
                  {src.morphism_name(g)});
    f.morphisms.push_back(std::move(fam));
  }
  return f;
}

bool is_functorial(const TwoLimCategory& lim, const LimValuedFunctor& f) {
  const auto& src = *f.source;
  for (ObjId z = 0; z < src.num_objects(); ++z)
    if (f.morphisms[src.id(z)] != lim.identity(f.objects[z])) return false;
  for (MorId g = 0; g < src.num_morphisms(); ++g) {
    if (!lim.is_morphism(f.objects[src.dom(g)], f.objects[src.cod(g)], f.morphisms[g])) return false;
    for (ObjId z = 0; z < src.num_objects(); ++z)
      for (MorId h : src.hom(src.cod(g), z))
        if (f.morphisms[src.compose(h, g)] != lim.compose(f.morphisms[h], f.morphisms[g])) return false;
  }
  return true;
}

FinFunctor as_functor(const TwoLimCategory& lim, const LimValuedFunctor& f) {
  const auto& src = *f.source;
  std::vector<MorId> mors;
  for (MorId g = 0; g < src.num_morphisms(); ++g) {
    auto m = lim.morphism_of(f.objects[src.dom(g)], f.objects[src.cod(g)], f.morphisms[g]);
    if (!m) throw Error(ErrorCode::InternalInvariant, "family is not a morphism of the 2-limit");
    mors.push_back(*m);
  }
  return validate_functor(f.source, lim.base(), f.objects, std::move(mors));
}

FinFunctor induced_functor_lim(const TwoLimCategory& from, const TwoLimCategory& to,
                               const PseudoNatural& u) {
  const auto& k = *from.system().index();
  if (!same_category(from.system().index(), to.system().index()))
    throw Error(ErrorCode::IncompatibleCells, "2-limits over different indices");
  LimValuedFunctor f{from.base(), {}, {}};
  for (int a = 0; a < from.num_objects(); ++a) {
    const LimObject& x = from.object(a);
    LimObject y;
    for (ObjId j = 0; j < k.num_objects(); ++j) y.x.push_back(u.components[j].obj(x.x[j]));
    for (MorId m = 0; m < k.num_morphisms(); ++m) {
      const auto& cb = *to.system().at(k.cod(m));
      y.theta.push_back(cb.compose(u.cells[m].at(x.x[k.dom(m)]), u.components[k.cod(m)].mor(x.theta[m])));
    }
    auto hit = to.find(y);
    if (!hit) throw Error(ErrorCode::IncompatibleCells, "induced object violates the limit conditions");
    f.objects.push_back(*hit);
  }
  const auto& base = *from.base();
  for (MorId g = 0; g < base.num_morphisms(); ++g) {
    const Family& h = from.family_of(g);
    Family image;
    for (ObjId j = 0; j < k.num_objects(); ++j) image.push_back(u.components[j].mor(h[j]));
    f.morphisms.push_back(std::move(image));
  }
  return as_functor(to, f);
}

}  // namespace twocat
