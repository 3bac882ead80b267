#include "twocat/bicolim.hpp"

#include <array>

namespace twocat {

const CospanCategory& TwoColimCategory::cospan(ObjId i, ObjId i2) const {
  return cospans_[static_cast<std::size_t>(i) * system_.index()->num_objects() + i2];
}

ColimRep TwoColimCategory::representative(MorId m) const {
  const auto& c = *base_;
  return as_rep(c.dom(m), c.cod(m), hom_classes(c.dom(m), c.cod(m)).representative(class_of(m)));
}

ColimRep TwoColimCategory::as_rep(ObjId a, ObjId b, SetElement e) const {
  return {e.object, hom_diagram(a, b).elements[e.object][e.position]};
}

MorId TwoColimCategory::transport(MorId v, MorId s, MorId s2, ObjId x, ObjId y, MorId h) const {
  const auto& idx = *system_.index();
  const auto& target = *system_.at(idx.cod(v));
  const MorId moved = system_.on(v).mor(h);
  return target.compose(system_.comp_inv_at(v, s2, y),
                        target.compose(moved, system_.comp_at(v, s, x)));
}

int TwoColimCategory::compose_reps(ObjId a, ObjId b, ObjId c, ColimRep g, ColimRep f) const {
  const auto& idx = *system_.index();
  const ObjId ia = objects_[a].index;
  const ObjId ib = objects_[b].index;
  const ObjId ic = objects_[c].index;
  const CospanObject& cf = cospan(ia, ib).objects.at(f.cospan_object);
  const CospanObject& cg = cospan(ib, ic).objects.at(g.cospan_object);

  const std::array<ObjId, 2> tips{cf.apex, cg.apex};
  const std::array<EqualizeConstraint, 1> meet{{{0, cf.right, 1, cg.left}}};
  const Cocone k = checked_search_ ? cocone_and_equalize(idx, filtered_, tips, meet)
                                   : cocone_and_equalize_unchecked(idx, tips, meet);
  const MorId v = k.legs[0];
  const MorId w = k.legs[1];

  const MorId f2 = transport(v, cf.left, cf.right, objects_[a].value, objects_[b].value, f.morphism);
  const MorId g2 = transport(w, cg.left, cg.right, objects_[b].value, objects_[c].value, g.morphism);
  const auto& vertex = *system_.at(k.vertex);
  const MorId h = vertex.compose(g2, f2);

  auto where = cospan(ia, ic).find(k.vertex, idx.compose(v, cf.left), idx.compose(w, cg.right));
  if (!where) throw Error(ErrorCode::InternalInvariant, "composite lands outside the cospan category");
  return hom_classes(a, c).class_of(*where, vertex.position_in_hom(h));
}

namespace {

std::string object_label(const PseudoFunctor& b, ObjId i, ObjId x) {
  return "(" + b.index()->object_name(i) + "," + b.at(i)->object_name(x) + ")";
}

}  // namespace

TwoColimCategory build_2colim(PseudoFunctor b, ColimOptions options) {
  TwoColimCategory out(std::move(b));
  const PseudoFunctor& sys = out.system_;
  const CatRef& index = sys.index();
  const auto& idx = *index;
  out.filtered_ = is_filtered(idx);
  if (options.require_filtered && !out.filtered_.verdict)
    throw Error(ErrorCode::NotFiltered, "index " + idx.name() + " is not filtered");
  out.checked_search_ = out.filtered_.verdict;

  for (ObjId i = 0; i < idx.num_objects(); ++i) {
    out.object_offset_.push_back(static_cast<ObjId>(out.objects_.size()));
    for (ObjId x = 0; x < sys.at(i)->num_objects(); ++x) out.objects_.push_back({i, x});
  }
  for (ObjId i = 0; i < idx.num_objects(); ++i)
    for (ObjId i2 = 0; i2 < idx.num_objects(); ++i2) out.cospans_.push_back(cospan_category(index, i, i2));

  const int n = out.num_objects();
  out.homs_.reserve(static_cast<std::size_t>(n) * n);
  MorId next = 0;
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb) {
      const auto [i, x] = out.objects_[a];
      const auto [i2, y] = out.objects_[bb];
      const CospanCategory& cs = out.cospan(i, i2);
      SetDiagram d{cs.category, {}, {}};
      for (const auto& co : cs.objects)
        d.elements.push_back(sys.at(co.apex)->hom(sys.on(co.left).obj(x), sys.on(co.right).obj(y)));
      for (MorId t = 0; t < cs.category->num_morphisms(); ++t) {
        const auto& from = cs.objects[cs.category->dom(t)];
        const auto& target = *sys.at(cs.objects[cs.category->cod(t)].apex);
        std::vector<int> act;
        for (MorId h : d.elements[cs.category->dom(t)])
          act.push_back(target.position_in_hom(
              out.transport(cs.labels[t], from.left, from.right, x, y, h)));
        d.actions.push_back(std::move(act));
      }
      ColimSet classes(d);
      const MorId first = next;
      next += classes.num_classes();
      out.homs_.push_back({std::move(d), std::move(classes), first});
    }

  CategoryBuilder builder("2colim(" + idx.name() + ")");
  for (ObjId a = 0; a < n; ++a)
    builder.add_object(object_label(sys, out.objects_[a].index, out.objects_[a].value));
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb) {
      const auto& classes = out.hom(a, bb).classes;
      for (int cls = 0; cls < classes.num_classes(); ++cls) {
        builder.add_morphism(object_label(sys, out.objects_[a].index, out.objects_[a].value) + "->" +
                                 object_label(sys, out.objects_[bb].index, out.objects_[bb].value) +
                                 "." + std::to_string(cls),
                             a, bb);
        out.morphism_class_.push_back(cls);
      }
    }
  for (ObjId a = 0; a < n; ++a) {
    const auto [i, x] = out.objects_[a];
    const MorId id_i = idx.id(i);
    auto at = out.cospan(i, i).find(i, id_i, id_i);
    const ObjId bx = sys.on(id_i).obj(x);
    const MorId ident = sys.at(i)->id(bx);
    const int cls = out.hom(a, a).classes.class_of(*at, sys.at(i)->position_in_hom(ident));
    builder.set_identity(a, out.morphism_of(a, a, cls));
  }
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb) {
      const auto& fcls = out.hom(a, bb).classes;
      for (int f = 0; f < fcls.num_classes(); ++f) {
        const ColimRep fr = out.as_rep(a, bb, fcls.representative(f));
        for (ObjId c = 0; c < n; ++c) {
          const auto& gcls = out.hom(bb, c).classes;
          for (int g = 0; g < gcls.num_classes(); ++g) {
            const ColimRep gr = out.as_rep(bb, c, gcls.representative(g));
            const int h = out.compose_reps(a, bb, c, gr, fr);
            builder.set_compose(out.morphism_of(bb, c, g), out.morphism_of(a, bb, f),
                                out.morphism_of(a, c, h));
          }
        }
      }
    }
  try {
    out.base_ = std::move(builder).build();
  } catch (const Error& e) {
    throw Error(ErrorCode::InternalInvariant, std::string("2-colimit composition is not lawful: ") + e.what(),
                e.witness());
  }

  for (ObjId i = 0; i < idx.num_objects(); ++i) {
    const auto& bi = *sys.at(i);
    const MorId id_i = idx.id(i);
    const int at = *out.cospan(i, i).find(i, id_i, id_i);
    std::vector<ObjId> objs;
    std::vector<MorId> mors;
    for (ObjId x = 0; x < bi.num_objects(); ++x) objs.push_back(out.object_of(i, x));
    for (MorId h = 0; h < bi.num_morphisms(); ++h) {
      const ObjId x = bi.dom(h);
      const ObjId y = bi.cod(h);
      const MorId lifted = bi.compose(sys.unit_inv_at(i, y), bi.compose(h, sys.unit_at(i, x)));
      const ObjId a = out.object_of(i, x);
      const ObjId c = out.object_of(i, y);
      mors.push_back(out.morphism_of(a, c, out.hom(a, c).classes.class_of(at, bi.position_in_hom(lifted))));
    }
    out.injections_.push_back(validate_functor(sys.at(i), out.base_, std::move(objs), std::move(mors)));
  }
  for (MorId s = 0; s < idx.num_morphisms(); ++s) {
    const ObjId i = idx.dom(s);
    const ObjId i2 = idx.cod(s);
    const int at = *out.cospan(i, i2).find(i2, s, idx.id(i2));
    const auto& target = *sys.at(i2);
    std::vector<MorId> comps;
    for (ObjId x = 0; x < sys.at(i)->num_objects(); ++x) {
      const ObjId sx = sys.on(s).obj(x);
      const MorId h = sys.unit_inv_at(i2, sx);
      const ObjId a = out.object_of(i, x);
      const ObjId c = out.object_of(i2, sx);
      comps.push_back(out.morphism_of(a, c, out.hom(a, c).classes.class_of(at, target.position_in_hom(h))));
    }
    out.cells_.push_back(validate_nat(out.injections_[i], compose(out.injections_[i2], sys.on(s)),
                                      std::move(comps), true));
  }
  return out;
}

int colim_hom_class(const TwoColimCategory& colim, ObjId a, ObjId b, ColimRep rep) {
  const auto& sys = colim.system();
  const auto [i, x] = colim.object(a);
  const auto [i2, y] = colim.object(b);
  const auto& cs = colim.cospan(i, i2);
  if (rep.cospan_object < 0 || rep.cospan_object >= static_cast<int>(cs.objects.size()))
    throw Error(ErrorCode::BadRepresentative, "no such cospan object");
  const auto& co = cs.objects[rep.cospan_object];
  const auto& apex = *sys.at(co.apex);
  if (rep.morphism < 0 || rep.morphism >= apex.num_morphisms() ||
      apex.dom(rep.morphism) != sys.on(co.left).obj(x) || apex.cod(rep.morphism) != sys.on(co.right).obj(y))
    throw Error(ErrorCode::BadRepresentative, "morphism does not live at the given cospan object");
  return colim.hom_classes(a, b).class_of(rep.cospan_object, apex.position_in_hom(rep.morphism));
}

MorId compose_in_colim(const TwoColimCategory& colim, MorId g, MorId f) {
  const auto& base = *colim.base();
  if (!base.composable(g, f)) throw Error(ErrorCode::BadEndpoints, "classes are not composable");
  const ObjId a = base.dom(f);
  const ObjId b = base.cod(f);
  const ObjId c = base.cod(g);
  const int cls = colim.compose_reps(a, b, c, colim.representative(g), colim.representative(f));
  return colim.morphism_of(a, c, cls);
}

// ---------------------------------------------------------------------------

PseudoCocone validate_cocone(const PseudoFunctor& b, CatRef target, std::vector<FinFunctor> legs,
                             std::map<MorId, std::vector<MorId>> cells) {
  const auto& idx = *b.index();
  if (static_cast<int>(legs.size()) != idx.num_objects())
    throw Error(ErrorCode::NotACocone, "cocone legs are not total");
  for (ObjId i = 0; i < idx.num_objects(); ++i)
    if (!same_category(legs[i].source(), b.at(i)) || !same_category(legs[i].target(), target))
      throw Error(ErrorCode::NotACocone, "cocone leg at " + idx.object_name(i) + " has wrong endpoints");
  PseudoCocone rho{target, std::move(legs), {}};
  const auto& c = *target;
  for (MorId s = 0; s < idx.num_morphisms(); ++s) {
    const FinFunctor& from = rho.legs[idx.dom(s)];
    const FinFunctor to = compose(rho.legs[idx.cod(s)], b.on(s));
    std::vector<MorId> comps;
    if (auto it = cells.find(s); it != cells.end()) {
      comps = it->second;
    } else {
      if (!(from == to))
        throw Error(ErrorCode::NotACocone, "cell at " + idx.morphism_name(s) + " omitted but legs differ",
                    {idx.morphism_name(s)});
      for (ObjId x = 0; x < b.at(idx.dom(s))->num_objects(); ++x) comps.push_back(c.id(from.obj(x)));
    }
    try {
      rho.cells.push_back(validate_nat(from, to, std::move(comps), true));
    } catch (const Error& e) {
      throw Error(ErrorCode::NotACocone, "cell at " + idx.morphism_name(s) + ": " + e.what(), e.witness());
    }
  }
  for (ObjId i = 0; i < idx.num_objects(); ++i)
    for (ObjId x = 0; x < b.at(i)->num_objects(); ++x) {
      const MorId lhs = c.compose(rho.legs[i].mor(b.unit_at(i, x)), rho.cells[idx.id(i)].at(x));
      if (lhs != c.id(rho.legs[i].obj(x)))
        throw Error(ErrorCode::NotACocone, "unit equation fails at " + idx.object_name(i),
                    {idx.object_name(i), b.at(i)->object_name(x)});
    }
  for (MorId s = 0; s < idx.num_morphisms(); ++s)
    for (ObjId k = 0; k < idx.num_objects(); ++k)
      for (MorId s2 : idx.hom(idx.cod(s), k)) {
        const ObjId i = idx.dom(s);
        for (ObjId x = 0; x < b.at(i)->num_objects(); ++x) {
          const MorId lhs = c.compose(rho.legs[k].mor(b.comp_at(s2, s, x)), rho.cells[idx.compose(s2, s)].at(x));
          const MorId rhs = c.compose(rho.cells[s2].at(b.on(s).obj(x)), rho.cells[s].at(x));
          if (lhs != rhs)
            throw Error(ErrorCode::NotACocone,
                        "composition equation fails at (" + idx.morphism_name(s2) + ", " +
                            idx.morphism_name(s) + ")",
                        {idx.morphism_name(s2), idx.morphism_name(s)});
        }
      }
  return rho;
}

PseudoCocone injection_cocone(const TwoColimCategory& colim) {
  PseudoCocone rho{colim.base(), {}, {}};
  const auto& idx = *colim.system().index();
  for (ObjId i = 0; i < idx.num_objects(); ++i) rho.legs.push_back(colim.injection(i));
  for (MorId s = 0; s < idx.num_morphisms(); ++s) rho.cells.push_back(colim.cell(s));
  return rho;
}

LaxFactorization strong_factor_colim(const TwoColimCategory& colim, const PseudoCocone& rho) {
  const auto& base = *colim.base();
  const auto& sys = colim.system();
  const auto& c = *rho.target;
  std::vector<ObjId> objs;
  for (ObjId a = 0; a < colim.num_objects(); ++a) {
    const auto [i, x] = colim.object(a);
    objs.push_back(rho.legs[i].obj(x));
  }
  std::vector<MorId> mors(base.num_morphisms(), -1);
  for (ObjId a = 0; a < colim.num_objects(); ++a)
    for (ObjId b = 0; b < colim.num_objects(); ++b) {
      const auto [i, x] = colim.object(a);
      const auto [i2, y] = colim.object(b);
      const auto& cs = colim.cospan(i, i2);
      const auto& classes = colim.hom_classes(a, b);
      for (int cls = 0; cls < classes.num_classes(); ++cls) {
        MorId value = -1;
        for (const auto& e : classes.members(cls)) {
          const ColimRep r = colim.as_rep(a, b, e);
          const CospanObject& co = cs.objects[r.cospan_object];
          const MorId into = rho.cells[co.left].at(x);
          const MorId out_of = *c.inverse(rho.cells[co.right].at(y));
          const MorId v = c.compose(out_of, c.compose(rho.legs[co.apex].mor(r.morphism), into));
          if (value >= 0 && value != v)
            throw Error(ErrorCode::NonWellDefined, "factorization depends on the representative",
                        {base.morphism_name(colim.morphism_of(a, b, cls))});
          value = v;
        }
        mors[colim.morphism_of(a, b, cls)] = value;
      }
    }
  FinFunctor f = [&] {
    try {
      return validate_functor(colim.base(), rho.target, std::move(objs), std::move(mors));
    } catch (const Error& e) {
      throw Error(ErrorCode::NotACocone, std::string("factorization is not a functor: ") + e.what(), e.witness());
    }
  }();
  LaxFactorization out{f, {}};
  for (ObjId i = 0; i < sys.index()->num_objects(); ++i) {
    const FinFunctor through = compose(f, colim.injection(i));
    if (!(through == rho.legs[i]))
      throw Error(ErrorCode::InternalInvariant, "factorization does not restrict to the cocone leg");
    out.comparison.push_back(identity_nat(rho.legs[i]));
  }
  return out;
}

bool is_lax_factorization(const TwoColimCategory& colim, const PseudoCocone& rho,
                          const LaxFactorization& f) {
  const auto& idx = *colim.system().index();
  const auto& c = *rho.target;
  for (MorId s = 0; s < idx.num_morphisms(); ++s) {
    const ObjId i = idx.dom(s);
    const ObjId i2 = idx.cod(s);
    for (ObjId x = 0; x < colim.system().at(i)->num_objects(); ++x) {
      const MorId lhs = c.compose(f.functor.mor(colim.cell(s).at(x)), f.comparison[i].at(x));
      const MorId rhs = c.compose(f.comparison[i2].at(colim.system().on(s).obj(x)), rho.cells[s].at(x));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

NatTransformation factor_modification(const TwoColimCategory& colim, const PseudoCocone& rho,
                                      const LaxFactorization& f, const PseudoCocone& rho2,
                                      const LaxFactorization& g,
                                      const std::vector<NatTransformation>& lambda) {
  const auto& sys = colim.system();
  const auto& idx = *sys.index();
  const auto& c = *rho.target;
  if (static_cast<int>(lambda.size()) != idx.num_objects())
    throw Error(ErrorCode::IncompatibleCells, "modification components are not total");
  for (MorId s = 0; s < idx.num_morphisms(); ++s) {
    const ObjId i = idx.dom(s);
    const ObjId i2 = idx.cod(s);
    for (ObjId x = 0; x < sys.at(i)->num_objects(); ++x) {
      const MorId lhs = c.compose(rho2.cells[s].at(x), lambda[i].at(x));
      const MorId rhs = c.compose(lambda[i2].at(sys.on(s).obj(x)), rho.cells[s].at(x));
      if (lhs != rhs)
        throw Error(ErrorCode::IncompatibleCells, "not a modification at " + idx.morphism_name(s),
                    {idx.morphism_name(s)});
    }
  }
  std::vector<MorId> comps;
  for (ObjId a = 0; a < colim.num_objects(); ++a) {
    const auto [i, x] = colim.object(a);
    const MorId undo_f = *c.inverse(f.comparison[i].at(x));
    comps.push_back(c.compose(g.comparison[i].at(x), c.compose(lambda[i].at(x), undo_f)));
  }
  try {
    return validate_nat(f.functor, g.functor, std::move(comps));
  } catch (const Error& e) {
    throw Error(ErrorCode::IncompatibleCells, std::string("induced transformation: ") + e.what(), e.witness());
  }
}

FinFunctor induced_functor_colim(const TwoColimCategory& from, const TwoColimCategory& to,
                                 const PseudoNatural& u) {
  if (!same_category(from.system().index(), to.system().index()))
    throw Error(ErrorCode::IncompatibleCells, "2-colimits over different indices");
  const auto& base = *from.base();
  std::vector<ObjId> objs;
  for (ObjId a = 0; a < from.num_objects(); ++a) {
    const auto [i, x] = from.object(a);
    objs.push_back(to.object_of(i, u.components[i].obj(x)));
  }
  std::vector<MorId> mors(base.num_morphisms(), -1);
  for (ObjId a = 0; a < from.num_objects(); ++a)
    for (ObjId b = 0; b < from.num_objects(); ++b) {
      const auto [i, x] = from.object(a);
      const auto [i2, y] = from.object(b);
      const auto& cs = from.cospan(i, i2);
      const auto& classes = from.hom_classes(a, b);
      for (int cls = 0; cls < classes.num_classes(); ++cls) {
        int image = -1;
        for (const auto& e : classes.members(cls)) {
          const ColimRep r = from.as_rep(a, b, e);
          const CospanObject& co = cs.objects[r.cospan_object];
          const auto& apex = *to.system().at(co.apex);
          const MorId enter = *apex.inverse(u.cells[co.left].at(x));
          const MorId leave = u.cells[co.right].at(y);
          const MorId h = apex.compose(leave, apex.compose(u.components[co.apex].mor(r.morphism), enter));
          const int c2 = colim_hom_class(to, objs[a], objs[b], {r.cospan_object, h});
          if (image >= 0 && image != c2)
            throw Error(ErrorCode::IncompatibleCells, "induced map depends on the representative");
          image = c2;
        }
        mors[from.morphism_of(a, b, cls)] = to.morphism_of(objs[a], objs[b], image);
      }
    }
  try {
    return validate_functor(from.base(), to.base(), std::move(objs), std::move(mors));
  } catch (const Error& e) {
    throw Error(ErrorCode::IncompatibleCells, std::string("induced map is not a functor: ") + e.what(),
                e.witness());
  }
}

}  // namespace twocat
