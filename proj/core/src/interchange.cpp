#include "twocat/interchange.hpp"

#include <array>

namespace twocat {

const LimObject& ColimOfLims::triple(ObjId o) const {
  const ColimObject& c = category().object(o);
  return rows[c.index].object(c.value);
}

namespace {

// For s : i -> i' in I and t : ka -> kb in K = J^op, the isomorphism
//   a(s, id_kb) a(id_i, t) x  ->  a(id_i', t) a(s, id_ka) x   in a(i', kb).
MorId left_cell(const BiIndexedPseudoFunctor& a, MorId s, MorId t, ObjId x) {
  const auto& sh = a.shape;
  const auto& p = a.underlying;
  const auto& k = *sh.right_op;
  const auto& ic = *sh.left;
  const ObjId ka = k.dom(t);
  const ObjId kb = k.cod(t);
  const auto& target = *p.at(sh.object(ic.cod(s), kb));
  const MorId split = p.comp_inv_at(sh.morphism(s, k.id(kb)), sh.morphism(ic.id(ic.dom(s)), t), x);
  const MorId join = p.comp_at(sh.morphism(ic.id(ic.cod(s)), t), sh.morphism(s, k.id(ka)), x);
  return target.compose(join, split);
}

}  // namespace

ColimOfLims build_colim_of_lims(const BiIndexedPseudoFunctor& a, InterchangeOptions options) {
  const auto& sh = a.shape;
  const auto& ic = *sh.left;
  const auto& k = *sh.right_op;
  const auto& p = a.underlying;
  ColimOfLims out;
  for (ObjId i = 0; i < ic.num_objects(); ++i)
    out.rows.push_back(build_2lim(slice_at_left(a, i), {true, options.max_lim_objects}));

  PseudoFunctorSpec spec;
  spec.index = sh.left;
  for (const auto& row : out.rows) spec.at.push_back(row.base());
  for (MorId s = 0; s < ic.num_morphisms(); ++s) {
    const auto& from = out.rows[ic.dom(s)];
    const auto& to = out.rows[ic.cod(s)];
    spec.on.push_back(induced_functor_lim(from, to, along_left(a, from.system(), to.system(), s)));
  }
  auto family_morphism = [&](const TwoLimCategory& row, const FinFunctor& f, int x, const Family& fam) {
    auto m = row.morphism_of(f.obj(x), x, fam);
    if (!m) throw Error(ErrorCode::InternalInvariant, "coherence family is not a morphism of the 2-limit");
    return *m;
  };
  for (ObjId i = 0; i < ic.num_objects(); ++i) {
    const auto& row = out.rows[i];
    std::vector<MorId> comps;
    for (int x = 0; x < row.num_objects(); ++x) {
      Family fam;
      for (ObjId kk = 0; kk < k.num_objects(); ++kk)
        fam.push_back(p.unit_at(sh.object(i, kk), row.object(x).x[kk]));
      comps.push_back(family_morphism(row, spec.on[ic.id(i)], x, fam));
    }
    spec.unit[i] = std::move(comps);
  }
  for (MorId s = 0; s < ic.num_morphisms(); ++s)
    for (ObjId c = 0; c < ic.num_objects(); ++c)
      for (MorId t : ic.hom(ic.cod(s), c)) {
        const auto& row = out.rows[c];
        const auto& src = out.rows[ic.dom(s)];
        std::vector<MorId> comps;
        for (int x = 0; x < src.num_objects(); ++x) {
          Family fam;
          for (ObjId kk = 0; kk < k.num_objects(); ++kk)
            fam.push_back(p.comp_at(sh.morphism(t, k.id(kk)), sh.morphism(s, k.id(kk)), src.object(x).x[kk]));
          const int from = spec.on[ic.compose(t, s)].obj(x);
          const int to = spec.on[t].obj(spec.on[s].obj(x));
          auto m = row.morphism_of(from, to, fam);
          if (!m) throw Error(ErrorCode::InternalInvariant, "composition family is not a morphism of the 2-limit");
          comps.push_back(*m);
        }
        spec.comp[{t, s}] = std::move(comps);
      }
  out.colim.emplace(build_2colim(validate_pseudofunctor(std::move(spec)), {options.require_filtered}));
  return out;
}

LimOfColims build_lim_of_colims(const BiIndexedPseudoFunctor& a, InterchangeOptions options) {
  const auto& sh = a.shape;
  const auto& k = *sh.right_op;
  const auto& p = a.underlying;
  LimOfColims out;
  for (ObjId kk = 0; kk < k.num_objects(); ++kk)
    out.columns.push_back(build_2colim(slice_at_right(a, kk), {options.require_filtered}));

  PseudoFunctorSpec spec;
  spec.index = sh.right_op;
  for (const auto& col : out.columns) spec.at.push_back(col.base());
  for (MorId t = 0; t < k.num_morphisms(); ++t) {
    const auto& from = out.columns[k.dom(t)];
    const auto& to = out.columns[k.cod(t)];
    spec.on.push_back(induced_functor_colim(from, to, along_right(a, from.system(), to.system(), t)));
  }
  for (ObjId kk = 0; kk < k.num_objects(); ++kk) {
    const auto& col = out.columns[kk];
    std::vector<MorId> comps;
    for (ObjId o = 0; o < col.num_objects(); ++o) {
      const auto [i, x] = col.object(o);
      comps.push_back(col.injection(i).mor(p.unit_at(sh.object(i, kk), x)));
    }
    spec.unit[kk] = std::move(comps);
  }
  for (MorId t = 0; t < k.num_morphisms(); ++t)
    for (ObjId c = 0; c < k.num_objects(); ++c)
      for (MorId t2 : k.hom(k.cod(t), c)) {
        const auto& col = out.columns[c];
        const auto& src = out.columns[k.dom(t)];
        std::vector<MorId> comps;
        for (ObjId o = 0; o < src.num_objects(); ++o) {
          const auto [i, x] = src.object(o);
          const MorId id_i = sh.left->id(i);
          comps.push_back(col.injection(i).mor(p.comp_at(sh.morphism(id_i, t2), sh.morphism(id_i, t), x)));
        }
        spec.comp[{t2, t}] = std::move(comps);
      }
  out.lim.emplace(build_2lim(validate_pseudofunctor(std::move(spec)), {false, options.max_lim_objects}));
  return out;
}

LimValuedFunctor psi_by_formula(const ColimOfLims& col, const LimOfColims& loc) {
  const auto& colim = col.category();
  const auto& lim = loc.category();
  const auto& k = *lim.system().index();
  LimValuedFunctor f{colim.base(), {}, {}};
  for (ObjId o = 0; o < colim.num_objects(); ++o) {
    const ObjId i = colim.object(o).index;
    const LimObject& x = col.triple(o);
    LimObject y;
    for (ObjId kk = 0; kk < k.num_objects(); ++kk) y.x.push_back(loc.columns[kk].object_of(i, x.x[kk]));
    for (MorId t = 0; t < k.num_morphisms(); ++t)
      y.theta.push_back(loc.columns[k.cod(t)].injection(i).mor(x.theta[t]));
    auto hit = lim.find(y);
    if (!hit) throw Error(ErrorCode::InternalInvariant, "image of a triple is not an object of the 2-limit");
    f.objects.push_back(*hit);
  }
  const auto& base = *colim.base();
  for (MorId m = 0; m < base.num_morphisms(); ++m) {
    const ColimRep rep = colim.representative(m);
    const ObjId apex = colim.cospan(colim.object(base.dom(m)).index, colim.object(base.cod(m)).index)
                           .objects[rep.cospan_object]
                           .apex;
    const Family& h = col.rows[apex].family_of(rep.morphism);
    const LimObject& from = lim.object(f.objects[base.dom(m)]);
    const LimObject& to = lim.object(f.objects[base.cod(m)]);
    Family image;
    for (ObjId kk = 0; kk < k.num_objects(); ++kk) {
      const auto& column = loc.columns[kk];
      const int cls = colim_hom_class(column, from.x[kk], to.x[kk], {rep.cospan_object, h[kk]});
      image.push_back(column.morphism_of(from.x[kk], to.x[kk], cls));
    }
    f.morphisms.push_back(std::move(image));
  }
  return f;
}

LimValuedFunctor build_psi(const BiIndexedPseudoFunctor& a, const ColimOfLims& col,
                           const LimOfColims& loc) {
  const auto& colim = col.category();
  const auto& lim = loc.category();
  const auto& ic = *a.shape.left;
  const auto& k = *a.shape.right_op;

  // Per column kk: the cocone sigma_i o pi_kk over the rows and its factorization.
  std::vector<PseudoCocone> cocones;
  std::vector<LaxFactorization> factors;
  for (ObjId kk = 0; kk < k.num_objects(); ++kk) {
    const auto& column = loc.columns[kk];
    std::vector<FinFunctor> legs;
    for (ObjId i = 0; i < ic.num_objects(); ++i)
      legs.push_back(compose(column.injection(i), col.rows[i].projection(kk)));
    std::map<MorId, std::vector<MorId>> cells;
    for (MorId s = 0; s < ic.num_morphisms(); ++s) {
      const auto& row = col.rows[ic.dom(s)];
      std::vector<MorId> comps;
      for (int x = 0; x < row.num_objects(); ++x) comps.push_back(column.cell(s).at(row.object(x).x[kk]));
      cells[s] = std::move(comps);
    }
    cocones.push_back(validate_cocone(colim.system(), column.base(), std::move(legs), std::move(cells)));
    factors.push_back(strong_factor_colim(colim, cocones.back()));
  }

  // Cone cells from the modifications sigma_i(theta_t) between the cocones.
  std::vector<FinFunctor> legs;
  for (const auto& f : factors) legs.push_back(f.functor);
  std::map<MorId, std::vector<MorId>> cone_cells;
  for (MorId t = 0; t < k.num_morphisms(); ++t) {
    const ObjId ka = k.dom(t);
    const ObjId kb = k.cod(t);
    const FinFunctor& g = lim.system().on(t);
    std::vector<FinFunctor> moved_legs;
    std::map<MorId, std::vector<MorId>> moved_cells;
    for (ObjId i = 0; i < ic.num_objects(); ++i) moved_legs.push_back(compose(g, cocones[ka].legs[i]));
    for (MorId s = 0; s < ic.num_morphisms(); ++s) moved_cells[s] = whisker(g, cocones[ka].cells[s]).components();
    const PseudoCocone moved =
        validate_cocone(colim.system(), loc.columns[kb].base(), std::move(moved_legs), std::move(moved_cells));
    LaxFactorization moved_factor{compose(g, factors[ka].functor), {}};
    for (const auto& leg : moved.legs) moved_factor.comparison.push_back(identity_nat(leg));

    std::vector<NatTransformation> lambda;
    for (ObjId i = 0; i < ic.num_objects(); ++i) {
      const auto& row = col.rows[i];
      std::vector<MorId> comps;
      for (int x = 0; x < row.num_objects(); ++x)
        comps.push_back(loc.columns[kb].injection(i).mor(row.object(x).theta[t]));
      lambda.push_back(validate_nat(cocones[kb].legs[i], moved.legs[i], std::move(comps), true));
    }
    cone_cells[t] = factor_modification(colim, cocones[kb], factors[kb], moved, moved_factor, lambda).components();
  }
  const PseudoCone cone = validate_cone(lim.system(), colim.base(), std::move(legs), std::move(cone_cells));
  LimValuedFunctor psi = strong_factor_lim(lim, cone);

  const LimValuedFunctor expected = psi_by_formula(col, loc);
  if (psi.objects != expected.objects || psi.morphisms != expected.morphisms)
    throw Error(ErrorCode::InternalInvariant, "the factorized comparison disagrees with the explicit formula");
  if (!is_functorial(lim, psi)) throw Error(ErrorCode::InternalInvariant, "comparison is not a functor");
  return psi;
}

FullyFaithfulReport fully_faithful_report(const ColimOfLims& col, const LimOfColims& loc,
                                          const LimValuedFunctor& psi) {
  const auto& colim = col.category();
  const auto& lim = loc.category();
  const auto& base = *colim.base();
  const auto& k = *lim.system().index();
  FullyFaithfulReport out;
  for (ObjId a = 0; a < colim.num_objects(); ++a)
    for (ObjId b = 0; b < colim.num_objects(); ++b) {
      HomBijection h;
      h.from = a;
      h.to = b;
      const LimSet& target = lim.hom(psi.objects[a], psi.objects[b]);
      const auto& source = base.hom(a, b);
      h.source_size = static_cast<int>(source.size());
      h.target_size = target.size();
      h.inverse.assign(target.size(), -1);
      bool injective = true;
      for (MorId m : source) {
        std::vector<int> pos;
        for (ObjId kk = 0; kk < k.num_objects(); ++kk)
          pos.push_back(lim.system().at(kk)->position_in_hom(psi.morphisms[m][kk]));
        auto hit = target.find(pos);
        if (!hit) throw Error(ErrorCode::InternalInvariant, "comparison lands outside the hom set");
        if (h.inverse[*hit] >= 0 && injective) {
          injective = false;
          h.witness = base.morphism_name(h.inverse[*hit]) + " and " + base.morphism_name(m) +
                      " have the same image";
        }
        if (h.inverse[*hit] < 0) h.inverse[*hit] = m;
      }
      bool surjective = true;
      for (int f = 0; f < target.size(); ++f)
        if (h.inverse[f] < 0) {
          surjective = false;
          if (!h.witness)
            h.witness = "morphism " + std::to_string(f) + " of " + lim.object_label(psi.objects[a]) + " -> " +
                        lim.object_label(psi.objects[b]) + " has no preimage";
          break;
        }
      h.bijective = injective && surjective;
      if (!h.bijective) {
        h.inverse.clear();
        out.verdict = false;
      }
      out.pairs.push_back(std::move(h));
    }
  return out;
}

EssentialPreimage essential_preimage(const BiIndexedPseudoFunctor& a, const ColimOfLims& col,
                                     const LimOfColims& loc, const LimValuedFunctor& psi, int target) {
  const auto& sh = a.shape;
  const auto& ic = *sh.left;
  const auto& k = *sh.right_op;
  const auto& p = a.underlying;
  const auto& lim = loc.category();
  const LimObject& input = lim.object(target);
  const int n = k.num_objects();
  const int mors = k.num_morphisms();
  EssentialPreimage out;
  out.target = target;

  // One cocone over the i_j and the apexes of the canonical
  // representatives of every [theta_t], glued along their legs.
  std::vector<ObjId> tips;
  std::vector<ColimObject> at(n);
  for (ObjId kk = 0; kk < n; ++kk) {
    at[kk] = loc.columns[kk].object(input.x[kk]);
    tips.push_back(at[kk].index);
  }
  std::vector<ColimRep> reps;
  std::vector<CospanObject> spans;
  std::vector<EqualizeConstraint> constraints;
  for (MorId t = 0; t < mors; ++t) {
    const ObjId ka = k.dom(t);
    const ObjId kb = k.cod(t);
    const auto& column = loc.columns[kb];
    reps.push_back(column.representative(input.theta[t]));
    const ObjId to_index = column.object(column.base()->cod(input.theta[t])).index;
    spans.push_back(column.cospan(at[kb].index, to_index).objects[reps.back().cospan_object]);
    tips.push_back(spans.back().apex);
    const std::size_t slot = static_cast<std::size_t>(n + t);
    constraints.push_back({static_cast<std::size_t>(kb), ic.id(at[kb].index), slot, spans.back().left});
    constraints.push_back({static_cast<std::size_t>(ka), ic.id(at[ka].index), slot, spans.back().right});
  }
  if (ic.num_objects() == 0) throw Error(ErrorCode::SearchExhausted, "index " + ic.name() + " is empty");
  Cocone cocone;
  if (!tips.empty())
    cocone = a.filtered.verdict ? cocone_and_equalize(ic, a.filtered, tips, constraints)
                                : cocone_and_equalize_unchecked(ic, tips, constraints);
  ObjId vertex = cocone.vertex;
  out.rounds = cocone.rounds;

  // Objects Y_j = a(l_j, id_j) X_j at the vertex and candidate theta_t.
  LimObject cand;
  for (ObjId kk = 0; kk < n; ++kk)
    cand.x.push_back(p.on(sh.morphism(cocone.legs[kk], k.id(kk))).obj(at[kk].value));
  for (MorId t = 0; t < mors; ++t) {
    const ObjId ka = k.dom(t);
    const ObjId kb = k.cod(t);
    const auto& column = loc.columns[kb];
    const ObjId xb = at[kb].value;
    const ObjId y = column.object(column.base()->cod(input.theta[t])).value;  // a(id, t) X_ka
    const MorId moved = column.transport(cocone.legs[n + t], spans[t].left, spans[t].right, xb, y,
                                         reps[t].morphism);
    const auto& here = *p.at(sh.object(vertex, kb));
    cand.theta.push_back(here.compose(left_cell(a, cocone.legs[ka], t, at[ka].value), moved));
  }
  // Iso witness, per j: sigma_{i_j} X_j -> sigma_vertex Y_j.
  Family witness;
  for (ObjId kk = 0; kk < n; ++kk) witness.push_back(loc.columns[kk].cell(cocone.legs[kk]).at(at[kk].value));

  // Advance along the first h : vertex -> k making the conditions hold.
  auto advance = [&](MorId h, const LimObject& x) {
    LimObject y;
    for (ObjId kk = 0; kk < n; ++kk) y.x.push_back(p.on(sh.morphism(h, k.id(kk))).obj(x.x[kk]));
    for (MorId t = 0; t < mors; ++t) {
      const ObjId ka = k.dom(t);
      const ObjId kb = k.cod(t);
      const auto& there = *p.at(sh.object(ic.cod(h), kb));
      const MorId moved = p.on(sh.morphism(h, k.id(kb))).mor(x.theta[t]);
      y.theta.push_back(there.compose(left_cell(a, h, t, x.x[ka]), moved));
    }
    return y;
  };
  std::optional<MorId> chosen;
  for (MorId h = 0; h < ic.num_morphisms() && !chosen; ++h) {
    if (ic.dom(h) != vertex) continue;
    const PseudoFunctor& row = col.rows[ic.cod(h)].system();
    if (!check_object_conditions(row, advance(h, cand))) chosen = h;
  }
  if (!chosen) {
    out.failure = "no morphism out of " + ic.object_name(vertex) + " equalizes the representatives";
    throw Error(ErrorCode::SearchExhausted, *out.failure, {ic.object_name(vertex)});
  }
  if (!ic.is_identity(*chosen)) ++out.rounds;
  if (out.rounds > ic.num_morphisms())
    throw Error(ErrorCode::SearchExhausted, "essential preimage needed more than |Mor(I)| rounds");
  const LimObject triple = advance(*chosen, cand);
  for (ObjId kk = 0; kk < n; ++kk) {
    const auto& column = loc.columns[kk];
    const MorId step = column.cell(*chosen).at(cand.x[kk]);
    witness[kk] = column.base()->compose(step, witness[kk]);
  }
  vertex = ic.cod(*chosen);
  out.vertex = vertex;

  // Locate the triple and replay the witness.
  auto row_index = col.rows[vertex].find(triple);
  if (!row_index) throw Error(ErrorCode::InternalInvariant, "reconstructed triple is not an object of its row");
  out.source = col.category().object_of(vertex, *row_index);
  out.iso = witness;
  const int image = psi.objects[out.source];
  if (!lim.is_morphism(target, image, witness)) {
    out.failure = "witness is not a morphism of the 2-limit";
    return out;
  }
  for (ObjId kk = 0; kk < n; ++kk)
    if (!loc.columns[kk].base()->is_iso(witness[kk])) {
      out.failure = "witness component at " + k.object_name(kk) + " is not invertible";
      return out;
    }
  out.found = true;
  return out;
}

EquivalenceReport check_equivalence(const BiIndexedPseudoFunctor& a, InterchangeOptions options) {
  EquivalenceReport r;
  r.filtered = a.filtered.verdict;
  r.filtered_counterexample = a.filtered.counterexample;
  if (options.require_filtered && !r.filtered)
    throw Error(ErrorCode::NotFiltered, a.shape.left->name() + " is not filtered");
  const ColimOfLims col = build_colim_of_lims(a, options);
  const LimOfColims loc = build_lim_of_colims(a, options);
  r.colim_of_lims_objects = col.category().num_objects();
  r.colim_of_lims_morphisms = col.category().base()->num_morphisms();
  r.lim_of_colims_objects = loc.category().num_objects();

  const LimValuedFunctor psi = build_psi(a, col, loc);
  r.psi_functorial = true;
  r.psi_matches_formula = true;
  r.fully_faithful = fully_faithful_report(col, loc, psi);

  r.essentially_surjective = true;
  for (int o = 0; o < loc.category().num_objects(); ++o) {
    EssentialPreimage e;
    try {
      e = essential_preimage(a, col, loc, psi, o);
    } catch (const Error& err) {
      if (options.require_filtered) throw;
      e.target = o;
      e.failure = err.what();
    }
    e.target_label = loc.category().object_label(o);
    if (e.found) e.source_label = col.category().base()->object_name(e.source);
    if (!e.found) r.essentially_surjective = false;
    r.preimages.push_back(std::move(e));
  }
  r.verdict = r.fully_faithful.verdict && r.essentially_surjective;
  return r;
}

}  // namespace twocat
