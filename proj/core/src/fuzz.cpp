#include "twocat/fuzz.hpp"

#include <algorithm>
#include <numeric>

#include "twocat/shapes.hpp"

namespace twocat {

namespace {

using Rng = std::mt19937_64;

// Plain modulo keeps the stream identical across standard libraries.
int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

// First non-identity automorphism f of c with f o f = id; small c only.
std::optional<FinFunctor> involution(const CatRef& c) {
  if (c->num_morphisms() > 6) return std::nullopt;
  std::vector<ObjId> objs(c->num_objects());
  std::iota(objs.begin(), objs.end(), 0);
  std::vector<MorId> mors(c->num_morphisms());
  do {
    std::iota(mors.begin(), mors.end(), 0);
    do {
      bool ok = true;
      for (MorId m = 0; m < c->num_morphisms() && ok; ++m)
        ok = c->dom(mors[m]) == objs[c->dom(m)] && c->cod(mors[m]) == objs[c->cod(m)] && mors[mors[m]] == m;
      if (!ok) continue;
      bool trivial = true;
      for (MorId m = 0; m < c->num_morphisms(); ++m) trivial = trivial && mors[m] == m;
      if (trivial) continue;
      try {
        return validate_functor(c, c, objs, mors);
      } catch (const Error&) {
      }
    } while (std::next_permutation(mors.begin(), mors.end()));
  } while (std::next_permutation(objs.begin(), objs.end()));
  return std::nullopt;
}

// All functors c -> Z/2, as parities of morphisms.
std::vector<std::vector<int>> parity_functors(const FinCategory& c) {
  std::vector<MorId> free;
  for (MorId m = 0; m < c.num_morphisms(); ++m)
    if (!c.is_identity(m)) free.push_back(m);
  std::vector<std::vector<int>> out;
  for (std::uint32_t bits = 0; bits < (1u << free.size()); ++bits) {
    std::vector<int> par(c.num_morphisms(), 0);
    for (std::size_t n = 0; n < free.size(); ++n) par[free[n]] = (bits >> n) & 1u;
    bool ok = true;
    for (MorId f = 0; f < c.num_morphisms() && ok; ++f)
      for (ObjId o = 0; o < c.num_objects() && ok; ++o)
        for (MorId g : c.hom(c.cod(f), o))
          if (par[c.compose(g, f)] != (par[g] + par[f]) % 2) {
            ok = false;
            break;
          }
    if (ok) out.push_back(std::move(par));
  }
  return out;
}

struct Copy {
  int summand;
  MorId alpha;  // p -> i in I, or -1
  MorId beta;   // j -> q in J, or -1
  ObjId first_object;
  MorId first_morphism;
};

struct Fibre {
  CatRef category;
  std::vector<Copy> copies;
  int find(int summand, MorId alpha, MorId beta) const {
    for (std::size_t n = 0; n < copies.size(); ++n)
      if (copies[n].summand == summand && copies[n].alpha == alpha && copies[n].beta == beta)
        return static_cast<int>(n);
    return -1;
  }
};

Fibre build_fibre(const FinCategory& left, const FinCategory& right, const std::vector<Summand>& summands, ObjId i,
                  ObjId j) {
  Fibre out;
  CategoryBuilder b("a(" + left.object_name(i) + "," + right.object_name(j) + ")");
  for (std::size_t r = 0; r < summands.size(); ++r) {
    const Summand& s = summands[r];
    std::vector<MorId> alphas{-1}, betas{-1};
    if (s.from) alphas = left.hom(*s.from, i);
    if (s.to) betas = right.hom(j, *s.to);
    for (MorId alpha : alphas)
      for (MorId beta : betas) {
        std::string tag = "@" + std::to_string(r);
        if (alpha >= 0 || beta >= 0)
          tag += ":" + (alpha >= 0 ? left.morphism_name(alpha) : std::string("-")) + "," +
                 (beta >= 0 ? right.morphism_name(beta) : std::string("-"));
        const auto& v = *s.value;
        Copy copy{static_cast<int>(r), alpha, beta, b.num_objects(), b.num_morphisms()};
        for (ObjId x = 0; x < v.num_objects(); ++x) b.add_object(v.object_name(x) + tag);
        for (MorId m = 0; m < v.num_morphisms(); ++m) {
          if (v.is_identity(m))
            b.add_identity(copy.first_object + v.dom(m));
          else
            b.add_morphism(v.morphism_name(m) + tag, copy.first_object + v.dom(m), copy.first_object + v.cod(m));
        }
        for (MorId f = 0; f < v.num_morphisms(); ++f)
          for (ObjId o = 0; o < v.num_objects(); ++o)
            for (MorId g : v.hom(v.cod(f), o))
              b.set_compose(copy.first_morphism + g, copy.first_morphism + f,
                            copy.first_morphism + v.compose(g, f));
        out.copies.push_back(copy);
      }
  }
  out.category = std::move(b).build();
  return out;
}

}  // namespace

PseudoFunctor sum_of_representables(const CatRef& left, const CatRef& right, const std::vector<Summand>& summands,
                                    const std::vector<int>& left_parity, const std::vector<int>& right_parity) {
  const ProductIndex shape = product_index(left, right);
  const auto& ic = *left;
  const auto& jc = *right;
  std::vector<std::optional<FinFunctor>> twist;
  for (const auto& s : summands) twist.push_back(s.twisted ? involution(s.value) : std::nullopt);

  std::vector<Fibre> fibres;
  PseudoFunctorSpec spec;
  spec.index = shape.category;
  for (ObjId i = 0; i < ic.num_objects(); ++i)
    for (ObjId j = 0; j < jc.num_objects(); ++j) {
      fibres.push_back(build_fibre(ic, jc, summands, i, j));
      spec.at.push_back(fibres.back().category);
    }
  const auto& p = *shape.category;
  for (MorId m = 0; m < p.num_morphisms(); ++m) {
    const auto [s, t] = shape.split_morphism(m);
    const auto [i, j] = shape.split_object(p.dom(m));
    const auto [i2, j2] = shape.split_object(p.cod(m));
    const Fibre& from = fibres[static_cast<std::size_t>(shape.object(i, j))];
    const Fibre& to = fibres[static_cast<std::size_t>(shape.object(i2, j2))];
    const int parity = ((left_parity.empty() ? 0 : left_parity[s]) + (right_parity.empty() ? 0 : right_parity[t])) % 2;
    std::vector<ObjId> om(from.category->num_objects());
    std::vector<MorId> mm(from.category->num_morphisms());
    for (const Copy& c : from.copies) {
      // t : j2 -> j in J, read as j -> j2 in J^op
      const MorId alpha = c.alpha < 0 ? -1 : ic.compose(s, c.alpha);
      const MorId beta = c.beta < 0 ? -1 : jc.compose(c.beta, t);
      const Copy& d = to.copies[to.find(c.summand, alpha, beta)];
      const auto& v = *summands[c.summand].value;
      const bool flip = parity == 1 && twist[c.summand].has_value();
      for (ObjId x = 0; x < v.num_objects(); ++x)
        om[c.first_object + x] = d.first_object + (flip ? twist[c.summand]->obj(x) : x);
      for (MorId f = 0; f < v.num_morphisms(); ++f)
        mm[c.first_morphism + f] = d.first_morphism + (flip ? twist[c.summand]->mor(f) : f);
    }
    spec.on.push_back(validate_functor(from.category, to.category, std::move(om), std::move(mm)));
  }
  return validate_pseudofunctor(std::move(spec));
}

PseudoFunctor perturb(const PseudoFunctor& p, std::uint64_t seed) {
  Rng rng(seed);
  const auto& idx = *p.index();
  PseudoFunctorSpec spec;
  spec.index = p.index();
  for (ObjId i = 0; i < idx.num_objects(); ++i) spec.at.push_back(p.at(i));

  // tau_m : on'(m) => on(m), with on'(m) = G o on(m) and eta : G => Id.
  std::vector<NatTransformation> tau;
  for (MorId m = 0; m < idx.num_morphisms(); ++m) {
    const CatRef& c = p.at(idx.cod(m));
    std::vector<ObjId> g_obj(c->num_objects());
    std::vector<MorId> eta(c->num_objects());
    for (ObjId x = 0; x < c->num_objects(); ++x) {
      std::vector<MorId> into;
      for (ObjId y = 0; y < c->num_objects(); ++y)
        for (MorId h : c->hom(y, x))
          if (c->is_iso(h)) into.push_back(h);
      eta[x] = into[static_cast<std::size_t>(pick(rng, static_cast<int>(into.size())))];
      g_obj[x] = c->dom(eta[x]);
    }
    std::vector<MorId> g_mor(c->num_morphisms());
    for (MorId f = 0; f < c->num_morphisms(); ++f)
      g_mor[f] = c->compose(*c->inverse(eta[c->cod(f)]), c->compose(f, eta[c->dom(f)]));
    const FinFunctor g = validate_functor(c, c, g_obj, g_mor);
    const NatTransformation to_id = validate_nat(g, identity_functor(c), eta, true);
    spec.on.push_back(compose(g, p.on(m)));
    tau.push_back(whisker(to_id, p.on(m)));
  }
  for (ObjId i = 0; i < idx.num_objects(); ++i)
    spec.unit[i] = vertical(p.unit(i), tau[idx.id(i)]).components();
  for (MorId s = 0; s < idx.num_morphisms(); ++s)
    for (ObjId o = 0; o < idx.num_objects(); ++o)
      for (MorId t : idx.hom(idx.cod(s), o)) {
        const auto& c = *p.at(o);
        const auto& from = *p.at(idx.dom(s));
        std::vector<MorId> comps;
        for (ObjId x = 0; x < from.num_objects(); ++x) {
          // (tau_t * tau_s)^-1 o comp(t, s) o tau_{ts}
          const ObjId sx2 = spec.on[s].obj(x);
          const MorId both = c.compose(p.on(t).mor(tau[s].at(x)), tau[t].at(sx2));
          comps.push_back(c.compose(*c.inverse(both), c.compose(p.comp_at(t, s, x), tau[idx.compose(t, s)].at(x))));
        }
        spec.comp[{t, s}] = std::move(comps);
      }
  return validate_pseudofunctor(std::move(spec));
}

FuzzCase generate_case(std::uint64_t seed, int index, FuzzLimits limits) {
  const auto lefts = shapes::filtered_library();
  const auto rights = shapes::finite_library();
  const auto values = shapes::value_library();
  const CatRef& left = lefts[static_cast<std::size_t>(index) % lefts.size()];
  const CatRef& right = rights[(static_cast<std::size_t>(index) / lefts.size()) % rights.size()];
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(index));

  const auto left_parities = parity_functors(*left);
  const auto right_parities = parity_functors(*right);
  auto fits = [&](const std::vector<Summand>& summands) {
    for (ObjId i = 0; i < left->num_objects(); ++i)
      for (ObjId j = 0; j < right->num_objects(); ++j) {
        int objs = 0, mors = 0;
        for (const auto& s : summands) {
          const int copies = static_cast<int>((s.from ? left->hom(*s.from, i).size() : 1) *
                                              (s.to ? right->hom(j, *s.to).size() : 1));
          objs += copies * s.value->num_objects();
          mors += copies * s.value->num_morphisms();
        }
        if (objs == 0 || objs > limits.max_objects || mors > limits.max_morphisms) return false;
      }
    return true;
  };

  std::vector<Summand> chosen;
  std::string text;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Summand> summands;
    std::string desc;
    const int n = 1 + pick(rng, limits.max_summands);
    for (int r = 0; r < n; ++r) {
      Summand s;
      s.value = values[static_cast<std::size_t>(pick(rng, static_cast<int>(values.size())))];
      if (pick(rng, 4) != 0) {
        s.from = pick(rng, left->num_objects());
        s.to = pick(rng, right->num_objects());
      }
      s.twisted = pick(rng, 2) == 1 && involution(s.value).has_value();
      desc += (r ? " + " : "") + std::string(s.from ? "y(" + left->object_name(*s.from) + "," +
                                                          right->object_name(*s.to) + ")x"
                                                    : "") +
              s.value->name() + (s.twisted ? "~" : "");
      summands.push_back(std::move(s));
    }
    if (fits(summands)) {
      chosen = std::move(summands);
      text = std::move(desc);
      break;
    }
  }
  if (chosen.empty()) {
    chosen.push_back({std::nullopt, std::nullopt, values.front(), false});
    text = values.front()->name();
  }
  const auto& lp = left_parities[static_cast<std::size_t>(pick(rng, static_cast<int>(left_parities.size())))];
  const auto& rp = right_parities[static_cast<std::size_t>(pick(rng, static_cast<int>(right_parities.size())))];
  PseudoFunctor a = sum_of_representables(left, right, chosen, lp, rp);
  return {"I=" + left->name() + " J=" + right->name() + " a=" + text, make_biindexed(left, right, std::move(a))};
}

FuzzReport fuzz(int cases, std::uint64_t seed, FuzzLimits limits) {
  FuzzReport out;
  out.seed = seed;
  for (int n = 0; n < cases; ++n) {
    FuzzResult r;
    r.index = n;
    try {
      const FuzzCase c = generate_case(seed, n, limits);
      r.description = c.description;
      const EquivalenceReport e = check_equivalence(c.a);
      r.verdict = e.verdict;
      r.colim_of_lims_objects = e.colim_of_lims_objects;
      r.lim_of_colims_objects = e.lim_of_colims_objects;
    } catch (const Error& e) {
      r.error = std::string(to_string(e.code())) + ": " + e.what();
    }
    (r.verdict ? out.passed : out.failed) += 1;
    out.results.push_back(std::move(r));
  }
  return out;
}

}  // namespace twocat
