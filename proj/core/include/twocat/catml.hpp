#pragma once

// The .catml text format.
//
//   # comment
//   [category C]
//   objects = a b
//   mor f : a -> b
//   compose g f = h            # g after f is h; identity composites implicit
//
//   [presentation P]           # elaborated to a full table
//   objects = x y
//   gen f : x -> y
//   rel e.f = f                # paths read right to left; rules rewrite left to right
//
//   [functor F : C -> D]
//   obj a = x
//   mor f = g                  # identities implicit; paths like g.h allowed
//
//   [nat N : F => G]
//   at a = m
//
//   [pseudofunctor B : I -> CAT]
//   at i = C
//   on s = F                   # omitted for identities means the identity functor
//   unit i : x=m y=n           # on(id_i) => Id; omitted means identity
//   comp t s : x=m             # on(t o s) => on(t) o on(s)
//
//   [pseudofunctor A : I x J^op -> CAT]    # objects (i,j), morphisms (s,t)
//
//   [cocone R : B -> C]
//   leg i = F
//   cell s : x=m               # leg_i => leg_i' o B(s)
//
//   [cone Q : C -> B]
//   leg k = F
//   cell m : z=h               # leg_b => B(m) o leg_a

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twocat/bicolim.hpp"
#include "twocat/bilim.hpp"
#include "twocat/fincat.hpp"
#include "twocat/pseudo.hpp"

namespace twocat {

struct ParseOptions {
  /// ElaborationDiverges when a presentation has more morphisms.
  int max_elab = 64;
};

using Assignments = std::vector<std::pair<std::string, std::string>>;

struct CellTable {
  std::vector<std::string> key;  // one object, or two morphisms (t, s)
  Assignments entries;
};

struct FunctorEntry {
  std::string name, source, target;
  Assignments objects, morphisms;
  FinFunctor value;
};

struct NatEntry {
  std::string name, source, target;
  Assignments components;
  NatTransformation value;
};

struct PseudoEntry {
  std::string name;
  std::string left;
  std::optional<std::string> right;  // set for I x J^op
  Assignments at, on;
  std::vector<CellTable> units, comps;
  PseudoFunctor value;
  std::optional<BiIndexedPseudoFunctor> biindexed;
};

struct CoconeEntry {
  std::string name, pseudofunctor, target;
  Assignments legs;
  std::vector<CellTable> cells;
  PseudoCocone value;
};

struct ConeEntry {
  std::string name, source, pseudofunctor;
  Assignments legs;
  std::vector<CellTable> cells;
  PseudoCone value;
};

/// Every entity of one or more files, validated, in declaration order.
class Workspace {
 public:
  const CatRef& category(const std::string& name) const;
  const FunctorEntry& functor(const std::string& name) const;
  const NatEntry& nat(const std::string& name) const;
  const PseudoEntry& pseudofunctor(const std::string& name) const;
  const CoconeEntry& cocone(const std::string& name) const;
  const ConeEntry& cone(const std::string& name) const;

  const std::vector<std::pair<std::string, CatRef>>& categories() const { return categories_; }
  const std::vector<FunctorEntry>& functors() const { return functors_; }
  const std::vector<NatEntry>& nats() const { return nats_; }
  const std::vector<PseudoEntry>& pseudofunctors() const { return pseudofunctors_; }
  const std::vector<CoconeEntry>& cocones() const { return cocones_; }
  const std::vector<ConeEntry>& cones() const { return cones_; }

 private:
  friend class WorkspaceBuilder;
  std::vector<std::pair<std::string, CatRef>> categories_;
  std::vector<FunctorEntry> functors_;
  std::vector<NatEntry> nats_;
  std::vector<PseudoEntry> pseudofunctors_;
  std::vector<CoconeEntry> cocones_;
  std::vector<ConeEntry> cones_;
  std::map<std::string, std::pair<char, std::size_t>> names_;
};

Workspace parse_catml(std::string_view text, std::string source = "<input>", ParseOptions options = {});
Workspace parse_catml_files(const std::vector<std::string>& paths, ParseOptions options = {});

/// A morphism given by name or as a path g.f.h (composed right to left).
MorId resolve_morphism(const FinCategory& c, std::string_view token);

/// Canonical text of a category block; parsing it gives an isomorphic category.
std::string print_category(const FinCategory& c, const std::string& name);
std::string print_functor(const std::string& name, const std::string& source, const std::string& target,
                          const FinFunctor& f);
/// The whole workspace; presentations come out elaborated.
std::string print_catml(const Workspace& w);

}  // namespace twocat
