#pragma once

// Colimits and limits of finite-set-valued diagrams, and the canonical
// comparison map colim_I lim_K -> lim_K colim_I for a diagram on I x K.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twocat/fincat.hpp"

namespace twocat {

/// A functor from `index` to finite sets. Elements of the set at object o
/// are the positions 0..elements[o].size()-1; `elements[o][p]` is a payload
/// chosen by the caller (typically a morphism id of some category).
/// `actions[m][p]` is the image of position p under morphism m.
struct SetDiagram {
  CatRef index;
  std::vector<std::vector<int>> elements;
  std::vector<std::vector<int>> actions;

  int size(ObjId o) const { return static_cast<int>(elements[o].size()); }
};

/// Throws NotFunctorial when identities or composites are not respected,
/// ShapeMismatch when the tables do not match the index.
void validate_diagram(const SetDiagram& d);

struct SetElement {
  ObjId object;
  int position;
  auto operator<=>(const SetElement&) const = default;
};

/// Quotient of the disjoint union of a diagram's sets by the equivalence
/// relation generated by x ~ action(t)(x).
class ColimSet {
 public:
  explicit ColimSet(const SetDiagram& d);

  int num_classes() const { return static_cast<int>(members_.size()); }
  int class_of(ObjId o, int position) const { return class_of_[offsets_[o] + position]; }
  int class_of(SetElement e) const { return class_of(e.object, e.position); }
  /// Least member in (object, position) order.
  SetElement representative(int cls) const { return members_[cls].front(); }
  const std::vector<SetElement>& members(int cls) const { return members_[cls]; }

 private:
  std::vector<int> offsets_;
  std::vector<int> class_of_;
  std::vector<std::vector<SetElement>> members_;
};

/// All families {x_o} with action(m)(x_{dom m}) = x_{cod m} for every m.
class LimSet {
 public:
  explicit LimSet(const SetDiagram& d);

  int size() const { return static_cast<int>(families_.size()); }
  const std::vector<int>& family(int k) const { return families_[k]; }
  const std::vector<std::vector<int>>& families() const { return families_; }
  std::optional<int> find(const std::vector<int>& family) const;

 private:
  std::vector<std::vector<int>> families_;
  std::map<std::vector<int>, int> index_;
};

ColimSet colim_set(const SetDiagram& d);
LimSet lim_set(const SetDiagram& d);

struct SetInterchange {
  int colim_of_lims_size = 0;
  int lim_of_colims_size = 0;
  /// Canonical map: class of (i, family) -> family of classes.
  std::vector<int> map;
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
  std::vector<int> inverse;  // filled when bijective
  std::optional<std::string> witness;
};

/// `d` is a diagram on product_category(colim_index, lim_index). Computes
/// both composites independently and the canonical map between them.
/// Throws ShapeMismatch if d's index is not that product, NonWellDefined if
/// the canonical map depends on representatives.
SetInterchange interchange_map_set(const CatRef& colim_index, const CatRef& lim_index,
                                   const SetDiagram& d);

}  // namespace twocat
