#pragma once

// Reproducible generator of bi-indexed pseudofunctors a : I x J^op -> Cat
// with I from the filtered library and J from the finite library.
//
// Values are strict sums of representables
//   a(i, j) = sum_r Hom_I(p_r, i) x Hom_J(j, q_r) x V_r
// and constant summands, with V_r from the value library. Summands whose
// value has a nontrivial involution may be twisted by a parity functor.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twocat/interchange.hpp"
#include "twocat/pseudo.hpp"

namespace twocat {

struct FuzzLimits {
  int max_objects = 4;
  int max_morphisms = 12;
  int max_summands = 3;
};

struct FuzzCase {
  std::string description;
  BiIndexedPseudoFunctor a;
};

/// Case `index` of the stream seeded by `seed`. Cases cycle through every
/// (I, J) pair of the libraries.
FuzzCase generate_case(std::uint64_t seed, int index, FuzzLimits limits = {});

/// Strict sum-of-representables pseudofunctor for explicit choices; used by
/// the generator and by hand-written tests.
struct Summand {
  std::optional<ObjId> from;  // p in I; nullopt for a constant summand
  std::optional<ObjId> to;    // q in J
  CatRef value;
  bool twisted = false;
};
PseudoFunctor sum_of_representables(const CatRef& left, const CatRef& right, const std::vector<Summand>& summands,
                                    const std::vector<int>& left_parity = {},
                                    const std::vector<int>& right_parity = {});

/// Replaces every functor p(m) by a naturally isomorphic one, chosen from
/// `seed`, and adjusts the unit and composition cells so the result is a
/// pseudofunctor equivalent to p. Usually not strict.
PseudoFunctor perturb(const PseudoFunctor& p, std::uint64_t seed);

struct FuzzResult {
  int index = 0;
  std::string description;
  bool verdict = false;
  int colim_of_lims_objects = 0;
  int lim_of_colims_objects = 0;
  std::optional<std::string> error;
};

struct FuzzReport {
  std::uint64_t seed = 0;
  int passed = 0;
  int failed = 0;
  std::vector<FuzzResult> results;
};

FuzzReport fuzz(int cases, std::uint64_t seed, FuzzLimits limits = {});

}  // namespace twocat
