#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mingenus/charvec_search.hpp"
#include "mingenus/lattice.hpp"

namespace mingenus {

/// Lower bound on the number N of pairs of +-1 intersection points between two
/// algebraically disjoint surfaces.
struct IntersectionReport {
  Int n_lb;
  std::optional<CharWitness> witness;
  bool hypothesis_ok = false;  // some admissible characteristic vector exists
  std::optional<Int> gilmer_lb;
  std::optional<Int> t1;
  std::optional<Int> t2;
};

/// Looks for characteristic c with c^2 > sigma and 0 <= <c,S_i> < chi(S_i) + S_i^2
/// for every i. Such a c shows that disjoint surfaces of the given genera
/// cannot represent the classes. Requires b_plus = number of classes > 1,
/// pairwise orthogonal classes of positive square.
std::optional<CharWitness> disjointness_obstruction(const Lattice& lattice, std::span<const ClassVector> classes,
                                                    std::span<const Int> genera, const SearchBudget& budget = {});

/// Best bound g1 + g2 + N >= (S1^2 + S2^2 - <c, S1 + S2>)/2 + 1 over
/// admissible c, returned as a bound on N (clamped at 0). Requires b_plus = 2.
IntersectionReport intersection_lb(const Lattice& lattice, const ClassVector& s1, const ClassVector& s2, const Int& g1,
                                   const Int& g2, const SearchBudget& budget = {});

/// Comparison bound N >= ceil((S1^2 + S2^2)/4) - 1 - g1 - g2 when S1 + S2 is
/// divisible by 2; empty otherwise.
std::optional<Int> gilmer_lb(const Int& s1_sq, const Int& s2_sq, const Int& g1, const Int& g2, bool sum_even);

}  // namespace mingenus
