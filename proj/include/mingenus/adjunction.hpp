#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mingenus/charvec_search.hpp"
#include "mingenus/lattice.hpp"

namespace mingenus {

enum class BoundMethod { kAdjunction, kKSet, kCatalog, kConstruction, kTrivial };

std::string to_string(BoundMethod m);

/// A genus (lower or upper) bound and where it came from.
///
/// `bound` is always normalized to "genus >= bound". `strict` records that it
/// was obtained from a strict inequality g > v by integrality (bound = v + 1).
/// `raw` is the formula value before normalization and clamping.
struct BoundReport {
  Int bound;
  bool strict = false;
  BoundMethod method = BoundMethod::kTrivial;
  std::optional<CharWitness> witness;
  bool exact = false;
  Int raw;
  std::vector<std::string> hypotheses;
  std::vector<std::string> notes;
};

/// Lower bound g >= (S^2 + 2 - m) / 2 with m = min |<c,S>| over
/// characteristic c with c^2 > sigma. Requires b_plus = 1, S^2 > 0.
BoundReport adjunction_genus_lb(const Lattice& lattice, const ClassVector& s, const SearchBudget& budget = {});

enum class KParity { kEven, kOppositeOfD };

struct CharacteristicNumbers {
  KParity parity;
  std::vector<Int> values;  // all admissible k in [0, 2 d xi^2)
};

/// Characteristic numbers for a primitive class of square xi_sq and multiplicity d.
CharacteristicNumbers characteristic_numbers(const Int& xi_sq, const Int& d);

struct KSetResult {
  Int d;
  ClassVector xi;
  std::vector<Int> k_values;
  std::optional<Int> k0;
};

/// The k in [0, d xi^2] of admissible parity for which some characteristic c
/// with <c,xi> = k + d xi^2 has c^2 > sigma + 4 k d.
KSetResult k_set(const Lattice& lattice, const ClassVector& xi, const Int& d, const SearchBudget& budget = {});

/// g > k0 d / 2 for classes d * xi, reported as g >= k0 d / 2 + 1; trivial 0 when K is empty.
BoundReport divisible_genus_lb(const Lattice& lattice, const ClassVector& xi, const Int& d,
                               const SearchBudget& budget = {});

/// Characteristic number of c1 for (xi, d): the residue of <c1,xi> + d xi^2 mod 2 d xi^2.
Int characteristic_number_of(const Lattice& lattice, const ClassVector& c1, const ClassVector& xi, const Int& d);

/// Formal dimension of the based moduli space on the complement of a surface
/// representing d * xi:
///   (c1^2 - sigma)/4 + ((k - d xi^2)^2 - <c1,xi>^2) / (4 xi^2).
Rational formal_dimension(const Lattice& lattice, const ClassVector& c1, const ClassVector& xi, const Int& d);

/// For characteristic primitive xi with xi^2 > 0 in a lattice of negative
/// signature (and caller-asserted H_1 = 0): g > C(d,2) xi^2. Empty when any
/// hypothesis fails.
std::optional<BoundReport> characteristic_class_bound(const Lattice& lattice, const ClassVector& xi, const Int& d,
                                                      bool h1_zero);

}  // namespace mingenus
