#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mingenus/lattice.hpp"

namespace mingenus {

/// A characteristic vector together with its square and its pairings with
/// the query classes, in query order.
struct CharWitness {
  ClassVector c;
  Int square;
  std::vector<Int> pairings;
};

/// Caps for the search. `max_nodes` bounds every single enumeration;
/// `max_abs_pairing` bounds the outer pairing scan and defaults to
/// 4 * (|sigma| + xi^2 + rank * max|gram entry|) when unset.
struct SearchBudget {
  std::uint64_t max_nodes = 2'000'000;
  std::optional<Int> max_abs_pairing;

  void validate() const;
};

/// Linear constraint <c, xi> = t on a characteristic vector c.
struct PairingConstraint {
  ClassVector xi;
  Int t;
};

struct MaxSquareResult {
  Int max_square;
  CharWitness witness;
};

/// Maximum of <c,c> over characteristic c with <c, xi_i> = t_i for all i.
/// The constraint classes must be pairwise orthogonal with positive squares
/// and there must be exactly b_plus of them, so that the form is negative
/// definite on their orthogonal complement. Returns nullopt when the affine
/// set contains no characteristic vector. The witness is the
/// lexicographically smallest maximizer.
std::optional<MaxSquareResult> max_square_with_pairings(const Lattice& lattice,
                                                        std::span<const PairingConstraint> constraints,
                                                        const SearchBudget& budget = {});

/// True iff some characteristic c satisfying the constraints has <c,c> > threshold.
/// Same preconditions as max_square_with_pairings; stops at the first hit.
bool has_square_above(const Lattice& lattice, std::span<const PairingConstraint> constraints, const Int& threshold,
                      const SearchBudget& budget = {});

struct MinPairingResult {
  Int m;
  CharWitness witness;
};

/// Smallest |<c, xi>| over characteristic c with c^2 > sigma. Requires
/// b_plus = 1 and xi^2 > 0. Throws BudgetExhausted when the pairing cap is
/// reached first.
MinPairingResult min_abs_pairing(const Lattice& lattice, const ClassVector& xi, const SearchBudget& budget = {});

/// The pairing cap min_abs_pairing uses when the budget does not set one.
Int default_pairing_cap(const Lattice& lattice, const ClassVector& xi);

/// Exhaustive oracle over the box |c_i| <= box. Among minimizers prefers a
/// nonnegative pairing, then the largest square, then the lexicographically
/// smallest vector.
std::optional<MinPairingResult> brute_force_min_pairing(const Lattice& lattice, const ClassVector& xi, long box);

struct PairingSumResult {
  Int t1;
  Int t2;
  CharWitness witness;
};

/// Minimizes t1 + t2 over feasible characteristic c with c^2 > sigma,
/// <c, x_i> = t_i and 0 <= t_i <= t_max_i; ties go to the smallest t1.
/// Requires b_plus = 2, x1 orthogonal to x2 and positive squares.
std::optional<PairingSumResult> min_pairing_sum_2(const Lattice& lattice, const ClassVector& x1, const ClassVector& x2,
                                                  const Int& t1_max, const Int& t2_max,
                                                  const SearchBudget& budget = {});

/// Builds a witness record for c against the query classes.
CharWitness make_witness(const Lattice& lattice, const ClassVector& c, std::span<const ClassVector> queries);

}  // namespace mingenus
