#include "mingenus/intersections.hpp"

#include <algorithm>

#include "mingenus/errors.hpp"

namespace mingenus {
namespace {

bool is_odd(const Int& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

void require_disjoint_setup(const Lattice& lattice, std::span<const ClassVector> classes, std::span<const Int> genera) {
  const std::size_t n = classes.size();
  if (n < 2) throw PreconditionError("at least two classes are required");
  if (genera.size() != n) throw PreconditionError("one genus per class is required");
  if (lattice.signature().b_plus != static_cast<int>(n))
    throw PreconditionError("b_plus must equal the number of classes");
  for (std::size_t i = 0; i < n; ++i) {
    if (genera[i] < 0) throw PreconditionError("genera must be nonnegative");
    if (lattice.square(classes[i]) <= 0) throw PreconditionError("classes must have positive square");
    for (std::size_t j = 0; j < i; ++j)
      if (lattice.pairing(classes[i], classes[j]) != 0)
        throw PreconditionError("classes must be algebraically disjoint (pairwise orthogonal)");
  }
}

}  // namespace

std::optional<CharWitness> disjointness_obstruction(const Lattice& lattice, std::span<const ClassVector> classes,
                                                    std::span<const Int> genera, const SearchBudget& budget) {
  require_disjoint_setup(lattice, classes, genera);
  const std::size_t n = classes.size();
  std::vector<Int> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Int sq = lattice.square(classes[i]);
    lo[i] = is_odd(sq) ? 1 : 0;
    hi[i] = 1 - 2 * genera[i] + sq;  // strict: t < chi + S^2
    if (hi[i] < lo[i]) return std::nullopt;
  }
  std::vector<PairingConstraint> cons(n);
  for (std::size_t i = 0; i < n; ++i) cons[i] = {classes[i], lo[i]};
  for (;;) {
    if (has_square_above(lattice, cons, lattice.sigma(), budget))
      return max_square_with_pairings(lattice, cons, budget)->witness;
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (cons[i].t + 2 <= hi[i]) {
        cons[i].t += 2;
        advanced = true;
        break;
      }
      cons[i].t = lo[i];
    }
    if (!advanced) return std::nullopt;
  }
}

IntersectionReport intersection_lb(const Lattice& lattice, const ClassVector& s1, const ClassVector& s2, const Int& g1,
                                   const Int& g2, const SearchBudget& budget) {
  const ClassVector classes[] = {s1, s2};
  const Int genera[] = {g1, g2};
  require_disjoint_setup(lattice, classes, genera);
  const Int sq1 = lattice.square(s1);
  const Int sq2 = lattice.square(s2);

  IntersectionReport r;
  const ClassVector sum = s1 + s2;
  const bool sum_even = std::all_of(sum.coeffs().begin(), sum.coeffs().end(), [](const Int& v) { return !is_odd(v); });
  r.gilmer_lb = gilmer_lb(sq1, sq2, g1, g2, sum_even);

  auto best = min_pairing_sum_2(lattice, s1, s2, 1 - 2 * g1 + sq1, 1 - 2 * g2 + sq2, budget);
  if (!best) {
    r.n_lb = 0;
    r.hypothesis_ok = false;
    return r;
  }
  r.hypothesis_ok = true;
  r.t1 = best->t1;
  r.t2 = best->t2;
  r.witness = best->witness;
  const Int value = (sq1 + sq2 - best->t1 - best->t2) / 2 + 1 - g1 - g2;
  r.n_lb = std::max<Int>(value, 0);
  return r;
}

std::optional<Int> gilmer_lb(const Int& s1_sq, const Int& s2_sq, const Int& g1, const Int& g2, bool sum_even) {
  if (s1_sq <= 0 || s2_sq <= 0) throw PreconditionError("Gilmer bound needs positive squares");
  if (!sum_even) return std::nullopt;
  Int quarter;
  const Int total = s1_sq + s2_sq;
  mpz_cdiv_q_ui(quarter.get_mpz_t(), total.get_mpz_t(), 4);
  return std::max<Int>(quarter - 1 - g1 - g2, 0);
}

}  // namespace mingenus
