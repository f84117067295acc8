#include "mingenus/adjunction.hpp"

#include <algorithm>

#include "mingenus/errors.hpp"

namespace mingenus {
namespace {

bool is_odd(const Int& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

void require_divisible_setup(const Lattice& lattice, const ClassVector& xi, const Int& d) {
  if (lattice.signature().b_plus != 1) throw PreconditionError("requires b_plus = 1");
  if (d <= 1) throw PreconditionError("multiplicity d must exceed 1");
  if (lattice.square(xi) <= 0) throw PreconditionError("xi must have positive square");
  if (divisibility(xi).d != 1) throw PreconditionError("xi must be primitive");
}

}  // namespace

std::string to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::kAdjunction: return "adjunction";
    case BoundMethod::kKSet: return "k_set";
    case BoundMethod::kCatalog: return "catalog";
    case BoundMethod::kConstruction: return "construction";
    case BoundMethod::kTrivial: return "trivial";
  }
  return "unknown";
}

BoundReport adjunction_genus_lb(const Lattice& lattice, const ClassVector& s, const SearchBudget& budget) {
  const MinPairingResult best = min_abs_pairing(lattice, s, budget);
  const Int numer = lattice.square(s) + 2 - best.m;
  // m has the parity of S^2, so numer is even
  BoundReport r;
  r.raw = numer / 2;
  r.bound = std::max<Int>(r.raw, 0);
  r.strict = false;
  r.method = BoundMethod::kAdjunction;
  r.witness = best.witness;
  return r;
}

CharacteristicNumbers characteristic_numbers(const Int& xi_sq, const Int& d) {
  if (xi_sq <= 0) throw PreconditionError("characteristic numbers need xi^2 > 0");
  if (d < 1) throw PreconditionError("characteristic numbers need d >= 1");
  CharacteristicNumbers out;
  Int first = 0;
  if (is_odd(xi_sq)) {
    out.parity = KParity::kOppositeOfD;
    first = is_odd(d) ? 0 : 1;
  } else {
    out.parity = KParity::kEven;
  }
  const Int end = 2 * d * xi_sq;
  for (Int k = first; k < end; k += 2) out.values.push_back(k);
  return out;
}

KSetResult k_set(const Lattice& lattice, const ClassVector& xi, const Int& d, const SearchBudget& budget) {
  require_divisible_setup(lattice, xi, d);
  const Int xi_sq = lattice.square(xi);
  const Int top = d * xi_sq;
  KSetResult out{d, xi, {}, std::nullopt};
  for (const Int& k : characteristic_numbers(xi_sq, d).values) {
    if (k > top) break;
    const PairingConstraint con{xi, k + top};
    if (has_square_above(lattice, std::span(&con, 1), lattice.sigma() + 4 * k * d, budget)) out.k_values.push_back(k);
  }
  if (!out.k_values.empty()) out.k0 = out.k_values.back();
  return out;
}

BoundReport divisible_genus_lb(const Lattice& lattice, const ClassVector& xi, const Int& d,
                               const SearchBudget& budget) {
  const KSetResult ks = k_set(lattice, xi, d, budget);
  BoundReport r;
  if (!ks.k0) {
    r.bound = 0;
    r.raw = 0;
    r.method = BoundMethod::kTrivial;
    return r;
  }
  const Int kd = *ks.k0 * d;  // even by the parity rule
  r.raw = kd / 2;
  r.bound = r.raw + 1;
  r.strict = true;
  r.method = BoundMethod::kKSet;
  const PairingConstraint con{xi, *ks.k0 + d * lattice.square(xi)};
  auto best = max_square_with_pairings(lattice, std::span(&con, 1), budget);
  r.witness = best->witness;
  return r;
}

Int characteristic_number_of(const Lattice& lattice, const ClassVector& c1, const ClassVector& xi, const Int& d) {
  const Int xi_sq = lattice.square(xi);
  const Int modulus = 2 * d * xi_sq;
  Int k;
  const Int shifted = lattice.pairing(c1, xi) + d * xi_sq;
  mpz_fdiv_r(k.get_mpz_t(), shifted.get_mpz_t(), modulus.get_mpz_t());
  return k;
}

Rational formal_dimension(const Lattice& lattice, const ClassVector& c1, const ClassVector& xi, const Int& d) {
  // d = 1 is allowed here: the count is arithmetic and needs no divisibility.
  if (d < 1) throw PreconditionError("multiplicity d must be positive");
  if (lattice.square(xi) <= 0) throw PreconditionError("xi must have positive square");
  if (divisibility(xi).d != 1) throw PreconditionError("xi must be primitive");
  if (!lattice.is_characteristic(c1)) throw PreconditionError("c1 " + c1.to_string() + " is not characteristic");
  const Int xi_sq = lattice.square(xi);
  const Int p = lattice.pairing(c1, xi);
  const Int k = characteristic_number_of(lattice, c1, xi, d);
  const Int shift = k - d * xi_sq;
  Rational out = Rational(lattice.square(c1) - lattice.sigma(), 4) + Rational(shift * shift - p * p, 4 * xi_sq);
  out.canonicalize();
  return out;
}

std::optional<BoundReport> characteristic_class_bound(const Lattice& lattice, const ClassVector& xi, const Int& d,
                                                      bool h1_zero) {
  lattice.check_dimension(xi);
  if (!h1_zero || lattice.sigma() >= 0 || d <= 1 || xi.is_zero()) return std::nullopt;
  const Int xi_sq = lattice.square(xi);
  if (xi_sq <= 0 || divisibility(xi).d != 1 || !lattice.is_characteristic(xi)) return std::nullopt;
  BoundReport r;
  r.raw = d * (d - 1) / 2 * xi_sq;
  r.bound = r.raw + 1;
  r.strict = true;
  r.method = BoundMethod::kCatalog;
  r.hypotheses = {"H_1(X) = 0"};
  return r;
}

}  // namespace mingenus
