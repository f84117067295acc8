#include "mingenus/charvec_search.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "mingenus/errors.hpp"
#include "mingenus/int_linear.hpp"

namespace mingenus {
namespace {

Int round_nearest(const Rational& x) {
  Rational shifted = x + Rational(1, 2);
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return out;
}

bool is_odd(const Int& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

void check_constraint_classes(const Lattice& lattice, std::span<const PairingConstraint> constraints) {
  if (constraints.empty()) throw PreconditionError("at least one pairing constraint is required");
  if (static_cast<int>(constraints.size()) != lattice.signature().b_plus)
    throw PreconditionError("number of constraint classes (" + std::to_string(constraints.size()) +
                            ") must equal b_plus (" + std::to_string(lattice.signature().b_plus) + ")");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    lattice.check_dimension(constraints[i].xi);
    if (lattice.square(constraints[i].xi) <= 0)
      throw PreconditionError("constraint class " + constraints[i].xi.to_string() + " must have positive square");
    for (std::size_t j = 0; j < i; ++j)
      if (lattice.pairing(constraints[i].xi, constraints[j].xi) != 0)
        throw PreconditionError("constraint classes must be pairwise orthogonal");
  }
}

/// The characteristic vectors with prescribed pairings, written as
/// c = c0 + 2 * sum_a y_a k_a over an integer basis k_a of the common
/// orthogonal complement. There c^2 = top - 4 * (y - y*)^T P (y - y*) with
/// P = -(k_a . k_b) positive definite, so maximizing c^2 is a closest
/// vector problem that we solve by exact depth-first enumeration.
class CharacteristicSlice {
 public:
  static std::optional<CharacteristicSlice> build(const Lattice& lattice,
                                                  std::span<const PairingConstraint> constraints) {
    check_constraint_classes(lattice, constraints);
    const std::size_t rank = lattice.rank();
    const ClassVector w = lattice.characteristic_basepoint();

    IntMatrix a;
    std::vector<Int> rhs;
    for (const auto& con : constraints) {
      std::vector<Int> row = lattice.dual_row(con.xi);
      Int aw = 0;
      for (std::size_t j = 0; j < rank; ++j) aw += row[j] * w[j];
      const Int diff = con.t - aw;
      if (is_odd(diff)) return std::nullopt;  // parity obstruction
      rhs.push_back(diff / 2);
      a.push_back(std::move(row));
    }
    auto sol = solve_integer_system(a, rhs);
    if (!sol) return std::nullopt;

    CharacteristicSlice s(lattice);
    std::vector<Int> c0(rank);
    for (std::size_t j = 0; j < rank; ++j) c0[j] = w[j] + 2 * sol->particular[j];
    s.c0_ = ClassVector(std::move(c0));
    s.basis_ = std::move(sol->kernel);

    const std::size_t dim = s.basis_.size();
    s.gram_.assign(dim, std::vector<Int>(dim, Int(0)));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        s.gram_[i][j] = -lattice.pairing(ClassVector(s.basis_[i]), ClassVector(s.basis_[j]));
        s.gram_[j][i] = s.gram_[i][j];
      }
    lll_reduce_gram(s.gram_, s.basis_);
    s.prepare();
    return s;
  }

  /// Largest square and the lexicographically smallest vector attaining it.
  std::pair<Int, ClassVector> maximize(const SearchBudget& budget) const {
    Search search(*this, budget, std::nullopt, false);
    search.run();
    return {search.best_square(), search.best_vector()};
  }

  /// Some vector with square strictly above threshold, if one exists.
  std::optional<ClassVector> find_above(const Int& threshold, const SearchBudget& budget) const {
    // c^2 > T  <=>  q(y) < (top - T) / 4
    Rational radius = (top_ - Rational(threshold)) / 4;
    if (sgn(radius) <= 0) return std::nullopt;
    Search search(*this, budget, radius, true);
    search.run();
    if (!search.found()) return std::nullopt;
    return search.best_vector();
  }

 private:
  explicit CharacteristicSlice(const Lattice& lattice) : lattice_(&lattice) {}

  void prepare() {
    const std::size_t dim = basis_.size();
    h_.assign(dim, Int(0));
    for (std::size_t a = 0; a < dim; ++a) h_[a] = lattice_->pairing(ClassVector(basis_[a]), c0_);
    top_ = Rational(lattice_->square(c0_));
    if (dim == 0) return;
    ldl_ = ldl_decompose(gram_);
    // Solve P y* = h / 2 via L D L^T.
    std::vector<Rational> z(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      Rational acc = Rational(h_[i]) / 2;
      for (std::size_t k = 0; k < i; ++k) acc -= ldl_.lower[i][k] * z[k];
      z[i] = acc;
    }
    center_.assign(dim, Rational(0));
    for (std::size_t ii = dim; ii-- > 0;) {
      Rational acc = z[ii] / ldl_.diag[ii];
      for (std::size_t k = ii + 1; k < dim; ++k) acc -= ldl_.lower[k][ii] * center_[k];
      center_[ii] = acc;
    }
    // top = c0^2 + 4 y*^T P y* = c0^2 + 2 h . y*
    for (std::size_t i = 0; i < dim; ++i) top_ += 2 * Rational(h_[i]) * center_[i];
  }

  ClassVector vector_at(const std::vector<Int>& y) const {
    ClassVector c = c0_;
    for (std::size_t a = 0; a < y.size(); ++a) {
      if (y[a] == 0) continue;
      for (std::size_t j = 0; j < c.size(); ++j) c[j] += 2 * y[a] * basis_[a][j];
    }
    return c;
  }

  class Search {
   public:
    Search(const CharacteristicSlice& slice, const SearchBudget& budget, std::optional<Rational> radius,
           bool stop_at_first)
        : s_(slice), budget_(budget), radius_(std::move(radius)), strict_(stop_at_first),
          stop_at_first_(stop_at_first), y_(slice.basis_.size()), diff_(slice.basis_.size()) {}

    void run() {
      const std::size_t dim = s_.basis_.size();
      if (dim == 0) {
        leaf(Rational(0));
        return;
      }
      descend(dim - 1, Rational(0));
    }

    bool found() const { return best_q_.has_value(); }
    const ClassVector& best_vector() const { return best_c_; }
    Int best_square() const {
      // top - 4 q is an integer at every lattice point
      Rational sq = s_.top_ - 4 * *best_q_;
      return sq.get_num();
    }

   private:
    bool admissible(const Rational& partial) const {
      const Rational* bound = best_q_ ? &*best_q_ : (radius_ ? &*radius_ : nullptr);
      if (!bound) return true;
      if (strict_ && !best_q_) return partial < *bound;
      return partial <= *bound;
    }

    void tick() {
      if (++nodes_ > budget_.max_nodes)
        throw BudgetExhausted("enumeration exceeded " + std::to_string(budget_.max_nodes) + " nodes",
                              "nodes=" + std::to_string(nodes_));
    }

    void leaf(const Rational& q) {
      ClassVector c = s_.vector_at(y_);
      if (!best_q_ || q < *best_q_ || (q == *best_q_ && c < best_c_)) {
        best_q_ = q;
        best_c_ = std::move(c);
      }
      if (stop_at_first_) done_ = true;
    }

    void descend(std::size_t level, const Rational& partial) {
      const auto& ldl = s_.ldl_;
      const std::size_t dim = s_.basis_.size();
      Rational center = s_.center_[level];
      for (std::size_t j = level + 1; j < dim; ++j) center -= ldl.lower[j][level] * diff_[j];
      const Rational& weight = ldl.diag[level];

      auto cost = [&](const Int& v) -> Rational {
        Rational d = Rational(v) - center;
        return partial + weight * d * d;
      };
      auto visit = [&](const Int& v) -> bool {
        Rational q = cost(v);
        if (!admissible(q)) return false;
        tick();
        y_[level] = v;
        diff_[level] = Rational(v) - s_.center_[level];
        if (level == 0)
          leaf(q);
        else
          descend(level - 1, q);
        return true;
      };

      // Schnorr-Euchner zig-zag outward from the nearest integer; each side
      // stops at the first value outside the (possibly shrinking) radius.
      const Int start = round_nearest(center);
      Int up = start + 1;
      Int down = start - 1;
      bool up_alive = true;
      bool down_alive = true;
      if (!visit(start)) return;
      while (!done_ && (up_alive || down_alive)) {
        bool take_up;
        if (up_alive && down_alive) {
          Rational du = Rational(up) - center;
          Rational dd = center - Rational(down);
          take_up = du < dd;
        } else {
          take_up = up_alive;
        }
        if (take_up) {
          if (visit(up))
            ++up;
          else
            up_alive = false;
        } else {
          if (visit(down))
            --down;
          else
            down_alive = false;
        }
      }
    }

    const CharacteristicSlice& s_;
    const SearchBudget& budget_;
    std::optional<Rational> radius_;
    bool strict_;
    bool stop_at_first_;
    bool done_ = false;
    std::uint64_t nodes_ = 0;
    std::vector<Int> y_;
    std::vector<Rational> diff_;
    std::optional<Rational> best_q_;
    ClassVector best_c_;
  };

  const Lattice* lattice_;
  ClassVector c0_;
  IntMatrix basis_;
  IntMatrix gram_;
  std::vector<Int> h_;
  LdlDecomposition ldl_;
  std::vector<Rational> center_;
  Rational top_;
};

std::vector<ClassVector> classes_of(std::span<const PairingConstraint> constraints) {
  std::vector<ClassVector> out;
  for (const auto& c : constraints) out.push_back(c.xi);
  return out;
}

}  // namespace

void SearchBudget::validate() const {
  if (max_nodes == 0) throw PreconditionError("search budget max_nodes must be positive");
  if (max_abs_pairing && *max_abs_pairing <= 0) throw PreconditionError("search budget max_abs_pairing must be positive");
}

CharWitness make_witness(const Lattice& lattice, const ClassVector& c, std::span<const ClassVector> queries) {
  CharWitness w{c, lattice.square(c), {}};
  for (const auto& q : queries) w.pairings.push_back(lattice.pairing(c, q));
  return w;
}

std::optional<MaxSquareResult> max_square_with_pairings(const Lattice& lattice,
                                                        std::span<const PairingConstraint> constraints,
                                                        const SearchBudget& budget) {
  budget.validate();
  auto slice = CharacteristicSlice::build(lattice, constraints);
  if (!slice) return std::nullopt;
  auto [square, c] = slice->maximize(budget);
  const auto queries = classes_of(constraints);
  return MaxSquareResult{square, make_witness(lattice, c, queries)};
}

bool has_square_above(const Lattice& lattice, std::span<const PairingConstraint> constraints, const Int& threshold,
                      const SearchBudget& budget) {
  budget.validate();
  auto slice = CharacteristicSlice::build(lattice, constraints);
  if (!slice) return false;
  return slice->find_above(threshold, budget).has_value();
}

Int default_pairing_cap(const Lattice& lattice, const ClassVector& xi) {
  const Int rank_term = Int(static_cast<unsigned long>(lattice.rank())) * lattice.max_abs_entry();
  return 4 * (Int(std::abs(lattice.sigma())) + lattice.square(xi) + rank_term);
}

MinPairingResult min_abs_pairing(const Lattice& lattice, const ClassVector& xi, const SearchBudget& budget) {
  budget.validate();
  if (lattice.signature().b_plus != 1) throw PreconditionError("min_abs_pairing requires b_plus = 1");
  const Int xi_sq = lattice.square(xi);
  if (xi_sq <= 0) throw PreconditionError("min_abs_pairing requires a class of positive square");
  const Int cap = budget.max_abs_pairing ? *budget.max_abs_pairing : default_pairing_cap(lattice, xi);
  const Int sigma = lattice.sigma();

  Int t = is_odd(xi_sq) ? 1 : 0;
  Int last = -1;
  for (; t <= cap; t += 2) {
    last = t;
    const PairingConstraint con{xi, t};
    if (!has_square_above(lattice, std::span(&con, 1), sigma, budget)) continue;
    auto best = max_square_with_pairings(lattice, std::span(&con, 1), budget);
    return MinPairingResult{t, best->witness};
  }
  throw BudgetExhausted("no admissible characteristic vector with |<c,xi>| <= " + cap.get_str(),
                        "last t tried = " + last.get_str());
}

std::optional<MinPairingResult> brute_force_min_pairing(const Lattice& lattice, const ClassVector& xi, long box) {
  if (box <= 0) throw PreconditionError("box must be positive");
  lattice.check_dimension(xi);
  const std::size_t rank = lattice.rank();
  const Int sigma = lattice.sigma();
  std::vector<long> cur(rank, -box);
  std::optional<MinPairingResult> best;
  const ClassVector queries[] = {xi};
  for (;;) {
    std::vector<Int> coeffs(cur.begin(), cur.end());
    ClassVector c(std::move(coeffs));
    if (lattice.is_characteristic(c)) {
      const Int sq = lattice.square(c);
      const Int pr = lattice.pairing(c, xi);
      if (sq > sigma && pr >= 0) {
        bool better = !best || pr < best->m ||
                      (pr == best->m && (sq > best->witness.square || (sq == best->witness.square && c < best->witness.c)));
        if (better) best = MinPairingResult{pr, make_witness(lattice, c, queries)};
      }
    }
    bool advanced = false;
    for (std::size_t i = rank; i-- > 0;) {
      if (cur[i] < box) {
        ++cur[i];
        advanced = true;
        break;
      }
      cur[i] = -box;
    }
    if (!advanced) break;
  }
  return best;
}

std::optional<PairingSumResult> min_pairing_sum_2(const Lattice& lattice, const ClassVector& x1, const ClassVector& x2,
                                                  const Int& t1_max, const Int& t2_max, const SearchBudget& budget) {
  budget.validate();
  if (lattice.signature().b_plus != 2) throw PreconditionError("min_pairing_sum_2 requires b_plus = 2");
  const PairingConstraint probe[] = {{x1, 0}, {x2, 0}};
  check_constraint_classes(lattice, probe);
  if (t1_max < 0 || t2_max < 0) return std::nullopt;

  const Int p1 = is_odd(lattice.square(x1)) ? 1 : 0;
  const Int p2 = is_odd(lattice.square(x2)) ? 1 : 0;
  const Int sigma = lattice.sigma();
  for (Int sum = p1 + p2; sum <= t1_max + t2_max; sum += 2) {
    for (Int t1 = p1; t1 <= std::min<Int>(t1_max, sum); t1 += 2) {
      const Int t2 = sum - t1;
      if (t2 > t2_max) continue;
      const PairingConstraint cons[] = {{x1, t1}, {x2, t2}};
      if (!has_square_above(lattice, cons, sigma, budget)) continue;
      auto best = max_square_with_pairings(lattice, cons, budget);
      return PairingSumResult{t1, t2, best->witness};
    }
  }
  return std::nullopt;
}

}  // namespace mingenus
