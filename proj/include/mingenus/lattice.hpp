#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace mingenus {

using Int = mpz_class;
using Rational = mpq_class;
using IntMatrix = std::vector<std::vector<Int>>;

/// Integer coefficient vector over a lattice basis.
class ClassVector {
 public:
  ClassVector() = default;
  explicit ClassVector(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {}
  ClassVector(std::initializer_list<long> coeffs);
  static ClassVector zero(std::size_t rank);

  std::size_t size() const { return coeffs_.size(); }
  const Int& operator[](std::size_t i) const { return coeffs_[i]; }
  Int& operator[](std::size_t i) { return coeffs_[i]; }
  const std::vector<Int>& coeffs() const { return coeffs_; }

  bool is_zero() const;

  ClassVector operator+(const ClassVector& o) const;
  ClassVector operator-(const ClassVector& o) const;
  ClassVector operator-() const;
  friend ClassVector operator*(const Int& k, const ClassVector& v);

  friend bool operator==(const ClassVector& a, const ClassVector& b) { return a.coeffs_ == b.coeffs_; }
  /// Lexicographic on signed coefficients.
  friend bool operator<(const ClassVector& a, const ClassVector& b) { return a.coeffs_ < b.coeffs_; }

  std::string to_string() const;

 private:
  std::vector<Int> coeffs_;
};

struct Signature {
  int b_plus = 0;
  int b_minus = 0;
  int sigma() const { return b_plus - b_minus; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Unimodular symmetric integer bilinear form. Immutable after construction.
class Lattice {
 public:
  /// Throws LatticeError unless gram is square, symmetric and |det| = 1.
  explicit Lattice(IntMatrix gram);
  static Lattice from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static Lattice diagonal(const std::vector<long>& entries);
  /// Orthogonal sum of the two forms.
  static Lattice direct_sum(const Lattice& a, const Lattice& b);

  std::size_t rank() const { return gram_.size(); }
  const IntMatrix& gram() const { return gram_; }
  const Signature& signature() const { return signature_; }
  int sigma() const { return signature_.sigma(); }
  /// Largest |gram entry|.
  Int max_abs_entry() const;

  /// x^T * gram * y. Throws PreconditionError on dimension mismatch.
  Int pairing(const ClassVector& x, const ClassVector& y) const;
  Int square(const ClassVector& x) const { return pairing(x, x); }
  /// gram * x, i.e. the functional y -> <x, y> in coordinates.
  std::vector<Int> dual_row(const ClassVector& x) const;

  bool is_characteristic(const ClassVector& c) const;
  /// A characteristic vector with 0/1 entries; every characteristic vector is w + 2*lambda.
  ClassVector characteristic_basepoint() const;

  void check_dimension(const ClassVector& x) const;

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  Signature signature_;
};

Int determinant(const IntMatrix& m);

/// Inertia of a symmetric rational form via congruence diagonalization.
/// Zero eigen-directions are counted in the third component.
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};
Inertia congruence_inertia(const IntMatrix& symmetric);

struct Divisibility {
  Int d;
  ClassVector primitive;
};
/// x = d * primitive with d = gcd of the coefficients. Throws PreconditionError on x = 0.
Divisibility divisibility(const ClassVector& x);

/// <c,c> - <c,s>^2 / <s,s>: square of the component of c orthogonal to s.
Rational orthogonal_defect(const Lattice& lattice, const ClassVector& c, const ClassVector& s);

}  // namespace mingenus
