#include "mingenus/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "mingenus/errors.hpp"

namespace mingenus {

ClassVector::ClassVector(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long v : coeffs) coeffs_.emplace_back(v);
}

ClassVector ClassVector::zero(std::size_t rank) { return ClassVector(std::vector<Int>(rank, Int(0))); }

bool ClassVector::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Int& v) { return v == 0; });
}

ClassVector ClassVector::operator+(const ClassVector& o) const {
  if (o.size() != size()) throw PreconditionError("class vector length mismatch");
  ClassVector r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

ClassVector ClassVector::operator-(const ClassVector& o) const { return *this + (-o); }

ClassVector ClassVector::operator-() const {
  ClassVector r = *this;
  for (auto& v : r.coeffs_) v = -v;
  return r;
}

ClassVector operator*(const Int& k, const ClassVector& v) {
  ClassVector r = v;
  for (auto& x : r.coeffs_) x *= k;
  return r;
}

std::string ClassVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  os << ')';
  return os.str();
}

Int determinant(const IntMatrix& m) {
  // Fraction-free Bareiss elimination with row pivoting.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Inertia congruence_inertia(const IntMatrix& symmetric) {
  const std::size_t n = symmetric.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = symmetric[i][j];

  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;

  Inertia out;
  auto drop = [&active](std::size_t idx) { active.erase(std::find(active.begin(), active.end(), idx)); };

  while (!active.empty()) {
    auto diag = std::find_if(active.begin(), active.end(), [&](std::size_t i) { return a[i][i] != 0; });
    if (diag != active.end()) {
      const std::size_t i = *diag;
      const Rational pivot = a[i][i];
      (sgn(pivot) > 0 ? out.positive : out.negative) += 1;
      drop(i);
      for (std::size_t k : active) {
        if (a[k][i] == 0) continue;
        const Rational f = a[k][i] / pivot;
        for (std::size_t l : active) a[k][l] -= f * a[i][l];
      }
      continue;
    }
    // Every remaining diagonal entry vanishes: use a hyperbolic 2x2 block.
    std::size_t bi = n, bj = n;
    for (std::size_t i : active) {
      for (std::size_t j : active) {
        if (i != j && a[i][j] != 0) {
          bi = i;
          bj = j;
          break;
        }
      }
      if (bi != n) break;
    }
    if (bi == n) {
      out.zero += static_cast<int>(active.size());
      break;
    }
    const Rational b = a[bi][bj];
    out.positive += 1;
    out.negative += 1;
    drop(bi);
    drop(bj);
    // Schur complement with B^{-1} = [[0, 1/b], [1/b, 0]].
    std::vector<std::vector<Rational>> next = a;
    for (std::size_t k : active)
      for (std::size_t l : active) next[k][l] = a[k][l] - (a[k][bi] * a[bj][l] + a[k][bj] * a[bi][l]) / b;
    a = std::move(next);
  }
  return out;
}

Lattice::Lattice(IntMatrix gram) : gram_(std::move(gram)) {
  const std::size_t n = gram_.size();
  if (n == 0) throw LatticeError(LatticeError::Kind::kShape, "gram matrix must have positive rank");
  for (const auto& row : gram_)
    if (row.size() != n) throw LatticeError(LatticeError::Kind::kShape, "gram matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (gram_[i][j] != gram_[j][i])
        throw LatticeError(LatticeError::Kind::kNotSymmetric, "gram matrix is not symmetric");
  const Int det = determinant(gram_);
  if (det == 0) throw LatticeError(LatticeError::Kind::kDegenerate, "gram matrix is degenerate (det = 0)");
  if (abs(det) != 1)
    throw LatticeError(LatticeError::Kind::kNotUnimodular, "gram matrix is not unimodular (det = " + det.get_str() + ")");
  const Inertia inertia = congruence_inertia(gram_);
  signature_ = Signature{inertia.positive, inertia.negative};
}

Lattice Lattice::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix g;
  for (const auto& r : rows) {
    std::vector<Int> row;
    for (long v : r) row.emplace_back(v);
    g.push_back(std::move(row));
  }
  return Lattice(std::move(g));
}

Lattice Lattice::diagonal(const std::vector<long>& entries) {
  IntMatrix g(entries.size(), std::vector<Int>(entries.size(), Int(0)));
  for (std::size_t i = 0; i < entries.size(); ++i) g[i][i] = entries[i];
  return Lattice(std::move(g));
}

Lattice Lattice::direct_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.rank() + b.rank();
  IntMatrix g(n, std::vector<Int>(n, Int(0)));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) g[i][j] = a.gram_[i][j];
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) g[a.rank() + i][a.rank() + j] = b.gram_[i][j];
  return Lattice(std::move(g));
}

Int Lattice::max_abs_entry() const {
  Int best = 0;
  for (const auto& row : gram_)
    for (const auto& v : row) best = std::max<Int>(best, abs(v));
  return best;
}

void Lattice::check_dimension(const ClassVector& x) const {
  if (x.size() != rank())
    throw PreconditionError("class vector of length " + std::to_string(x.size()) + " does not match lattice rank " +
                            std::to_string(rank()));
}

std::vector<Int> Lattice::dual_row(const ClassVector& x) const {
  check_dimension(x);
  std::vector<Int> out(rank(), Int(0));
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) out[i] += gram_[i][j] * x[j];
  return out;
}

Int Lattice::pairing(const ClassVector& x, const ClassVector& y) const {
  check_dimension(x);
  check_dimension(y);
  Int total = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    Int row = 0;
    for (std::size_t j = 0; j < rank(); ++j) row += gram_[i][j] * y[j];
    total += x[i] * row;
  }
  return total;
}

bool Lattice::is_characteristic(const ClassVector& c) const {
  check_dimension(c);
  const std::vector<Int> g = dual_row(c);
  for (std::size_t i = 0; i < rank(); ++i) {
    const Int diff = g[i] - gram_[i][i];
    if (mpz_odd_p(diff.get_mpz_t())) return false;
  }
  return true;
}

ClassVector Lattice::characteristic_basepoint() const {
  // Solve gram * w = diag(gram) over GF(2); gram is invertible mod 2 since det is odd.
  const std::size_t n = rank();
  std::vector<std::vector<int>> m(n, std::vector<int>(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = mpz_odd_p(gram_[i][j].get_mpz_t()) ? 1 : 0;
    m[i][n] = mpz_odd_p(gram_[i][i].get_mpz_t()) ? 1 : 0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw Error("internal: gram matrix singular mod 2");
    std::swap(m[piv], m[col]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != col && m[r][col])
        for (std::size_t k = col; k <= n; ++k) m[r][k] ^= m[col][k];
  }
  std::vector<Int> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = m[i][n];
  return ClassVector(std::move(w));
}

Divisibility divisibility(const ClassVector& x) {
  if (x.is_zero()) throw PreconditionError("divisibility of the zero class is undefined");
  Int d = 0;
  for (const auto& v : x.coeffs()) d = gcd(d, v);
  std::vector<Int> prim(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) prim[i] = x[i] / d;
  return {d, ClassVector(std::move(prim))};
}

Rational orthogonal_defect(const Lattice& lattice, const ClassVector& c, const ClassVector& s) {
  const Int ss = lattice.square(s);
  if (ss == 0) throw PreconditionError("orthogonal defect needs a class of nonzero square");
  const Int cs = lattice.pairing(c, s);
  Rational out = Rational(lattice.square(c)) - Rational(cs * cs, ss);
  out.canonicalize();
  return out;
}

}  // namespace mingenus
