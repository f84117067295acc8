#include "mingenus/int_linear.hpp"

#include <algorithm>

#include "mingenus/errors.hpp"

namespace mingenus {
namespace {

Int round_nearest(const Rational& x) {
  Rational shifted = x + Rational(1, 2);
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return out;
}

}  // namespace

std::optional<IntegerSolution> solve_integer_system(const IntMatrix& a, const std::vector<Int>& b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw PreconditionError("right-hand side length does not match the system");
  if (rows == 0) throw PreconditionError("empty system");
  const std::size_t cols = a[0].size();

  IntMatrix m = a;
  // u[i][j]: column j of the accumulated unimodular transform.
  IntMatrix u(cols, std::vector<Int>(cols, Int(0)));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;

  auto combine = [&](std::size_t p, std::size_t j, const Int& s, const Int& t, const Int& x, const Int& y) {
    // [col_p, col_j] <- [s*col_p + t*col_j, x*col_p + y*col_j]
    for (auto* mat : {&m, &u}) {
      for (auto& row : *mat) {
        const Int cp = row[p];
        const Int cj = row[j];
        row[p] = s * cp + t * cj;
        row[j] = x * cp + y * cj;
      }
    }
  };

  std::vector<std::optional<std::size_t>> pivot_of_row(rows);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows && rank < cols; ++i) {
    for (std::size_t j = rank + 1; j < cols; ++j) {
      if (m[i][j] == 0) continue;
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m[i][rank].get_mpz_t(), m[i][j].get_mpz_t());
      const Int pa = m[i][rank] / g;
      const Int pb = m[i][j] / g;
      combine(rank, j, s, t, -pb, pa);
    }
    if (m[i][rank] != 0) {
      pivot_of_row[i] = rank;
      ++rank;
    }
  }

  std::vector<Int> z(cols, Int(0));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t limit = pivot_of_row[i] ? *pivot_of_row[i] : rank;
    Int acc = 0;
    for (std::size_t j = 0; j < limit; ++j) acc += m[i][j] * z[j];
    const Int rest = b[i] - acc;
    if (!pivot_of_row[i]) {
      if (rest != 0) return std::nullopt;
      continue;
    }
    const Int& piv = m[i][*pivot_of_row[i]];
    if (!mpz_divisible_p(rest.get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
    z[*pivot_of_row[i]] = rest / piv;
  }

  IntegerSolution out;
  out.particular.assign(cols, Int(0));
  for (std::size_t r = 0; r < cols; ++r)
    for (std::size_t j = 0; j < rank; ++j) out.particular[r] += u[r][j] * z[j];
  for (std::size_t j = rank; j < cols; ++j) {
    std::vector<Int> col(cols);
    for (std::size_t r = 0; r < cols; ++r) col[r] = u[r][j];
    out.kernel.push_back(std::move(col));
  }
  return out;
}

void lll_reduce_gram(IntMatrix& gram, IntMatrix& basis) {
  const std::size_t n = gram.size();
  if (n < 2) return;
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  std::vector<Rational> bstar(n);

  auto gso = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rational acc = gram[i][j];
        for (std::size_t k = 0; k < j; ++k) acc -= mu[j][k] * mu[i][k] * bstar[k];
        mu[i][j] = acc / bstar[j];
      }
      Rational acc = gram[i][i];
      for (std::size_t k = 0; k < i; ++k) acc -= mu[i][k] * mu[i][k] * bstar[k];
      if (sgn(acc) <= 0) throw Error("internal: LLL input is not positive definite");
      bstar[i] = acc;
    }
  };

  auto subtract = [&](std::size_t k, std::size_t j, const Int& q) {
    // b_k <- b_k - q * b_j
    const Int gkk = gram[k][k] - 2 * q * gram[k][j] + q * q * gram[j][j];
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      gram[k][l] -= q * gram[j][l];
      gram[l][k] = gram[k][l];
    }
    gram[k][k] = gkk;
    for (std::size_t c = 0; c < basis[k].size(); ++c) basis[k][c] -= q * basis[j][c];
  };

  const Rational delta(3, 4);
  std::size_t k = 1;
  gso();
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      const Int q = round_nearest(mu[k][jj]);
      if (q != 0) {
        subtract(k, jj, q);
        gso();
      }
    }
    if (bstar[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      ++k;
    } else {
      std::swap(gram[k], gram[k - 1]);
      for (auto& row : gram) std::swap(row[k], row[k - 1]);
      std::swap(basis[k], basis[k - 1]);
      gso();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

LdlDecomposition ldl_decompose(const IntMatrix& p) {
  const std::size_t n = p.size();
  LdlDecomposition out;
  out.lower.assign(n, std::vector<Rational>(n));
  out.diag.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational acc = p[i][j];
      for (std::size_t k = 0; k < j; ++k) acc -= out.lower[i][k] * out.lower[j][k] * out.diag[k];
      out.lower[i][j] = acc / out.diag[j];
    }
    Rational acc = p[i][i];
    for (std::size_t k = 0; k < i; ++k) acc -= out.lower[i][k] * out.lower[i][k] * out.diag[k];
    if (sgn(acc) <= 0) throw Error("internal: form restricted to the constraint kernel is not definite");
    out.diag[i] = acc;
  }
  return out;
}

}  // namespace mingenus
