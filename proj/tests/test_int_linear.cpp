#include <gtest/gtest.h>

#include <random>

#include "mingenus/errors.hpp"
#include "mingenus/int_linear.hpp"

using namespace mingenus;

namespace {

std::vector<Int> times(const IntMatrix& a, const std::vector<Int>& x) {
  std::vector<Int> out(a.size(), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
  return out;
}

TEST(SolveIntegerSystem, SingleEquation) {
  // 4x + 6y = 2 has solutions; 4x + 6y = 3 does not.
  IntMatrix a = {{4, 6}};
  auto sol = solve_integer_system(a, {2});
  ASSERT_TRUE(sol);
  EXPECT_EQ(times(a, sol->particular), std::vector<Int>{2});
  ASSERT_EQ(sol->kernel.size(), 1u);
  EXPECT_EQ(times(a, sol->kernel[0]), std::vector<Int>{0});
  EXPECT_FALSE(solve_integer_system(a, {3}));
}

TEST(SolveIntegerSystem, RandomSystemsRoundTrip) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> dist(-4, 4);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + t % 2, cols = 2 + t % 4;
    IntMatrix a(rows, std::vector<Int>(cols));
    std::vector<Int> x(cols);
    for (auto& row : a)
      for (auto& v : row) v = dist(rng);
    for (auto& v : x) v = dist(rng);
    const std::vector<Int> b = times(a, x);
    auto sol = solve_integer_system(a, b);
    ASSERT_TRUE(sol);
    EXPECT_EQ(times(a, sol->particular), b);
    for (const auto& k : sol->kernel) EXPECT_EQ(times(a, k), std::vector<Int>(rows, Int(0)));
    // x - particular lies in the kernel lattice: check the kernel has full
    // expected dimension (cols - rank of a); rank <= rows.
    EXPECT_GE(sol->kernel.size(), cols - rows);
  }
}

TEST(Lll, PreservesLatticeAndReduces) {
  // Basis of Z^2 given badly; Gram of the standard form.
  IntMatrix basis = {{1, 0}, {17, 1}};
  IntMatrix gram(2, std::vector<Int>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) gram[i][j] = basis[i][0] * basis[j][0] + basis[i][1] * basis[j][1];
  lll_reduce_gram(gram, basis);
  EXPECT_EQ(gram[0][0], 1);
  EXPECT_EQ(gram[1][1], 1);
  EXPECT_EQ(gram[0][1], 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(gram[i][j], basis[i][0] * basis[j][0] + basis[i][1] * basis[j][1]);
}

TEST(Ldl, ReconstructsMatrix) {
  IntMatrix p = {{4, 2, 0}, {2, 3, 1}, {0, 1, 2}};
  LdlDecomposition ldl = ldl_decompose(p);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) {
        Rational li = i == k ? Rational(1) : ldl.lower[i][k];
        Rational lj = j == k ? Rational(1) : ldl.lower[j][k];
        s += li * ldl.diag[k] * lj;
      }
      EXPECT_EQ(s, Rational(p[i][j]));
    }
  EXPECT_THROW(ldl_decompose({{1, 2}, {2, 1}}), Error);
}

}  // namespace
