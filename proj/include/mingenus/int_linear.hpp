#pragma once

#include <optional>
#include <vector>

#include "mingenus/lattice.hpp"

namespace mingenus {

/// Integer solution set { particular + kernel * z : z in Z^s } of A x = b.
struct IntegerSolution {
  std::vector<Int> particular;
  IntMatrix kernel;  // columns stored as rows: kernel[k] is the k-th basis vector, length = cols(A)
};

/// Solves A x = b over the integers by unimodular column reduction of A to
/// lower echelon form. Returns nullopt when no integer solution exists.
/// A is given row-major with every row of the same length.
std::optional<IntegerSolution> solve_integer_system(const IntMatrix& a, const std::vector<Int>& b);

/// LLL-reduces a positive definite integer Gram matrix in place (delta = 3/4)
/// and applies the same change of basis to `basis`, whose entries are the
/// basis vectors the Gram matrix was built from.
void lll_reduce_gram(IntMatrix& gram, IntMatrix& basis);

/// P = L * diag(D) * L^T for positive definite P. `lower[i][j]` is L_{ij} for j < i.
struct LdlDecomposition {
  std::vector<std::vector<Rational>> lower;
  std::vector<Rational> diag;
};
/// Throws Error if P is not positive definite.
LdlDecomposition ldl_decompose(const IntMatrix& p);

}  // namespace mingenus
