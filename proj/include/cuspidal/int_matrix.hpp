#ifndef CUSPIDAL_INT_MATRIX_HPP
#define CUSPIDAL_INT_MATRIX_HPP

#include <cstdint>
#include <vector>

#include "cuspidal/rational.hpp"

namespace cuspidal {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

/** Result of smith_normal_form: D = U * M * V with U, V unimodular. */
struct SmithForm
{
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  /** Diagonal entries of D (length min(rows, cols)). */
  IntVector diagonal() const;
  /** Number of nonzero diagonal entries. */
  std::size_t rank() const;
};

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(IntMatrix const &a, IntMatrix const &b);
IntMatrix transpose(IntMatrix const &a);
std::int64_t determinant(IntMatrix const &a);

SmithForm smith_normal_form(IntMatrix const &m, std::size_t cols = 0);

/** Row-style Hermite basis of the lattice spanned by the rows of m.
 *
 * Rows are in echelon form with positive pivots and entries above each pivot
 * reduced into [0, pivot). Zero rows are dropped.
 */
IntMatrix hermite_basis(IntMatrix const &m, std::size_t cols = 0);

/** Basis of {u : u * m = 0} over the integers. */
IntMatrix left_kernel(IntMatrix const &m, std::size_t cols = 0);

RatMatrix to_rational(IntMatrix const &m);
RatMatrix multiply(RatMatrix const &a, RatMatrix const &b);
RatVector row_times(RatVector const &v, RatMatrix const &m);

/** Inverse of a square rational matrix; Error("singular") otherwise. */
RatMatrix inverse(RatMatrix const &m);

/** Canonical representative of v modulo the full-rank lattice with
 * Hermite basis h (rows). */
RatVector reduce_mod_lattice(RatVector v, IntMatrix const &h);

/** True iff v lies in the lattice spanned by the Hermite basis h. */
bool in_lattice(RatVector const &v, IntMatrix const &h);

} // namespace cuspidal

#endif // CUSPIDAL_INT_MATRIX_HPP
