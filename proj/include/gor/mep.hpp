#pragma once

// The rectangular multiparameter eigenvalue problem A(b) z = 0 whose affine
// eigenvalues contain every critical point of the (fixed-pole) least-squares
// realization problem, and the two solvers for it: a column-degree companion
// linearization when there is one unknown, and the null space of the block
// Macaulay matrix otherwise.

#include <map>
#include <string>
#include <vector>

#include "gor/signal_model.hpp"

namespace gor {

/// Exponents of (b_1, ..., b_q).
using Monomial = std::vector<int>;

/// Sum over monomials alpha of b^alpha * blocks[alpha], with b_0 = 1 already
/// substituted. All blocks share the shape rows x cols.
///
/// For the realization problem the value at b is
///   [ T(a) y , T(a) T(a)^T T(b)^T ],  a = b * c,
/// of shape (N - n) x (N - 2n + m + 1).
struct MatrixPolynomial {
  int var_count = 0;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::map<Monomial, Matrix> blocks;

  int degree() const;
  /// Highest total degree of a monomial whose block has a nonzero column j.
  int column_degree(Eigen::Index j) const;

  Matrix evaluate(const Vector& b) const;
  ComplexMatrix evaluate(const ComplexVector& b) const;
  /// d A / d b_i evaluated at b.
  ComplexMatrix derivative(const ComplexVector& b, int i) const;
};

/// Builds the cubic matrix polynomial for data y, known factor c and q = n - m
/// unknown coefficients b_1 ... b_q. Throws InputError unless N > 2n.
MatrixPolynomial build_matrix_polynomial(const Signal& y, const ModelPoly& c, int q);

/// Monomials of total degree <= d in q variables, graded; within one degree
/// ordered lexicographically from the highest power of b_1 down.
std::vector<Monomial> monomials_up_to(int q, int d);

struct BlockMacaulay {
  int degree = 0;
  Matrix matrix;
  std::vector<Monomial> row_monomials;  ///< shifts applied to A(b), degree <= d - deg A
  std::vector<Monomial> col_monomials;  ///< unknowns b^gamma z, degree <= d
  std::map<Monomial, Eigen::Index> col_index;
};

/// Stacks monomial-shifted copies of the coefficient blocks: block row beta,
/// block column gamma holds blocks[gamma - beta].
BlockMacaulay build_block_macaulay(const MatrixPolynomial& mp, int degree);

/// One affine eigenvalue b = (b_1..b_q) with its eigenvector z.
struct AffineSolution {
  ComplexVector b;
  ComplexVector z;
};

struct MacaulayDiagnostics {
  int final_degree = 0;
  std::vector<long> nullity_history;  ///< indexed from degree deg(A)
  std::vector<int> rank_profile;      ///< at the final degree, per row degree
  int gap_start = -1;                 ///< first row degree with no new rank
  double rank_gap_ratio = 0.0;        ///< sigma_r / sigma_{r+1} at the final degree
};

struct MepSpectrum {
  std::vector<AffineSolution> affine;
  int infinite = 0;
  MacaulayDiagnostics macaulay;
  std::vector<std::string> warnings;
};

/// Solves a square univariate matrix polynomial by a first companion form
/// that linearizes every column only up to its own degree, so the
/// structurally linear first column does not contribute spurious eigenvalues
/// at infinity. The pencil has size sum_j max(1, deg_j); eigenvalues whose
/// pencil coordinates satisfy |beta| <= 1e-10 |alpha| are counted as
/// infinite. Throws DegenerateError for a singular pencil.
MepSpectrum solve_univariate(const MatrixPolynomial& mp);

/// Null-space block Macaulay solver for q >= 1 unknowns. Raises the degree
/// until the nullity increment is constant for two consecutive degrees and
/// the affine part of the null space shows a gap of at least one degree
/// block, then solves the shift relations as a joint eigenvalue problem.
/// Throws SolverError when max_degree (or max_columns) is reached first.
MepSpectrum solve_block_macaulay(const MatrixPolynomial& mp, int max_degree = 40,
                                 Eigen::Index max_columns = 6000);

/// Newton refinement of an affine solution on the square system
/// A(b) [1; w] = 0 in the unknowns (b, w). Returns the refined solution with
/// z normalized so that z_0 = 1; leaves the input unchanged if Newton does
/// not reduce the residual or wanders off.
AffineSolution polish(const MatrixPolynomial& mp, const AffineSolution& s);

/// || A(b) z || / (|| A(b) || || z ||), with z scaled as given.
double relative_residual(const MatrixPolynomial& mp, const AffineSolution& s);

}  // namespace gor
