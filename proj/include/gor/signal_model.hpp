#pragma once

// Structured-matrix and polynomial primitives for autonomous single-output
// LTI models: banded Toeplitz operators, Hankel matrices and shift-operator
// polynomials.

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace gor {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// A finite, non-empty real sequence y_0 ... y_{N-1}.
class Signal {
 public:
  explicit Signal(Vector values);
  Signal(std::initializer_list<double> values);

  Eigen::Index size() const { return values_.size(); }
  const Vector& values() const { return values_; }
  double operator[](Eigen::Index k) const { return values_[k]; }

 private:
  Vector values_;
};

/// Real polynomial in the forward-shift operator z.
///
/// coeffs()[i] multiplies z^i, so the stored vector reads [a_n ... a_1 a_0]
/// with a_0 the coefficient of the highest power. This is the column order of
/// the rows of the banded Toeplitz operator, so toeplitz() copies the vector
/// verbatim into every row. The leading coefficient may be zero (formal
/// degree), but normalized models keep it at one.
class ModelPoly {
 public:
  explicit ModelPoly(Vector coeffs);
  ModelPoly(std::initializer_list<double> coeffs);

  /// The unit polynomial 1.
  static ModelPoly one() { return ModelPoly{1.0}; }

  /// Monic polynomial z^q + b_1 z^{q-1} + ... + b_q from the tail (b_1..b_q).
  static ModelPoly monic(const Vector& tail);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double leading() const { return coeffs_[coeffs_.size() - 1]; }
  const Vector& coeffs() const { return coeffs_; }
  double operator[](int power) const { return coeffs_[power]; }

  /// The tail (b_1 ... b_q) of a polynomial, i.e. the coefficients of
  /// z^{q-1} ... z^0 in that order.
  Vector tail() const;

  bool operator==(const ModelPoly& other) const {
    return coeffs_ == other.coeffs_;
  }

 private:
  Vector coeffs_;
};

/// A priori known poles. Complex poles must come with their conjugates so the
/// characteristic factor c(z) is real.
class FixedPoleSet {
 public:
  FixedPoleSet() = default;
  explicit FixedPoleSet(std::vector<Complex> poles);

  /// Adds the conjugate of every pole with a nonzero imaginary part.
  static FixedPoleSet with_conjugates(const std::vector<Complex>& poles);

  int size() const { return static_cast<int>(poles_.size()); }
  bool empty() const { return poles_.empty(); }
  const std::vector<Complex>& poles() const { return poles_; }

 private:
  std::vector<Complex> poles_;
};

/// Banded Toeplitz operator of shape rows x (rows + p.degree()); row r holds
/// p.coeffs() in columns r ... r + degree. Applied to a signal it evaluates
/// p(z) y_k for every admissible k.
Matrix toeplitz(const ModelPoly& p, Eigen::Index rows);

/// Hankel matrix with entry (i, j) = s[i + j], shape (N - cols + 1) x cols.
Matrix hankel(const Signal& s, Eigen::Index cols);

/// Coefficient convolution: the product polynomial p(z) r(z).
ModelPoly poly_mul(const ModelPoly& p, const ModelPoly& r);

/// Real monic polynomial with the given roots. Throws InputError when the
/// root set is not closed under conjugation.
ModelPoly poly_from_roots(const FixedPoleSet& roots);

/// All complex roots, from the eigenvalues of the companion matrix, sorted by
/// (real part, imaginary part). Throws InputError on a zero leading
/// coefficient.
std::vector<Complex> poly_roots(const ModelPoly& p);

/// Vandermonde vector [1, rho, ..., rho^{N-1}].
ComplexVector vandermonde(Complex rho, Eigen::Index n);

}  // namespace gor
