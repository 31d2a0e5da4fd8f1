#include "gor/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "gor/errors.hpp"

namespace gor {

namespace {

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw InputError(std::string(what) + " contains non-finite entries");
  }
}

Vector to_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  std::copy(values.begin(), values.end(), v.data());
  return v;
}

}  // namespace

Signal::Signal(Vector values) : values_(std::move(values)) {
  if (values_.size() < 1) throw InputError("signal must have at least one sample");
  require_finite(values_, "signal");
}

Signal::Signal(std::initializer_list<double> values)
    : Signal(to_vector(values)) {}

ModelPoly::ModelPoly(Vector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 1) throw InputError("polynomial needs at least one coefficient");
  require_finite(coeffs_, "polynomial");
}

ModelPoly::ModelPoly(std::initializer_list<double> coeffs)
    : ModelPoly(to_vector(coeffs)) {}

ModelPoly ModelPoly::monic(const Vector& tail) {
  const Eigen::Index q = tail.size();
  Vector c(q + 1);
  c[q] = 1.0;
  for (Eigen::Index j = 1; j <= q; ++j) c[q - j] = tail[j - 1];
  return ModelPoly(std::move(c));
}

Vector ModelPoly::tail() const {
  const int q = degree();
  Vector t(q);
  for (int j = 1; j <= q; ++j) t[j - 1] = coeffs_[q - j];
  return t;
}

FixedPoleSet::FixedPoleSet(std::vector<Complex> poles) : poles_(std::move(poles)) {
  for (const auto& p : poles_) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
      throw InputError("fixed pole is not finite");
    }
  }
}

FixedPoleSet FixedPoleSet::with_conjugates(const std::vector<Complex>& poles) {
  std::vector<Complex> all;
  for (const auto& p : poles) {
    all.push_back(p);
    if (p.imag() != 0.0) all.push_back(std::conj(p));
  }
  return FixedPoleSet(std::move(all));
}

Matrix toeplitz(const ModelPoly& p, Eigen::Index rows) {
  if (rows < 1) throw InputError("toeplitz: rows must be >= 1");
  const int d = p.degree();
  Matrix t = Matrix::Zero(rows, rows + d);
  for (Eigen::Index r = 0; r < rows; ++r) t.row(r).segment(r, d + 1) = p.coeffs().transpose();
  return t;
}

Matrix hankel(const Signal& s, Eigen::Index cols) {
  const Eigen::Index n = s.size();
  if (cols < 1 || cols > n) {
    throw InputError("hankel: column count must lie in [1, N]");
  }
  Matrix h(n - cols + 1, cols);
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < cols; ++j) h(i, j) = s[i + j];
  return h;
}

ModelPoly poly_mul(const ModelPoly& p, const ModelPoly& r) {
  const int dp = p.degree();
  const int dr = r.degree();
  Vector c = Vector::Zero(dp + dr + 1);
  for (int i = 0; i <= dp; ++i)
    for (int j = 0; j <= dr; ++j) c[i + j] += p[i] * r[j];
  return ModelPoly(std::move(c));
}

ModelPoly poly_from_roots(const FixedPoleSet& roots) {
  const auto& poles = roots.poles();
  const int m = roots.size();
  // Expand prod (z - rho_i) in complex arithmetic, index = power of z.
  ComplexVector c = ComplexVector::Zero(m + 1);
  c[0] = 1.0;
  double max_abs = 0.0;
  for (int i = 0; i < m; ++i) {
    const Complex rho = poles[static_cast<std::size_t>(i)];
    max_abs = std::max(max_abs, std::abs(rho));
    for (int k = i + 1; k >= 1; --k) c[k] = c[k - 1] - rho * c[k];
    c[0] = -rho * c[0];
  }
  const double tol = 1e-10 * std::pow(1.0 + max_abs, m);
  if (c.imag().cwiseAbs().maxCoeff() > tol) {
    throw InputError("fixed pole set is not closed under complex conjugation");
  }
  return ModelPoly(c.real());
}

std::vector<Complex> poly_roots(const ModelPoly& p) {
  const int n = p.degree();
  const double lead = p.leading();
  if (lead == 0.0) throw InputError("poly_roots: leading coefficient is zero");
  std::vector<Complex> roots;
  if (n == 0) return roots;
  // Companion matrix of the monic polynomial z^n + sum_i (p_i / lead) z^i.
  Matrix companion = Matrix::Zero(n, n);
  companion.diagonal(-1).setOnes();
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[i] / lead;
  Eigen::EigenSolver<Matrix> es(companion, false);
  if (es.info() != Eigen::Success) throw DegenerateError("poly_roots: eigenvalue iteration failed");
  roots.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

ComplexVector vandermonde(Complex rho, Eigen::Index n) {
  ComplexVector v(n);
  Complex power = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    v[k] = power;
    power *= rho;
  }
  return v;
}

}  // namespace gor
