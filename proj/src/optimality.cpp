#include "gor/optimality.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "gor/errors.hpp"

namespace gor {

namespace {

// cond(T T^T) = cond(T)^2; reject when it exceeds 1e12.
constexpr double kMaxProjectionCondition = 1e12;

}  // namespace

double FoncResidual::max() const {
  return std::max({r_b, r_yhat, r_lambda, r_mu});
}

ProjectionResult project_misfit(const ModelPoly& a, const Signal& y) {
  const Eigen::Index n_samples = y.size();
  const int n = a.degree();
  if (n_samples <= n) throw InputError("project_misfit: need more samples than the model order");

  const Matrix t = toeplitz(a, n_samples - n);
  Eigen::ColPivHouseholderQR<Matrix> qr(t.transpose());
  const auto diag = qr.matrixR().diagonal().cwiseAbs();
  const double largest = diag.maxCoeff();
  const double smallest = diag.minCoeff();
  if (smallest == 0.0 || (largest / smallest) * (largest / smallest) > kMaxProjectionCondition) {
    throw DegenerateError("project_misfit: T(a) T(a)^T is numerically singular");
  }

  Vector lambda = qr.solve(y.values());
  Vector misfit = t.transpose() * lambda;
  Vector yhat = y.values() - misfit;
  const double misfit_sq = misfit.squaredNorm();
  return ProjectionResult{Signal(std::move(yhat)), Signal(std::move(misfit)), misfit_sq,
                          std::move(lambda)};
}

Vector solve_reduced_multipliers(const ModelPoly& b, const ModelPoly& c,
                                 const ProjectionResult& proj) {
  const Eigen::Index n_samples = proj.yhat.size();
  const int m = c.degree();
  const int n = b.degree() + m;
  const Eigen::Index g_len = n_samples - 2 * n + m;
  if (g_len < 1) throw InputError("solve_reduced_multipliers: need N > 2n - m");
  const ModelPoly a = poly_mul(b, c);
  const Matrix k = toeplitz(a, n_samples - n).transpose() * toeplitz(b, g_len).transpose();
  return k.colPivHouseholderQr().solve(proj.misfit.values());
}

FoncResidual fonc_residuals(const ModelPoly& b, const ModelPoly& c, const Signal& y,
                            const ProjectionResult& proj, const Vector& g) {
  const Eigen::Index n_samples = y.size();
  const int m = c.degree();
  const int q = b.degree();
  const int n = q + m;
  if (proj.yhat.size() != n_samples || proj.misfit.size() != n_samples) {
    throw InputError("fonc_residuals: projection does not match the data length");
  }
  if (n_samples <= 2 * n || g.size() != n_samples - 2 * n + m) {
    throw InputError("fonc_residuals: g must have length N - 2n + m");
  }

  const Vector lambda = toeplitz(b, g.size()).transpose() * g;
  const Matrix tc = toeplitz(c, n_samples - n);
  const Matrix tb = toeplitz(b, n_samples - q);
  const Vector& yhat = proj.yhat.values();
  const Vector filtered_lambda = tc.transpose() * lambda;

  FoncResidual r;
  r.r_b = (hankel(proj.yhat, q + 1).transpose() * filtered_lambda).norm();
  r.r_yhat = (yhat - y.values() + tb.transpose() * filtered_lambda).norm();
  r.r_lambda = (tc * (tb * yhat)).norm();
  r.r_mu = std::abs(b.leading() - 1.0);
  return r;
}

int numerical_rank(const Vector& singular_values, Eigen::Index rows, Eigen::Index cols) {
  if (singular_values.size() == 0) return 0;
  const double largest = singular_values.maxCoeff();
  if (largest == 0.0) return 0;
  const double threshold = largest * static_cast<double>(std::max(rows, cols)) * 1e-12;
  return static_cast<int>((singular_values.array() > threshold).count());
}

RankReport filtered_hankel_rank_report(const Signal& yhat, const ModelPoly& c, int q) {
  const Eigen::Index n_samples = yhat.size();
  const int n = q + c.degree();
  if (q < 0 || n_samples <= n) throw InputError("filtered_hankel_rank: need N > n");
  const Matrix filtered = toeplitz(c, n_samples - n) * hankel(yhat, q + 1);

  RankReport report;
  report.singular_values = filtered.jacobiSvd().singularValues();
  report.rank = numerical_rank(report.singular_values, filtered.rows(), filtered.cols());
  const double largest = report.singular_values.size() ? report.singular_values[0] : 0.0;
  if (q >= 1 && largest > 0.0 && report.singular_values.size() >= q) {
    const double ratio = report.singular_values[q - 1] / largest;
    report.borderline = ratio >= 1e-10 && ratio <= 1e-6;
  }
  return report;
}

int filtered_hankel_rank(const Signal& yhat, const ModelPoly& c, int q) {
  return filtered_hankel_rank_report(yhat, c, q).rank;
}

}  // namespace gor
