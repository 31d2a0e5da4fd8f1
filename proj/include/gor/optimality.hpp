#pragma once

// Misfit evaluation by orthogonal projection, first-order optimality
// residuals, and rank diagnostics of the filtered Hankel matrix.

#include "gor/signal_model.hpp"

namespace gor {

struct ProjectionResult {
  Signal yhat;          ///< model-compliant data, in the kernel of T(a)
  Signal misfit;        ///< y - yhat
  double misfit_sq;     ///< squared l2 norm of the misfit
  Vector multipliers;   ///< lambda with misfit = T(a)^T lambda
};

/// Norms of the four stationarity residuals of the Lagrangian (mu = 0).
struct FoncResidual {
  double r_b = 0.0;       ///< || Yhat^T T(c)^T lambda ||
  double r_yhat = 0.0;    ///< || yhat - y + T(b)^T T(c)^T lambda ||
  double r_lambda = 0.0;  ///< || T(c) T(b) yhat ||
  double r_mu = 0.0;      ///< | b_0 - 1 |

  double max() const;
  bool operator==(const FoncResidual&) const = default;
};

/// Orthogonal projection of y onto the kernel of T_{N-n}(a). Throws
/// DegenerateError if T(a) T(a)^T has condition number above 1e12 and
/// InputError if N <= n.
ProjectionResult project_misfit(const ModelPoly& a, const Signal& y);

/// Least-squares estimate of the reduced multipliers g, lambda =
/// T_{N-2n+m}(b)^T g, minimizing the yhat-stationarity residual.
Vector solve_reduced_multipliers(const ModelPoly& b, const ModelPoly& c,
                                 const ProjectionResult& proj);

/// Evaluates the stationarity residuals at (b, yhat, lambda = T(b)^T g).
/// Throws InputError on dimension mismatch.
FoncResidual fonc_residuals(const ModelPoly& b, const ModelPoly& c,
                            const Signal& y, const ProjectionResult& proj,
                            const Vector& g);

struct RankReport {
  int rank = 0;
  /// sigma_q / sigma_1 falls in [1e-10, 1e-6], where the rank decision is
  /// sensitive to the threshold.
  bool borderline = false;
  Vector singular_values;
};

/// Numerical rank of T_{N-n}(c) * hankel(yhat, q + 1), threshold
/// sigma_1 * max(dims) * 1e-12.
RankReport filtered_hankel_rank_report(const Signal& yhat, const ModelPoly& c, int q);

int filtered_hankel_rank(const Signal& yhat, const ModelPoly& c, int q);

/// Numerical rank with threshold sigma_1 * max(rows, cols) * 1e-12.
int numerical_rank(const Vector& singular_values, Eigen::Index rows, Eigen::Index cols);

}  // namespace gor
