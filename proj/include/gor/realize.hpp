#pragma once

// Globally optimal least-squares realization, with or without a priori fixed
// poles: enumerate the affine eigenvalues of the matrix polynomial, keep the
// real ones, and rank the resulting critical points by misfit.

#include <optional>
#include <string>
#include <vector>

#include "gor/mep.hpp"
#include "gor/optimality.hpp"
#include "gor/signal_model.hpp"

namespace gor {

struct CriticalPoint {
  ModelPoly b;                 ///< unknown factor, b_0 = 1
  ModelPoly a;                 ///< full characteristic polynomial b * c
  std::vector<Complex> poles;  ///< roots of a
  Signal yhat;
  double misfit_sq = 0.0;
  Vector g;                    ///< reduced multipliers, least-squares route
  FoncResidual fonc;           ///< residuals with the least-squares g
  std::optional<FoncResidual> fonc_eigvec;  ///< residuals with g read from z
  int hankel_rank = 0;
  bool rank_borderline = false;
  double sigma_ratio = 0.0;    ///< sigma_min / sigma_max of A(b)
  bool is_real_affine = true;
};

struct RealizeOptions {
  int max_macaulay_degree = 40;
  Eigen::Index max_macaulay_columns = 6000;
  bool polish = true;
};

struct RealizationResult {
  std::vector<CriticalPoint> candidates;  ///< sorted by misfit_sq
  int n_affine = 0;                       ///< affine eigenvalues, real and complex
  int n_real = 0;                         ///< distinct real affine eigenvalues
  int n_infinite = 0;
  std::size_t global = 0;
  std::vector<ComplexVector> affine_eigenvalues;
  MacaulayDiagnostics macaulay;
  std::vector<std::string> warnings;

  const CriticalPoint& best() const { return candidates.at(global); }
};

/// Realness test for an affine eigenvalue: |Im b_i| <= 1e-8 (1 + |Re b_i|).
bool is_real_eigenvalue(const ComplexVector& b);

/// Fits an order-n model to y whose characteristic polynomial contains the
/// fixed poles. Dispatches to the univariate solver when exactly one
/// coefficient is unknown and to the block Macaulay solver otherwise.
///
/// Throws InputError when N <= 2n or |fixed| >= n, and NoRealSolutionError
/// when no affine eigenvalue is real.
RealizationResult realize(const Signal& y, int n, const FixedPoleSet& fixed = {},
                          const RealizeOptions& options = {});

/// Evaluates one real candidate b = (b_1..b_q) against the data.
CriticalPoint make_critical_point(const Signal& y, const ModelPoly& c, const Vector& b_tail,
                                  const MatrixPolynomial& mp,
                                  const std::optional<ComplexVector>& eigvec);

}  // namespace gor
