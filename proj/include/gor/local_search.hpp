#pragma once

// Deterministic multistart local search for the (fixed-pole) least-squares
// realization problem. Not globally certified: used where the exact
// eigenvalue route is too expensive, e.g. many three-pole standard
// realizations inside a Monte Carlo loop.

#include <vector>

#include "gor/signal_model.hpp"

namespace gor {

struct MultistartOptions {
  int grid_levels = 7;    ///< grid points per coefficient b_j
  int refine_count = 12;  ///< best grid points handed to the local solver
  int max_evaluations = 4000;
};

struct LocalFit {
  ModelPoly b;
  ModelPoly a;
  double misfit_sq = 0.0;
  int starts = 0;
};

/// Misfit of a = b(tail) * c against y, or +inf when T(a) is ill conditioned.
double local_objective(const Signal& y, const ModelPoly& c, const Vector& b_tail);

/// Minimizes the misfit over b_1..b_q from a coefficient grid (|b_j| up to
/// binom(q, j), the range of stable monic polynomials) plus the caller's
/// extra starts, refining each with Levenberg-Marquardt. The result is never
/// worse than the best start.
LocalFit multistart_realize(const Signal& y, int n, const FixedPoleSet& fixed,
                            const std::vector<Vector>& extra_starts = {},
                            const MultistartOptions& options = {});

}  // namespace gor
