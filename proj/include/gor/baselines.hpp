#pragma once

// Heuristic prefiltering baselines for fixed-pole realization. Both estimate
// the q = n - m remaining poles with a standard (no fixed poles) globally
// optimal realization on transformed data, then score the combined model
// against the original data.

#include <string_view>
#include <vector>

#include "gor/realize.hpp"

namespace gor {

enum class BaselineMethod { NaivePrefilter, Deflation };

std::string_view to_string(BaselineMethod method);

struct BaselineResult {
  BaselineMethod method;
  std::vector<Complex> estimated_poles;  ///< roots of the estimated factor b
  ModelPoly estimated_factor;            ///< b, monic
  ModelPoly combined_model;              ///< b * c
  double misfit_sq = 0.0;                ///< of y against combined_model
};

/// Naive prefilter: fit the remaining poles to the projection misfit of the
/// fixed-pole-only model (one joint order-q fit when q > 1). Throws
/// DegenerateError when that misfit vanishes.
BaselineResult npf(const Signal& y, int n, const FixedPoleSet& fixed,
                   const RealizeOptions& options = {});

/// Time-series deflation: fit the remaining poles to T_{N-m}(c) y. Throws
/// InputError when N - m <= 2q.
BaselineResult tsd(const Signal& y, int n, const FixedPoleSet& fixed,
                   const RealizeOptions& options = {});

}  // namespace gor
