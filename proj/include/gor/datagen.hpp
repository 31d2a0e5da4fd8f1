#pragma once

// Synthetic data from state-space models and the seeded Monte Carlo
// comparison of standard and fixed-pole realization.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gor/signal_model.hpp"

namespace gor {

struct StateSpaceModel {
  Matrix A;
  Vector C;   ///< output row, stored as a column vector
  Vector x0;

  /// A = T^{-1} blkdiag(...) T with a 2x2 rotation-scaling block per
  /// conjugate pair and a 1x1 block per real pole, in the order given.
  /// Throws InputError when the poles are not closed under conjugation or
  /// T is singular.
  static StateSpaceModel from_poles(const std::vector<Complex>& poles, const Vector& C,
                                    const Vector& x0, const std::optional<Matrix>& T = {});
};

/// x_k = C A^k x0 for k = 0 ... N-1. Throws InputError when N < 1.
Signal simulate(const StateSpaceModel& model, Eigen::Index N);

/// y = x + sigma * eps with eps i.i.d. standard normal from mt19937_64(seed)
/// through the Box-Muller transform. Throws InputError when sigma < 0.
Signal add_noise(const Signal& x, double sigma, std::uint64_t seed);

enum class TrialMethod { SGOR, FPGOR };

std::string_view to_string(TrialMethod method);

/// How the standard (no fixed poles) fit is computed in a Monte Carlo run.
enum class SgorMode {
  Off,         ///< FP-GOR rows only
  Multistart,  ///< deterministic multistart local search, seeded with the FP-GOR model
  Exact,       ///< block Macaulay eigenvalue route; very expensive for n >= 3
};

struct MonteCarloConfig {
  Eigen::Index N = 16;
  std::vector<double> sigma_levels{0.05, 0.15, 0.25, 0.35, 0.45};
  int trials = 50;
  std::uint64_t base_seed = 1;
  std::vector<Complex> true_poles;   ///< all n poles, conjugate-closed
  std::vector<Complex> fixed_poles;  ///< subset assumed known for FP-GOR
  Vector C;
  Vector x0;
  std::optional<Matrix> T;
  SgorMode sgor = SgorMode::Multistart;
  int threads = 0;  ///< 0: REALIZE_THREADS, else hardware concurrency

  /// Throws InputError on an invalid configuration.
  void validate() const;
  int order() const { return static_cast<int>(true_poles.size()); }
};

/// The configuration of the three-pole statistical experiment:
/// poles e^{+-0.8j} and -0.75, C = [2 2 2], x0 = [1 1 1], T = I, N = 16.
MonteCarloConfig example_three_config();

struct TrialRecord {
  double sigma = 0.0;
  int sigma_index = 0;
  int trial = 0;
  TrialMethod method = TrialMethod::FPGOR;
  double misfit_sq = 0.0;    ///< || y - yhat ||^2
  double true_err_sq = 0.0;  ///< || y_true - yhat ||^2
  std::vector<Complex> estimated_poles;
  double wall_time = 0.0;    ///< seconds
  std::string error;         ///< empty unless the solver failed on this trial
};

/// Seed of one trial: base_seed + trial + 10^6 sigma_index.
std::uint64_t trial_seed(std::uint64_t base_seed, int sigma_index, int trial);

/// Worker count from REALIZE_THREADS (0 or unset: hardware concurrency).
int worker_count(int requested);

/// Runs every (sigma, trial) pair, possibly concurrently. Rows are ordered by
/// (sigma_index, trial, method) regardless of scheduling.
std::vector<TrialRecord> montecarlo(const MonteCarloConfig& cfg);

struct Quartiles {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

/// Quartiles with linear interpolation between order statistics. Throws
/// InputError on an empty sample.
Quartiles quartiles(std::vector<double> values);

struct SummaryRow {
  double sigma = 0.0;
  TrialMethod method = TrialMethod::FPGOR;
  std::string metric;  ///< "misfit_sq" or "true_err_sq"
  int count = 0;
  Quartiles stats;
};

/// Per (sigma, method, metric) quartiles over the successful trials.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

}  // namespace gor
