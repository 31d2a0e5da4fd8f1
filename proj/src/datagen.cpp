#include "gor/datagen.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <random>
#include <thread>
#include <tuple>

#include "gor/errors.hpp"
#include "gor/local_search.hpp"
#include "gor/optimality.hpp"
#include "gor/realize.hpp"

namespace gor {

namespace {

constexpr double kPairTolerance = 1e-12;

bool is_complex(Complex p) { return std::abs(p.imag()) > kPairTolerance * (1.0 + std::abs(p)); }

}  // namespace

StateSpaceModel StateSpaceModel::from_poles(const std::vector<Complex>& poles, const Vector& C,
                                            const Vector& x0, const std::optional<Matrix>& T) {
  const auto n = static_cast<Eigen::Index>(poles.size());
  if (n < 1) throw InputError("state-space model needs at least one pole");
  if (C.size() != n || x0.size() != n) throw InputError("C and x0 must have one entry per pole");

  Matrix blocks = Matrix::Zero(n, n);
  std::vector<bool> used(poles.size(), false);
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Complex p = poles[i];
    if (!is_complex(p)) {
      blocks(k, k) = p.real();
      ++k;
      continue;
    }
    std::size_t partner = poles.size();
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      if (!used[j] && std::abs(poles[j] - std::conj(p)) <= 1e-10 * (1.0 + std::abs(p))) {
        partner = j;
        break;
      }
    }
    if (partner == poles.size()) throw InputError("complex pole without its conjugate");
    used[partner] = true;
    blocks(k, k) = p.real();
    blocks(k, k + 1) = -p.imag();
    blocks(k + 1, k) = p.imag();
    blocks(k + 1, k + 1) = p.real();
    k += 2;
  }

  Matrix A = blocks;
  if (T) {
    if (T->rows() != n || T->cols() != n) throw InputError("T must be n x n");
    Eigen::FullPivLU<Matrix> lu(*T);
    if (!lu.isInvertible()) throw InputError("T must be non-singular");
    A = lu.inverse() * blocks * *T;
  }
  return StateSpaceModel{std::move(A), C, x0};
}

Signal simulate(const StateSpaceModel& model, Eigen::Index N) {
  if (N < 1) throw InputError("simulate: N must be >= 1");
  Vector x(N);
  Vector state = model.x0;
  for (Eigen::Index k = 0; k < N; ++k) {
    x[k] = model.C.dot(state);
    state = model.A * state;
  }
  return Signal(std::move(x));
}

Signal add_noise(const Signal& x, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InputError("add_noise: sigma must be >= 0");
  if (sigma == 0.0) return x;
  std::mt19937_64 rng(seed);
  // Box-Muller by hand: std::normal_distribution is not specified exactly,
  // so its output differs between standard libraries.
  auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
  Vector y = x.values();
  for (Eigen::Index k = 0; k < y.size(); k += 2) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 2.0 * std::numbers::pi * uniform();
    y[k] += sigma * r * std::cos(t);
    if (k + 1 < y.size()) y[k + 1] += sigma * r * std::sin(t);
  }
  return Signal(std::move(y));
}

std::string_view to_string(TrialMethod method) {
  return method == TrialMethod::SGOR ? "SGOR" : "FPGOR";
}

void MonteCarloConfig::validate() const {
  if (trials < 1) throw InputError("montecarlo: trials must be >= 1");
  if (sigma_levels.empty()) throw InputError("montecarlo: no sigma levels");
  for (double s : sigma_levels) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw InputError("montecarlo: sigmas must be >= 0");
  }
  const int n = order();
  if (n < 1) throw InputError("montecarlo: no poles");
  const int m = static_cast<int>(fixed_poles.size());
  if (m < 1 || m >= n) throw InputError("montecarlo: need 0 < m < n fixed poles");
  if (N <= 2 * n) throw InputError("montecarlo: need N > 2n");
  if (C.size() != n || x0.size() != n) throw InputError("montecarlo: C and x0 need n entries");
  (void)poly_from_roots(FixedPoleSet{true_poles});
  (void)poly_from_roots(FixedPoleSet{fixed_poles});
}

MonteCarloConfig example_three_config() {
  MonteCarloConfig cfg;
  const Complex p = std::polar(1.0, 0.8);
  cfg.true_poles = {p, std::conj(p), Complex(-0.75, 0.0)};
  cfg.fixed_poles = {p, std::conj(p)};
  cfg.C = Vector::Constant(3, 2.0);
  cfg.x0 = Vector::Ones(3);
  return cfg;
}

std::uint64_t trial_seed(std::uint64_t base_seed, int sigma_index, int trial) {
  return base_seed + static_cast<std::uint64_t>(trial) +
         1'000'000ULL * static_cast<std::uint64_t>(sigma_index);
}

int worker_count(int requested) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("REALIZE_THREADS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, n);
}

namespace {

struct TrialJob {
  int sigma_index;
  int trial;
};

TrialRecord base_record(const MonteCarloConfig& cfg, const TrialJob& job, TrialMethod method) {
  TrialRecord r;
  r.sigma = cfg.sigma_levels[job.sigma_index];
  r.sigma_index = job.sigma_index;
  r.trial = job.trial;
  r.method = method;
  return r;
}

void score(TrialRecord& r, const Signal& y, const Signal& truth, const ModelPoly& a) {
  const ProjectionResult proj = project_misfit(a, y);
  r.misfit_sq = proj.misfit_sq;
  r.true_err_sq = (truth.values() - proj.yhat.values()).squaredNorm();
  r.estimated_poles = poly_roots(a);
}

std::vector<TrialRecord> run_trial(const MonteCarloConfig& cfg, const Signal& truth,
                                   const TrialJob& job) {
  using Clock = std::chrono::steady_clock;
  const Signal y = add_noise(truth, cfg.sigma_levels[job.sigma_index],
                             trial_seed(cfg.base_seed, job.sigma_index, job.trial));
  const int n = cfg.order();
  const FixedPoleSet fixed(cfg.fixed_poles);

  std::vector<TrialRecord> rows;
  TrialRecord fp = base_record(cfg, job, TrialMethod::FPGOR);
  std::optional<Vector> fp_full_tail;
  auto start = Clock::now();
  try {
    const RealizationResult res = realize(y, n, fixed);
    score(fp, y, truth, res.best().a);
    fp_full_tail = res.best().a.tail();
  } catch (const Error& e) {
    fp.error = e.what();
  }
  fp.wall_time = std::chrono::duration<double>(Clock::now() - start).count();

  if (cfg.sgor != SgorMode::Off) {
    TrialRecord sg = base_record(cfg, job, TrialMethod::SGOR);
    start = Clock::now();
    try {
      if (cfg.sgor == SgorMode::Exact) {
        score(sg, y, truth, realize(y, n).best().a);
      } else {
        std::vector<Vector> starts;
        if (fp_full_tail) starts.push_back(*fp_full_tail);
        score(sg, y, truth, multistart_realize(y, n, {}, starts).a);
      }
    } catch (const Error& e) {
      sg.error = e.what();
    }
    sg.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
    rows.push_back(std::move(sg));
  }
  rows.push_back(std::move(fp));
  return rows;
}

}  // namespace

std::vector<TrialRecord> montecarlo(const MonteCarloConfig& cfg) {
  cfg.validate();
  const StateSpaceModel model = StateSpaceModel::from_poles(cfg.true_poles, cfg.C, cfg.x0, cfg.T);
  const Signal truth = simulate(model, cfg.N);

  std::vector<TrialJob> jobs;
  for (int s = 0; s < static_cast<int>(cfg.sigma_levels.size()); ++s) {
    for (int t = 0; t < cfg.trials; ++t) jobs.push_back({s, t});
  }
  std::vector<std::vector<TrialRecord>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      results[i] = run_trial(cfg, truth, jobs[i]);
    }
  };
  const int count = std::min<int>(worker_count(cfg.threads), static_cast<int>(jobs.size()));
  std::vector<std::jthread> pool;
  for (int i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::vector<TrialRecord> rows;
  for (auto& r : results) {
    for (auto& row : r) rows.push_back(std::move(row));
  }
  return rows;
}

Quartiles quartiles(std::vector<double> values) {
  if (values.empty()) throw InputError("quartiles of an empty sample");
  std::sort(values.begin(), values.end());
  auto at = [&values](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return Quartiles{values.front(), at(0.25), at(0.5), at(0.75), values.back()};
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  using Key = std::tuple<int, int, int>;
  std::map<Key, std::vector<double>> groups;
  std::map<int, double> sigma_of;
  for (const auto& r : records) {
    if (!r.error.empty()) continue;
    sigma_of[r.sigma_index] = r.sigma;
    const int method = static_cast<int>(r.method);
    groups[{r.sigma_index, method, 0}].push_back(r.misfit_sq);
    groups[{r.sigma_index, method, 1}].push_back(r.true_err_sq);
  }
  std::vector<SummaryRow> rows;
  for (auto& [key, values] : groups) {
    const auto [s, method, metric] = key;
    rows.push_back(SummaryRow{sigma_of[s], static_cast<TrialMethod>(method),
                              metric == 0 ? "misfit_sq" : "true_err_sq",
                              static_cast<int>(values.size()), quartiles(values)});
  }
  return rows;
}

}  // namespace gor
