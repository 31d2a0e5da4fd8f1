#include "gor/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include "gor/errors.hpp"
#include "gor/optimality.hpp"

namespace gor {

namespace {

struct MisfitFunctor : Eigen::DenseFunctor<double> {
  MisfitFunctor(const Signal& y, const ModelPoly& c, int q)
      : Eigen::DenseFunctor<double>(q, static_cast<int>(y.size())), y_(y), c_(c) {}

  int operator()(const InputType& x, ValueType& fvec) const {
    try {
      fvec = project_misfit(poly_mul(ModelPoly::monic(x), c_), y_).misfit.values();
    } catch (const DegenerateError&) {
      // The zero model output is always feasible, so y bounds the misfit.
      fvec = y_.values();
    }
    return 0;
  }

  const Signal& y_;
  const ModelPoly& c_;
};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Vector> coefficient_grid(int q, int levels) {
  std::vector<Vector> grid;
  std::vector<int> idx(q, 0);
  while (true) {
    Vector p(q);
    for (int j = 0; j < q; ++j) {
      const double range = binomial(q, j + 1);
      p[j] = levels == 1 ? 0.0 : -range + 2.0 * range * idx[j] / (levels - 1);
    }
    grid.push_back(std::move(p));
    int j = q - 1;
    while (j >= 0 && ++idx[j] == levels) idx[j--] = 0;
    if (j < 0) break;
  }
  return grid;
}

}  // namespace

double local_objective(const Signal& y, const ModelPoly& c, const Vector& b_tail) {
  try {
    return project_misfit(poly_mul(ModelPoly::monic(b_tail), c), y).misfit_sq;
  } catch (const DegenerateError&) {
    return std::numeric_limits<double>::infinity();
  }
}

LocalFit multistart_realize(const Signal& y, int n, const FixedPoleSet& fixed,
                            const std::vector<Vector>& extra_starts,
                            const MultistartOptions& options) {
  const int m = fixed.size();
  if (n < 1 || m >= n) throw InputError("multistart: need 0 <= m < n");
  if (y.size() <= 2 * n) throw InputError("multistart: need N > 2n samples");
  if (options.grid_levels < 1 || options.refine_count < 1) {
    throw InputError("multistart: grid_levels and refine_count must be positive");
  }
  const int q = n - m;
  const ModelPoly c = poly_from_roots(fixed);

  std::vector<std::pair<double, Vector>> scored;
  for (auto& p : coefficient_grid(q, options.grid_levels)) {
    const double f = local_objective(y, c, p);
    scored.emplace_back(f, std::move(p));
  }
  // Stable ordering keeps ties deterministic.
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  const auto keep = std::min<std::size_t>(scored.size(), options.refine_count);
  scored.resize(keep);
  for (const auto& s : extra_starts) {
    if (s.size() != q) throw InputError("multistart: extra start has the wrong length");
    scored.emplace_back(local_objective(y, c, s), s);
  }

  Vector best_b = scored.front().second;
  double best_f = scored.front().first;
  for (const auto& [f0, start] : scored) {
    if (f0 < best_f) {
      best_f = f0;
      best_b = start;
    }
    MisfitFunctor functor(y, c, q);
    Eigen::NumericalDiff<MisfitFunctor, Eigen::Central> numdiff(functor);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<MisfitFunctor, Eigen::Central>> lm(numdiff);
    lm.setMaxfev(options.max_evaluations);
    lm.setXtol(1e-14);
    lm.setFtol(1e-15);
    Vector x = start;
    lm.minimize(x);
    const double f = local_objective(y, c, x);
    if (f < best_f) {
      best_f = f;
      best_b = x;
    }
  }

  ModelPoly b = ModelPoly::monic(best_b);
  ModelPoly a = poly_mul(b, c);
  return LocalFit{std::move(b), std::move(a), best_f, static_cast<int>(scored.size())};
}

}  // namespace gor
