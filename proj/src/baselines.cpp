#include "gor/baselines.hpp"

#include "gor/errors.hpp"

namespace gor {

namespace {

void check_split(int n, const FixedPoleSet& fixed) {
  if (fixed.size() < 1 || fixed.size() >= n) {
    throw InputError("baseline needs 0 < m < n fixed poles");
  }
}

BaselineResult finish(BaselineMethod method, const Signal& y, const ModelPoly& c,
                      const RealizationResult& fit) {
  const ModelPoly& b = fit.best().b;
  ModelPoly combined = poly_mul(b, c);
  const double misfit_sq = project_misfit(combined, y).misfit_sq;
  return BaselineResult{method, poly_roots(b), b, std::move(combined), misfit_sq};
}

}  // namespace

std::string_view to_string(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::NaivePrefilter:
      return "npf";
    case BaselineMethod::Deflation:
      return "tsd";
  }
  return "unknown";
}

BaselineResult npf(const Signal& y, int n, const FixedPoleSet& fixed,
                   const RealizeOptions& options) {
  check_split(n, fixed);
  if (y.size() <= 2 * n) throw InputError("npf: need N > 2n samples");
  const ModelPoly c = poly_from_roots(fixed);
  const int q = n - fixed.size();

  const ProjectionResult first = project_misfit(c, y);
  if (first.misfit_sq <= 1e-24 * y.values().squaredNorm()) {
    throw DegenerateError("npf: data are explained by the fixed poles alone; no dynamics left to fit");
  }
  const RealizationResult fit = realize(first.misfit, q, {}, options);
  return finish(BaselineMethod::NaivePrefilter, y, c, fit);
}

BaselineResult tsd(const Signal& y, int n, const FixedPoleSet& fixed,
                   const RealizeOptions& options) {
  check_split(n, fixed);
  const int m = fixed.size();
  const int q = n - m;
  if (y.size() - m <= 2 * q) throw InputError("tsd: need N - m > 2q samples");
  if (y.size() <= 2 * n) throw InputError("tsd: need N > 2n samples");
  const ModelPoly c = poly_from_roots(fixed);

  const Signal filtered(toeplitz(c, y.size() - m) * y.values());
  const RealizationResult fit = realize(filtered, q, {}, options);
  return finish(BaselineMethod::Deflation, y, c, fit);
}

}  // namespace gor
