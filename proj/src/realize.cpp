#include "gor/realize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "gor/errors.hpp"

namespace gor {

namespace {

constexpr double kDuplicateTolerance = 1e-6;

bool lexicographic_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

struct RealRoot {
  Vector b;
  ComplexVector z;
  double residual;
};

}  // namespace

bool is_real_eigenvalue(const ComplexVector& b) {
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    if (!std::isfinite(b[i].real()) || !std::isfinite(b[i].imag())) return false;
    if (std::abs(b[i].imag()) > 1e-8 * (1.0 + std::abs(b[i].real()))) return false;
  }
  return true;
}

CriticalPoint make_critical_point(const Signal& y, const ModelPoly& c, const Vector& b_tail,
                                  const MatrixPolynomial& mp,
                                  const std::optional<ComplexVector>& eigvec) {
  ModelPoly b = ModelPoly::monic(b_tail);
  ModelPoly a = poly_mul(b, c);
  ProjectionResult proj = project_misfit(a, y);
  Vector g = solve_reduced_multipliers(b, c, proj);
  const FoncResidual fonc = fonc_residuals(b, c, y, proj, g);

  std::optional<FoncResidual> fonc_eigvec;
  if (eigvec && std::abs((*eigvec)[0]) > 1e-12 * eigvec->norm()) {
    const ComplexVector& z = *eigvec;
    const Vector g_eig = (-z.tail(z.size() - 1) / z[0]).real();
    fonc_eigvec = fonc_residuals(b, c, y, proj, g_eig);
  }

  const int q = b.degree();
  const RankReport rank = filtered_hankel_rank_report(proj.yhat, c, q);
  const Vector sv = mp.evaluate(b_tail).jacobiSvd().singularValues();
  const double sigma_ratio = sv[0] > 0.0 ? sv[sv.size() - 1] / sv[0] : 0.0;

  std::vector<Complex> poles = poly_roots(a);
  return CriticalPoint{std::move(b),
                       std::move(a),
                       std::move(poles),
                       proj.yhat,
                       proj.misfit_sq,
                       std::move(g),
                       fonc,
                       fonc_eigvec,
                       rank.rank,
                       rank.borderline,
                       sigma_ratio,
                       true};
}

RealizationResult realize(const Signal& y, int n, const FixedPoleSet& fixed,
                          const RealizeOptions& options) {
  if (n < 1) throw InputError("realize: model order must be >= 1");
  const int m = fixed.size();
  if (m >= n) throw InputError("realize: need fewer fixed poles than the model order");
  if (y.size() <= 2 * n) throw InputError("realize: need N > 2n samples");

  const ModelPoly c = poly_from_roots(fixed);
  const int q = n - m;
  const MatrixPolynomial mp = build_matrix_polynomial(y, c, q);
  MepSpectrum spectrum =
      q == 1 ? solve_univariate(mp)
             : solve_block_macaulay(mp, options.max_macaulay_degree, options.max_macaulay_columns);

  RealizationResult result;
  result.n_affine = static_cast<int>(spectrum.affine.size());
  result.n_infinite = spectrum.infinite;
  result.macaulay = spectrum.macaulay;
  result.warnings = spectrum.warnings;

  std::vector<RealRoot> real_roots;
  for (auto& s : spectrum.affine) {
    if (options.polish) s = polish(mp, s);
    result.affine_eigenvalues.push_back(s.b);
    if (is_real_eigenvalue(s.b)) {
      real_roots.push_back({s.b.real(), s.z, relative_residual(mp, s)});
    }
  }

  std::sort(real_roots.begin(), real_roots.end(),
            [](const RealRoot& l, const RealRoot& r) { return lexicographic_less(l.b, r.b); });
  std::vector<RealRoot> distinct;
  for (auto& root : real_roots) {
    auto dup = std::find_if(distinct.begin(), distinct.end(), [&](const RealRoot& kept) {
      return (kept.b - root.b).lpNorm<Eigen::Infinity>() <= kDuplicateTolerance;
    });
    if (dup == distinct.end()) {
      distinct.push_back(std::move(root));
    } else if (root.residual < dup->residual) {
      *dup = std::move(root);
    }
  }

  for (const auto& root : distinct) {
    try {
      result.candidates.push_back(make_critical_point(y, c, root.b, mp, root.z));
    } catch (const DegenerateError& e) {
      std::ostringstream msg;
      msg << "skipped real eigenvalue with degenerate model: " << e.what();
      result.warnings.push_back(msg.str());
    }
  }
  result.n_real = static_cast<int>(result.candidates.size());
  if (result.candidates.empty()) {
    std::ostringstream msg;
    msg << "none of the " << result.n_affine << " affine eigenvalues is real";
    throw NoRealSolutionError(msg.str(), result.affine_eigenvalues);
  }

  std::stable_sort(result.candidates.begin(), result.candidates.end(),
                   [](const CriticalPoint& l, const CriticalPoint& r) {
                     if (l.misfit_sq != r.misfit_sq) return l.misfit_sq < r.misfit_sq;
                     return lexicographic_less(l.b.tail(), r.b.tail());
                   });
  result.global = 0;
  return result;
}

}  // namespace gor
