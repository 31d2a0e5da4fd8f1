#include <doctest.h>

#include <random>

#include "cases.hpp"
#include "gor/errors.hpp"
#include "gor/optimality.hpp"
#include "oracle.hpp"

using namespace gor;

namespace {

const Signal kY(cases::motivational());

}  // namespace

TEST_SUITE("optimality") {
  TEST_CASE("misfit of the published fixed-pole model") {
    const ProjectionResult p = project_misfit(ModelPoly{-0.9116, 0.0019, 1.0}, kY);
    CHECK(p.misfit_sq == doctest::Approx(5.9112).epsilon(1e-3 / 5.9112));
    CHECK(p.misfit_sq == doctest::Approx(oracle::misfit(Vector{{-0.9116, 0.0019, 1.0}}, kY.values())));
  }

  TEST_CASE("misfit of the published standard second-order model") {
    const ModelPoly a = poly_from_roots(FixedPoleSet({Complex(-0.5351, 0.0), Complex(0.9194, 0.0)}));
    CHECK(project_misfit(a, kY).misfit_sq == doctest::Approx(3.8836).epsilon(1e-3 / 3.8836));
  }

  TEST_CASE("compliant data has zero misfit") {
    const Vector x = cases::exponential_sum({Complex(0.8), Complex(-0.6)}, {Complex(2.0), Complex(1.0)}, 9);
    const ModelPoly a = poly_from_roots(FixedPoleSet({Complex(0.8), Complex(-0.6)}));
    CHECK(project_misfit(a, Signal(x)).misfit_sq <= 1e-16 * x.squaredNorm());
  }

  TEST_CASE("projection contract") {
    std::mt19937 g(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int t = 0; t < 40; ++t) {
      const int n = 1 + t % 3;
      const Eigen::Index N = 2 * n + 1 + t % 6;
      Vector a(n + 1), y(N);
      for (auto& v : a) v = u(g);
      a[n] = 1.0;
      for (auto& v : y) v = 3.0 * u(g);
      const ModelPoly poly(a);
      const ProjectionResult p = project_misfit(poly, Signal(y));
      const double yy = y.squaredNorm();
      CHECK((p.yhat.values() + p.misfit.values() - y).norm() <= 1e-14 * y.norm());
      CHECK((toeplitz(poly, N - n) * p.yhat.values()).norm() <= 1e-8 * y.norm());
      CHECK(project_misfit(poly, p.yhat).misfit_sq <= 1e-16 * yy);
      CHECK(std::abs(yy - p.yhat.values().squaredNorm() - p.misfit_sq) <= 1e-10 * yy);
      CHECK(p.misfit_sq == doctest::Approx(oracle::misfit(a, y)).epsilon(1e-9));
      CHECK((toeplitz(poly, N - n).transpose() * p.multipliers - p.misfit.values()).norm() <= 1e-10 * y.norm());
    }
  }

  TEST_CASE("projection rejects short data and degenerate models") {
    CHECK_THROWS_AS(project_misfit(ModelPoly{1.0, 0.0, 1.0}, Signal{1.0, 2.0}), InputError);
    CHECK_THROWS_AS(project_misfit(ModelPoly{0.0, 0.0}, kY), DegenerateError);
  }

  TEST_CASE("stationarity residuals at the fixed-pole optimum") {
    const ModelPoly c{0.9557, 1.0};
    const Vector b_tail = Vector::Constant(1, -0.95383550571863);
    const ModelPoly b = ModelPoly::monic(b_tail);
    const ProjectionResult p = project_misfit(poly_mul(b, c), kY);
    const Vector g = solve_reduced_multipliers(b, c, p);
    CHECK(g.size() == 7 - 4 + 1);
    const FoncResidual r = fonc_residuals(b, c, kY, p, g);
    CHECK(r.max() <= 1e-6 * kY.values().norm());
    CHECK(r.r_mu == 0.0);
    // Independent stationarity check by finite differences of the SVD misfit.
    CHECK(oracle::misfit_gradient(kY.values(), c.coeffs(), b_tail).norm() <= 1e-5);
  }

  TEST_CASE("stationarity residuals away from critical points") {
    const ModelPoly c{0.9557, 1.0};
    std::mt19937 gen(31);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int t = 0; t < 20; ++t) {
      const Vector b_tail = Vector::Constant(1, u(gen));
      const ModelPoly b = ModelPoly::monic(b_tail);
      const ProjectionResult p = project_misfit(poly_mul(b, c), kY);
      const FoncResidual r = fonc_residuals(b, c, kY, p, solve_reduced_multipliers(b, c, p));
      CHECK(r.max() > 1e-3);
      CHECK(r.r_lambda <= 1e-10 * kY.values().norm());
      CHECK(r.r_mu == 0.0);
    }
  }

  TEST_CASE("stationarity residuals check dimensions") {
    const ModelPoly c{0.9557, 1.0};
    const ModelPoly b{-0.9, 1.0};
    const ProjectionResult p = project_misfit(poly_mul(b, c), kY);
    CHECK_THROWS_AS(fonc_residuals(b, c, kY, p, Vector::Zero(3)), InputError);
  }

  TEST_CASE("filtered Hankel rank") {
    const ModelPoly c{0.9557, 1.0};
    const ModelPoly b{-0.95383550571863, 1.0};
    const ProjectionResult p = project_misfit(poly_mul(b, c), kY);
    CHECK(filtered_hankel_rank(p.yhat, c, 1) == 1);
    CHECK(filtered_hankel_rank(Signal(Vector::Zero(7)), c, 1) == 0);
    // Data carrying only the fixed mode is annihilated by the filter.
    const Vector fixed_only = cases::exponential_sum({Complex(-0.9557)}, {Complex(2.0)}, 7);
    CHECK(filtered_hankel_rank(Signal(fixed_only), c, 1) == 0);
  }

  TEST_CASE("numerical rank threshold") {
    Vector s(3);
    s << 1.0, 1e-3, 1e-14;
    CHECK(numerical_rank(s, 5, 3) == 2);
    s << 1.0, 1e-3, 1e-9;
    CHECK(numerical_rank(s, 5, 3) == 3);
    CHECK(numerical_rank(Vector::Zero(3), 5, 3) == 0);
  }
}
