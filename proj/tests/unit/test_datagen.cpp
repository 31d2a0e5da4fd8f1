#include <doctest.h>

#include <algorithm>

#include "gor/datagen.hpp"
#include "gor/errors.hpp"
#include "gor/local_search.hpp"
#include "gor/realize.hpp"
#include "oracle.hpp"

using namespace gor;

namespace {

MonteCarloConfig small_config() {
  MonteCarloConfig cfg = example_three_config();
  cfg.sigma_levels = {0.05, 0.25};
  cfg.trials = 3;
  cfg.threads = 2;
  return cfg;
}

}  // namespace

TEST_SUITE("datagen") {
  TEST_CASE("state-space model has the requested poles") {
    const MonteCarloConfig cfg = example_three_config();
    Matrix T(3, 3);
    T << 1, 0.5, 0, 0, 1, 0.2, 0.3, 0, 1;
    for (const auto& t : {std::optional<Matrix>{}, std::optional<Matrix>{T}}) {
      const StateSpaceModel model = StateSpaceModel::from_poles(cfg.true_poles, cfg.C, cfg.x0, t);
      Eigen::EigenSolver<Matrix> es(model.A);
      std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + 3);
      for (Complex p : cfg.true_poles) {
        const bool hit = std::any_of(ev.begin(), ev.end(), [&](Complex e) { return std::abs(e - p) <= 1e-10; });
        CHECK(hit);
      }
    }
    CHECK_THROWS_AS(StateSpaceModel::from_poles({Complex(0.5, 0.5)}, Vector::Ones(1), Vector::Ones(1)), InputError);
    CHECK_THROWS_AS(StateSpaceModel::from_poles({Complex(0.5)}, Vector::Ones(1), Vector::Ones(1),
                                                Matrix::Zero(1, 1)),
                    InputError);
  }

  TEST_CASE("simulate") {
    const MonteCarloConfig cfg = example_three_config();
    const StateSpaceModel model = StateSpaceModel::from_poles(cfg.true_poles, cfg.C, cfg.x0);
    const Signal x = simulate(model, 16);
    CHECK(x[0] == 6.0);
    // Exactly model compliant.
    const ModelPoly a = poly_from_roots(FixedPoleSet(cfg.true_poles));
    CHECK((toeplitz(a, 13) * x.values()).norm() <= 1e-9 * x.values().norm());
    // Three modes: the 4-column Hankel matrix has rank 3.
    Eigen::JacobiSVD<Matrix> svd(hankel(x, 4));
    const auto& s = svd.singularValues();
    CHECK(s[2] > 1e-6 * s[0]);
    CHECK(s[3] <= 1e-10 * s[0]);

    const StateSpaceModel one{Matrix::Identity(1, 1), Vector::Ones(1), Vector::Ones(1)};
    CHECK(simulate(one, 5).values() == Vector::Ones(5));
    CHECK_THROWS_AS(simulate(one, 0), InputError);
  }

  TEST_CASE("add_noise") {
    const Signal x(Vector::LinSpaced(10000, 0.0, 1.0));
    CHECK(add_noise(x, 0.0, 3).values() == x.values());
    const Signal a = add_noise(x, 0.3, 42);
    const Signal b = add_noise(x, 0.3, 42);
    CHECK(a.values() == b.values());
    CHECK(a.values() != add_noise(x, 0.3, 43).values());
    const Vector e = (a.values() - x.values()) / 0.3;
    const double mean = e.mean();
    const double var = (e.array() - mean).square().sum() / static_cast<double>(e.size() - 1);
    CHECK(var >= 0.94);
    CHECK(var <= 1.06);
    CHECK(std::abs(mean) <= 0.05);
    CHECK_THROWS_AS(add_noise(x, -1.0, 1), InputError);
  }

  TEST_CASE("trial seeds") {
    CHECK(trial_seed(7, 0, 0) == 7);
    CHECK(trial_seed(7, 2, 5) == 7 + 5 + 2000000);
  }

  TEST_CASE("noiseless fixed-pole trial is exact") {
    MonteCarloConfig cfg = example_three_config();
    cfg.sigma_levels = {0.0};
    cfg.trials = 1;
    const auto rows = montecarlo(cfg);
    const auto fp = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r.method == TrialMethod::FPGOR; });
    REQUIRE(fp != rows.end());
    CHECK(fp->error.empty());
    CHECK(fp->true_err_sq <= 1e-10);
  }

  TEST_CASE("montecarlo rows are ordered and independent of the thread count") {
    MonteCarloConfig cfg = small_config();
    const auto a = montecarlo(cfg);
    cfg.threads = 1;
    const auto b = montecarlo(cfg);
    REQUIRE(a.size() == 2 * 2 * 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].sigma_index == static_cast<int>(i / 6));
      CHECK(a[i].trial == static_cast<int>((i / 2) % 3));
      CHECK(a[i].method == (i % 2 == 0 ? TrialMethod::SGOR : TrialMethod::FPGOR));
      CHECK(a[i].misfit_sq == b[i].misfit_sq);
      CHECK(a[i].true_err_sq == b[i].true_err_sq);
      CHECK(a[i].error.empty());
      CHECK(a[i].misfit_sq >= 0.0);
      CHECK(a[i].true_err_sq >= 0.0);
    }
    for (std::size_t i = 0; i < a.size(); i += 2) CHECK(a[i].misfit_sq <= a[i + 1].misfit_sq + 1e-9);
  }

  TEST_CASE("config validation") {
    MonteCarloConfig cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = small_config();
    cfg.sigma_levels = {-0.1};
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = small_config();
    cfg.fixed_poles = cfg.true_poles;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = small_config();
    cfg.N = 6;
    CHECK_THROWS_AS(cfg.validate(), InputError);
  }

  TEST_CASE("quartiles") {
    const Quartiles q = quartiles({4.0, 1.0, 3.0, 2.0, 5.0});
    CHECK(q.min == 1.0);
    CHECK(q.q1 == 2.0);
    CHECK(q.median == 3.0);
    CHECK(q.q3 == 4.0);
    CHECK(q.max == 5.0);
    CHECK(quartiles({1.0, 2.0}).median == 1.5);
    CHECK_THROWS_AS(quartiles({}), InputError);
  }

  TEST_CASE("summary groups by sigma, method and metric") {
    std::vector<TrialRecord> rows;
    for (int t = 0; t < 4; ++t) {
      TrialRecord r;
      r.sigma = 0.1;
      r.trial = t;
      r.method = TrialMethod::FPGOR;
      r.misfit_sq = t;
      r.true_err_sq = 2.0 * t;
      rows.push_back(r);
    }
    rows.back().error = "failed";
    const auto s = summarize(rows);
    REQUIRE(s.size() == 2);
    CHECK(s[0].metric == "misfit_sq");
    CHECK(s[0].count == 3);
    CHECK(s[0].stats.median == 1.0);
    CHECK(s[1].stats.max == 4.0);
  }

  TEST_CASE("multistart search matches the exact route where both are available") {
    const Vector y = (Vector(9) << 3, 5, 2, 3, 4, 2, 3, 1, 2).finished();
    const RealizationResult exact = realize(Signal(y), 2);
    const LocalFit fit = multistart_realize(Signal(y), 2, {});
    CHECK(fit.misfit_sq == doctest::Approx(exact.best().misfit_sq).epsilon(1e-8));
    CHECK(fit.misfit_sq >= exact.best().misfit_sq - 1e-9);
  }

  TEST_CASE("multistart search never loses to its extra start") {
    const MonteCarloConfig cfg = example_three_config();
    const Signal x = simulate(StateSpaceModel::from_poles(cfg.true_poles, cfg.C, cfg.x0), 16);
    const Signal y = add_noise(x, 0.3, 9);
    const CriticalPoint fp = realize(y, 3, FixedPoleSet(cfg.fixed_poles)).best();
    MultistartOptions tiny;
    tiny.grid_levels = 1;
    tiny.refine_count = 1;
    const LocalFit fit = multistart_realize(y, 3, {}, {fp.a.tail()}, tiny);
    CHECK(fit.misfit_sq <= fp.misfit_sq + 1e-12);
  }
}
