#include <doctest.h>

#include <cmath>
#include <random>

#include "cases.hpp"
#include "gor/errors.hpp"
#include "gor/signal_model.hpp"
#include "oracle.hpp"

using namespace gor;

namespace {

Vector random_vector(std::mt19937& g, Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = std::uniform_real_distribution<double>(-2, 2)(g);
  return v;
}

std::vector<Complex> sorted(std::vector<Complex> z) {
  std::sort(z.begin(), z.end(), [](Complex l, Complex r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  return z;
}

}  // namespace

TEST_SUITE("signal_model") {
  TEST_CASE("Signal rejects empty and non-finite input") {
    CHECK_THROWS_AS(Signal(Vector(0)), InputError);
    Vector bad(2);
    bad << 1.0, std::nan("");
    CHECK_THROWS_AS(static_cast<void>(Signal(bad)), InputError);
    bad << 1.0, INFINITY;
    CHECK_THROWS_AS(static_cast<void>(Signal(bad)), InputError);
    CHECK(Signal{1.0, 2.0}.size() == 2);
  }

  TEST_CASE("toeplitz of a first-order polynomial") {
    const double rho = 0.3;
    Matrix expected(2, 3);
    expected << -rho, 1, 0, 0, -rho, 1;
    CHECK(toeplitz(ModelPoly{-rho, 1.0}, 2) == expected);
  }

  TEST_CASE("toeplitz of the unit polynomial is the identity") {
    CHECK(toeplitz(ModelPoly::one(), 3) == Matrix::Identity(3, 3));
  }

  TEST_CASE("toeplitz rejects fewer than one row") {
    CHECK_THROWS_AS(toeplitz(ModelPoly{1.0, 2.0}, 0), InputError);
  }

  TEST_CASE("toeplitz matches the banded definition") {
    std::mt19937 g(3);
    for (int t = 0; t < 20; ++t) {
      const Vector p = random_vector(g, 1 + t % 4);
      const Eigen::Index rows = 1 + t % 6;
      CHECK(toeplitz(ModelPoly(p), rows) == oracle::banded(p, rows));
    }
  }

  TEST_CASE("deflation prefilter equals direct convolution") {
    const Vector y = cases::motivational();
    const ModelPoly c = poly_from_roots(FixedPoleSet({Complex(-0.9557, 0.0)}));
    const Vector filtered = toeplitz(c, 6) * y;
    // Valid part of the full convolution of y with the reversed filter.
    for (Eigen::Index k = 0; k < 6; ++k) {
      const double direct = c[0] * y[k] + c[1] * y[k + 1];
      CHECK(filtered[k] == doctest::Approx(direct).epsilon(1e-15));
    }
    CHECK(filtered[0] == doctest::Approx(0.9557 * 3.0 + 5.0));
  }

  TEST_CASE("hankel definition and bounds") {
    Matrix expected(3, 2);
    expected << 1, 2, 2, 3, 3, 4;
    CHECK(hankel(Signal{1, 2, 3, 4}, 2) == expected);
    CHECK_THROWS_AS(hankel(Signal{1, 2, 3}, 4), InputError);
  }

  TEST_CASE("hankel times b equals toeplitz of b times the signal") {
    std::mt19937 g(5);
    for (int t = 0; t < 25; ++t) {
      const Eigen::Index N = 6 + t % 7;
      const int q = 1 + t % 3;
      const Vector s = random_vector(g, N);
      const Vector b = random_vector(g, q + 1);
      const Vector lhs = hankel(Signal(s), q + 1) * b;
      const Vector rhs = toeplitz(ModelPoly(b), N - q) * s;
      CHECK((lhs - rhs).norm() <= 1e-13 * (1.0 + rhs.norm()));
    }
  }

  TEST_CASE("hankel of a geometric signal has rank one") {
    Vector s(8);
    for (int k = 0; k < 8; ++k) s[k] = std::pow(0.8, k);
    Eigen::JacobiSVD<Matrix> svd(hankel(Signal(s), 2));
    CHECK(svd.singularValues()[1] <= 1e-12 * svd.singularValues()[0]);
  }

  TEST_CASE("poly_mul of the example model") {
    const ModelPoly a = poly_mul(ModelPoly{-0.9538, 1.0}, ModelPoly{0.9557, 1.0});
    CHECK(a.degree() == 2);
    CHECK(a[2] == 1.0);
    CHECK(a[1] == doctest::Approx(0.0019).epsilon(1e-12));
    CHECK(a[0] == doctest::Approx(-0.9116).epsilon(1e-4));
    CHECK(poly_mul(a, ModelPoly::one()) == a);
  }

  TEST_CASE("poly_mul agrees with the convolution oracle and Toeplitz factorization") {
    std::mt19937 g(11);
    for (int t = 0; t < 30; ++t) {
      const Vector p = random_vector(g, 1 + t % 4);
      const Vector r = random_vector(g, 1 + (t / 4) % 3);
      const ModelPoly pr = poly_mul(ModelPoly(p), ModelPoly(r));
      CHECK((pr.coeffs() - oracle::convolve(p, r)).norm() <= 1e-14 * (1 + pr.coeffs().norm()));
      const Eigen::Index k = 1 + t % 5;
      const Matrix lhs = toeplitz(pr, k);
      const Matrix rhs = oracle::banded(r, k) * oracle::banded(p, k + r.size() - 1);
      CHECK((lhs - rhs).norm() <= 1e-13 * (1 + lhs.norm()));
    }
  }

  TEST_CASE("poly_from_roots") {
    CHECK(poly_from_roots(FixedPoleSet({Complex(0.5, 0.0)})) == ModelPoly{-0.5, 1.0});
    CHECK(poly_from_roots(FixedPoleSet({Complex(-0.9557, 0.0)})) == ModelPoly{0.9557, 1.0});
    CHECK(poly_from_roots(FixedPoleSet()) == ModelPoly::one());

    const Complex p = std::polar(1.0, 0.8);
    const ModelPoly c = poly_from_roots(FixedPoleSet({p, std::conj(p)}));
    const Vector expected = oracle::from_roots({p, std::conj(p)});
    CHECK((c.coeffs() - expected).norm() <= 1e-15);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(-2.0 * std::cos(0.8)));
    const auto roots = sorted(poly_roots(c));
    CHECK(std::abs(roots[0] - std::conj(p)) <= 1e-12);
    CHECK(std::abs(roots[1] - p) <= 1e-12);
  }

  TEST_CASE("poly_from_roots rejects sets that are not conjugate closed") {
    CHECK_THROWS_AS(poly_from_roots(FixedPoleSet({Complex(0.5, 0.2)})), InputError);
    CHECK_NOTHROW(poly_from_roots(FixedPoleSet::with_conjugates({Complex(0.5, 0.2)})));
    CHECK(FixedPoleSet::with_conjugates({Complex(0.5, 0.2), Complex(0.1, 0.0)}).size() == 3);
  }

  TEST_CASE("poly_roots") {
    const auto r = poly_roots(ModelPoly{-0.9116, 0.0019, 1.0});
    REQUIRE(r.size() == 2);
    CHECK(r[0].real() == doctest::Approx(-0.9557).epsilon(1e-3));
    CHECK(r[1].real() == doctest::Approx(0.9538).epsilon(1e-3));

    const auto z = poly_roots(ModelPoly{0.0, 1.0});
    REQUIRE(z.size() == 1);
    CHECK(std::abs(z[0]) == 0.0);

    CHECK_THROWS_AS(poly_roots(ModelPoly{1.0, 0.0}), InputError);
  }

  TEST_CASE("poly_roots recovers known roots of random quartics") {
    std::mt19937 g(17);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int t = 0; t < 20; ++t) {
      const Complex pair(u(g), 0.3 + 0.5 * std::abs(u(g)));
      std::vector<Complex> roots{pair, std::conj(pair), Complex(u(g) - 1.0, 0.0), Complex(u(g) + 1.0, 0.0)};
      const ModelPoly p(oracle::from_roots(roots));
      const auto found = sorted(poly_roots(p));
      const auto want = sorted(roots);
      for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(found[i] - want[i]) <= 1e-8);
      const ModelPoly back = poly_from_roots(FixedPoleSet(found));
      CHECK((back.coeffs() - p.coeffs()).norm() <= 1e-8 * p.coeffs().norm());
    }
  }

  TEST_CASE("Toeplitz commutation identity on random inputs") {
    std::mt19937 g(23);
    for (int t = 0; t < 100; ++t) {
      const int q = 1 + t % 3;
      const int m = t % 3;
      const int n = q + m;
      const Eigen::Index N = 2 * n + 1 + t % 5;
      const ModelPoly b(random_vector(g, q + 1));
      const ModelPoly c(random_vector(g, m + 1));
      const Matrix lhs = toeplitz(c, N - n) * toeplitz(b, N - q);
      const Matrix rhs = toeplitz(b, N - n) * toeplitz(c, N - m);
      CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <= 1e-14 * (1.0 + lhs.lpNorm<Eigen::Infinity>()));
    }
  }

  TEST_CASE("sums of modes are annihilated by their characteristic polynomial") {
    const Complex p = std::polar(0.9, 1.1);
    const std::vector<Complex> poles{p, std::conj(p), Complex(-0.7, 0.0), Complex(0.4, 0.0)};
    const std::vector<Complex> w{Complex(1.5, -0.5), Complex(1.5, 0.5), Complex(2.0), Complex(-1.0)};
    const Vector x = cases::exponential_sum(poles, w, 15);
    const ModelPoly a = poly_from_roots(FixedPoleSet(poles));
    CHECK((toeplitz(a, 15 - 4) * x).norm() <= 1e-10 * x.norm());
    const Vector v = vandermonde(Complex(-0.7, 0.0), 9).real();
    CHECK((toeplitz(poly_from_roots(FixedPoleSet({Complex(-0.7, 0.0)})), 8) * v).norm() <= 1e-10);
  }
}
