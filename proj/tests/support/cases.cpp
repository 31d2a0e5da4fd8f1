#include "cases.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"

namespace cases {

namespace {

double uniform(std::mt19937& g, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(g()) + 0.5) / 4294967296.0;
}

}  // namespace

Vector motivational() {
  Vector y(7);
  y << 3.0, 5.0, 2.0, 3.0, 4.0, 2.0, 3.0;
  return y;
}

Vector exponential_sum(const std::vector<Complex>& poles, const std::vector<Complex>& weights,
                       Eigen::Index N) {
  Vector y = Vector::Zero(N);
  for (std::size_t i = 0; i < poles.size(); ++i) {
    Complex p(1.0);
    for (Eigen::Index k = 0; k < N; ++k) {
      y[k] += (weights[i] * p).real();
      p *= poles[i];
    }
  }
  return y;
}

Instance random_instance(std::uint64_t seed, Eigen::Index N, int n, int m) {
  std::mt19937 g(static_cast<std::uint32_t>(seed * 7919u + 17u));
  std::vector<Complex> poles;
  std::vector<Complex> weights;
  auto add_real = [&] {
    poles.emplace_back(uniform(g, -0.95, 0.95), 0.0);
    weights.emplace_back(uniform(g, -3.0, 3.0), 0.0);
  };
  // An odd number of fixed poles must all be real; an even one starts with a pair.
  if (m % 2 == 1) {
    for (int i = 0; i < m; ++i) add_real();
  }
  if (n - static_cast<int>(poles.size()) >= 2 && (m == 2 || uniform(g, 0, 1) < 0.5)) {
    const Complex p = std::polar(uniform(g, 0.6, 0.97), uniform(g, 0.3, 2.6));
    const Complex w = std::polar(uniform(g, 1.0, 3.0), uniform(g, 0.0, 2 * std::numbers::pi));
    poles.insert(poles.end(), {p, std::conj(p)});
    weights.insert(weights.end(), {w, std::conj(w)});
  }
  while (static_cast<int>(poles.size()) < n) add_real();
  Instance inst;
  inst.n = n;
  inst.y = exponential_sum(poles, weights, N) + 0.4 * oracle::gaussian(seed + 101, N);
  // Fixed poles: the first m true poles, slightly perturbed (a pair stays a pair).
  for (int i = 0; i < m; ++i) {
    Complex p = poles[static_cast<std::size_t>(i)];
    if (p.imag() == 0.0) {
      p += 0.05 * uniform(g, -1.0, 1.0);
      inst.fixed.push_back(p);
    } else if (p.imag() > 0.0) {
      p *= std::polar(1.0 + 0.03 * uniform(g, -1.0, 1.0), 0.03 * uniform(g, -1.0, 1.0));
      inst.fixed.insert(inst.fixed.end(), {p, std::conj(p)});
      ++i;
    }
  }
  inst.name = "seed" + std::to_string(seed) + "_N" + std::to_string(N) + "_n" + std::to_string(n) +
              "_m" + std::to_string(m);
  return inst;
}

std::vector<Instance> oracle_instances() {
  struct Shape {
    Eigen::Index N;
    int n, m;
  };
  const std::vector<Shape> shapes{
      {5, 1, 0}, {7, 1, 0}, {9, 1, 0},  {12, 1, 0}, {6, 2, 1}, {8, 2, 1},  {10, 2, 1},
      {12, 2, 1}, {8, 3, 2}, {10, 3, 2}, {12, 3, 2}, {5, 2, 0}, {6, 2, 0}, {7, 2, 0},
      {8, 2, 0}, {6, 2, 0}, {7, 2, 0},  {7, 3, 1}, {8, 3, 1}};
  std::vector<Instance> out;
  Instance mot;
  mot.name = "motivational_n2_fixed";
  mot.y = motivational();
  mot.n = 2;
  mot.fixed = {Complex(-0.9557, 0.0)};
  out.push_back(mot);
  std::uint64_t seed = 1;
  for (const auto& s : shapes) out.push_back(random_instance(seed++, s.N, s.n, s.m));
  return out;
}

std::vector<Instance> monotonicity_instances() {
  std::vector<Instance> out;
  for (std::uint64_t k = 0; k < 50; ++k) {
    out.push_back(random_instance(1000 + k, 5 + static_cast<Eigen::Index>(k % 3), 2, 1));
  }
  return out;
}

}  // namespace cases
