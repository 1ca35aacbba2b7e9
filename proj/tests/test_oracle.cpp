#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <numeric>
#include <random>

#include "pottssos/oracle.hpp"

using namespace pottssos;

namespace {

std::vector<std::vector<double>> zero_boundary(const FiniteTree& tree, int m) {
  return std::vector<std::vector<double>>(tree.level_size(tree.depth()), std::vector<double>(m + 1, 0.0));
}

double total(const MeasureTable& t) { return std::accumulate(t.probabilities.begin(), t.probabilities.end(), 0.0); }

struct Drawn {
  std::vector<ReducedField> prev;
  std::vector<ReducedField> last;
};

Drawn consistent_fields(const FiniteTree& tree, int m, double theta, double r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const int n = tree.depth();
  Drawn d;
  for (std::size_t i = 0; i < tree.level_size(n); ++i) {
    ReducedField h(m);
    for (double& x : h) x = u(rng);
    d.last.push_back(h);
  }
  const auto fa = propagate(tree, d.last, m, theta, r);
  for (auto v = tree.level_begin(n - 1); v < tree.level_end(n - 1); ++v) d.prev.push_back(fa.at(v));
  return d;
}

}  // namespace

TEST_CASE("hand-enumerated path of two edges") {
  const auto tree = build_tree(1, 1);
  REQUIRE(tree.size() == 3);

  SUBCASE("every edge costs the same: uniform") {
    const auto mu = finite_volume_measure(tree, make_params(1, 1, -1.0, -1.0, 1.0), zero_boundary(tree, 1));
    REQUIRE(mu.size() == 8);
    for (double p : mu.probabilities) CHECK(p == doctest::Approx(0.125).epsilon(1e-15));
  }
  SUBCASE("Potts penalty") {
    const auto mu = finite_volume_measure(tree, make_params(1, 1, -1.0, -2.0, 1.0), zero_boundary(tree, 1));
    const double e2 = std::exp(-2.0), e3 = std::exp(-3.0), e4 = std::exp(-4.0);
    const double z = 2 * (e4 + 2 * e3 + e2);
    CHECK(mu.probabilities[mu.index({{0, 0, 0}})] == doctest::Approx(e4 / z).epsilon(1e-14));
    CHECK(mu.probabilities[mu.index({{1, 1, 1}})] == doctest::Approx(e4 / z).epsilon(1e-14));
    CHECK(mu.probabilities[mu.index({{0, 1, 1}})] == doctest::Approx(e2 / z).epsilon(1e-14));
    CHECK(mu.probabilities[mu.index({{0, 0, 1}})] == doctest::Approx(e3 / z).epsilon(1e-14));
    CHECK(mu.log_partition == doctest::Approx(std::log(z)).epsilon(1e-14));
  }
  SUBCASE("boundary field tilts the leaves") {
    const std::vector<std::vector<double>> h{{std::log(3.0), 0.0}, {0.0, 0.0}};
    const auto mu = finite_volume_measure(tree, make_params(1, 1, -1.0, -1.0, 1.0), h);
    CHECK(mu.probabilities[mu.index({{0, 0, 0}})] == doctest::Approx(3.0 / 16.0));
    CHECK(mu.probabilities[mu.index({{0, 1, 0}})] == doctest::Approx(1.0 / 16.0));
  }
}

TEST_CASE("index and config are inverse") {
  const auto tree = build_tree(2, 1);
  const auto mu = finite_volume_measure(tree, params_from_weights(2, 2, 0.5, 0.25), zero_boundary(tree, 2));
  for (std::uint64_t c = 0; c < mu.size(); c += 7) CHECK(mu.index(mu.config(c)) == c);
}

TEST_CASE("infinite temperature is uniform") {
  const auto tree = build_tree(2, 2);
  const auto mu = finite_volume_measure(tree, params_from_weights(2, 1, 1.0, 1.0), zero_boundary(tree, 1));
  REQUIRE(mu.size() == 1024);
  for (double p : mu.probabilities) CHECK(p == doctest::Approx(1.0 / 1024).epsilon(1e-13));
}

TEST_CASE("probabilities are normalized, marginals keep mass") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto tree = build_tree(2, 2);
    auto b = zero_boundary(tree, 2);
    for (auto& h : b)
      for (double& x : h) x = u(rng);
    const auto mu = finite_volume_measure(tree, make_params(2, 2, u(rng), u(rng), 1.0), b);
    CHECK(std::abs(total(mu) - 1.0) <= 1e-12);
    for (int d : {0, 1}) {
      const auto marg = marginalize(mu, d);
      CHECK(marg.tree.depth() == d);
      CHECK(std::abs(total(marg) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("spin reflection") {
  // Reflecting s -> m - s leaves H unchanged; reflecting the boundary field
  // must reflect the measure.
  const int m = 2;
  const auto tree = build_tree(2, 1);
  std::vector<std::vector<double>> b{{0.3, -1.0, 0.2}, {1.1, 0.0, -0.4}, {0.0, 0.5, 0.0}};
  std::vector<std::vector<double>> rb;
  for (const auto& h : b) rb.push_back({h[2], h[1], h[0]});
  const auto p = make_params(2, m, -0.7, 0.4, 1.3);
  const auto mu = finite_volume_measure(tree, p, b);
  const auto rmu = finite_volume_measure(tree, p, rb);
  for (std::uint64_t c = 0; c < mu.size(); ++c) {
    auto s = mu.config(c);
    for (auto& x : s.spins) x = m - x;
    CHECK(rmu.probabilities[rmu.index(s)] == doctest::Approx(mu.probabilities[c]).epsilon(1e-12));
  }
}

TEST_CASE("compatibility holds when the recursion is enforced") {
  std::mt19937_64 rng(77);
  for (auto [theta, r] : {std::pair{0.5, 0.25}, std::pair{2.0, 3.0}, std::pair{0.3, 1.7}}) {
    for (int m : {1, 2}) {
      const auto tree = build_tree(2, 2);
      const auto d = consistent_fields(tree, m, theta, r, rng);
      const auto p = params_from_weights(2, m, theta, r);
      CHECK(compatibility_residual(p, d.prev, d.last, 2) <= 1e-12);

      auto broken = d.prev;
      broken[0][0] += 0.5;
      CHECK(compatibility_residual(p, broken, d.last, 2) >= 1e-4);
    }
  }
}

TEST_CASE("compatibility at depth three") {
  std::mt19937_64 rng(78);
  const auto tree = build_tree(1, 3);
  const auto d = consistent_fields(tree, 2, 0.5, 0.25, rng);
  CHECK(compatibility_residual(params_from_weights(1, 2, 0.5, 0.25), d.prev, d.last, 3) <= 1e-12);
}

TEST_CASE("infinite temperature is compatible with any zero field") {
  const auto tree = build_tree(2, 2);
  const std::vector<ReducedField> prev(tree.level_size(1), ReducedField{0.0});
  const std::vector<ReducedField> last(tree.level_size(2), ReducedField{0.0});
  CHECK(compatibility_residual(params_from_weights(2, 1, 1.0, 1.0), prev, last, 2) == 0.0);
}

TEST_CASE("oracle errors") {
  const auto tree = build_tree(3, 3);
  CHECK(configuration_count(2, 3) == 27);
  CHECK(configuration_count(1, 200) == UINT64_MAX);
  CHECK_THROWS_AS(finite_volume_measure(tree, params_from_weights(3, 2, 0.5, 0.5), zero_boundary(tree, 2)),
                  std::invalid_argument);
  const auto small = build_tree(1, 1);
  const auto p = params_from_weights(1, 1, 0.5, 0.5);
  CHECK_THROWS_AS(finite_volume_measure(small, p, zero_boundary(small, 1), 4), std::invalid_argument);
  CHECK_THROWS_AS(finite_volume_measure(small, p, zero_boundary(small, 2)), std::invalid_argument);
  CHECK_THROWS_AS(finite_volume_measure(small, p, {}), std::invalid_argument);
  const std::vector<ReducedField> f(2, ReducedField{0.0});
  CHECK_THROWS_AS(compatibility_residual(p, f, f, 1), std::invalid_argument);
  CHECK_THROWS_AS(marginalize(finite_volume_measure(small, p, zero_boundary(small, 1)), 2), std::invalid_argument);
}
