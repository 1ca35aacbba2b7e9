#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "pottssos/core.hpp"

using namespace pottssos;

TEST_CASE("make_params computes the Boltzmann weights") {
  const auto p = make_params(2, 2, -0.693147, -1.386294, 1.0);
  CHECK(p.theta == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(p.r == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(p.theta == std::exp(-0.693147));

  const auto hot = params_from_weights(2, 2, 1.0, 1.0);
  CHECK(hot.theta == 1.0);
  CHECK(hot.r == 1.0);
  CHECK(hot.degenerate());
  CHECK(hot.J == 0.0);
}

TEST_CASE("make_params rejects invalid input") {
  CHECK_THROWS_AS(make_params(2, 2, 1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(2, 2, 1.0, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(2, 2, 0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(2, 2, 1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(0, 2, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(2, 0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(2, 2, std::numeric_limits<double>::quiet_NaN(), 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(2, 2, 1000.0, 1.0, 1.0), std::invalid_argument);  // exp overflow
  CHECK_THROWS_AS(params_from_weights(2, 2, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(params_from_weights(2, 2, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("build_tree level sizes") {
  SUBCASE("k=2, n=2") {
    const auto t = build_tree(2, 2);
    CHECK(t.level_size(0) == 1);
    CHECK(t.level_size(1) == 3);
    CHECK(t.level_size(2) == 6);
    CHECK(t.size() == 10);
  }
  SUBCASE("k=1, n=3") {
    const auto t = build_tree(1, 3);
    for (int j = 1; j <= 3; ++j) CHECK(t.level_size(j) == 2);
    CHECK(t.size() == 7);
  }
  SUBCASE("k=3, n=1") {
    const auto t = build_tree(3, 1);
    CHECK(t.size() == 5);
    CHECK(t.vertex(0).parity() == 0);
    for (auto v = t.level_begin(1); v < t.level_end(1); ++v) CHECK(t.vertex(v).parity() == 1);
  }
}

TEST_CASE("build_tree structure matches the closed-form counts") {
  for (int k = 1; k <= 4; ++k) {
    for (int n = 0; n <= 5; ++n) {
      const auto t = build_tree(k, n);
      const std::uint64_t expected =
          k == 1 ? 1 + 2 * static_cast<std::uint64_t>(n)
                 : 1 + (k + 1) * (static_cast<std::uint64_t>(std::pow(k, n)) - 1) / (k - 1);
      CHECK(t.size() == expected);
      CHECK(ball_vertex_count(k, n) == expected);
      CHECK(t.vertex(0).children.size() == static_cast<std::size_t>(n > 0 ? k + 1 : 0));
      for (int j = 1; j < n; ++j) CHECK(t.level_size(j + 1) == static_cast<std::size_t>(k) * t.level_size(j));
      for (std::size_t v = 1; v < t.size(); ++v) {
        const auto& x = t.vertex(static_cast<std::int64_t>(v));
        CHECK(t.vertex(x.parent).level == x.level - 1);
        CHECK(x.children.size() == static_cast<std::size_t>(x.level < n ? k : 0));
        CHECK(x.parity() == x.level % 2);
      }
    }
  }
}

TEST_CASE("build_tree rejects bad sizes") {
  CHECK_THROWS_AS(build_tree(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_tree(2, -1), std::invalid_argument);
  CHECK_THROWS_AS(build_tree(3, 30), std::invalid_argument);
  CHECK_THROWS_AS(build_tree(2, 4, 40), std::invalid_argument);
}

TEST_CASE("energy examples") {
  SUBCASE("single edge") {
    Vertex root;
    root.children = {1};
    Vertex leaf;
    leaf.level = 1;
    leaf.parent = 0;
    const FiniteTree edge(1, 1, {root, leaf}, {0, 1, 2});
    CHECK(energy(edge, {{0, 0}}, 1.5, 0.7) == doctest::Approx(-0.7));
    CHECK(energy(edge, {{0, 2}}, 1.5, 0.7) == doctest::Approx(-2 * 1.5));
  }
  SUBCASE("k=1 path with leaves 0 and 2 around a root of 1") {
    const auto t = build_tree(1, 1);
    CHECK(energy(t, {{1, 0, 2}}, 1.25, 3.0) == doctest::Approx(-2 * 1.25));
  }
  CHECK_THROWS_AS(energy(build_tree(1, 1), {{0, 0}}, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(check_config(build_tree(1, 1), {{0, 3, 0}}, 2), std::invalid_argument);
}

TEST_CASE("energy is invariant under spin reflection and subtree swaps") {
  std::mt19937_64 rng(7);
  const auto t = build_tree(2, 3);
  const int m = 3;
  std::uniform_int_distribution<int> spin(0, m);
  std::uniform_real_distribution<double> coupling(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteConfig c;
    c.spins.resize(t.size());
    for (auto& s : c.spins) s = spin(rng);
    const double J = coupling(rng), Jp = coupling(rng);
    const double e = energy(t, c, J, Jp);

    FiniteConfig reflected = c;
    for (auto& s : reflected.spins) s = m - s;
    CHECK(energy(t, reflected, J, Jp) == doctest::Approx(e));

    // Swap the subtrees hanging from the first two root children (an automorphism).
    FiniteConfig swapped = c;
    std::vector<std::int64_t> a{t.vertex(0).children[0]}, b{t.vertex(0).children[1]};
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::swap(swapped.spins[static_cast<std::size_t>(a[i])], swapped.spins[static_cast<std::size_t>(b[i])]);
      for (auto ch : t.vertex(a[i]).children) a.push_back(ch);
      for (auto ch : t.vertex(b[i]).children) b.push_back(ch);
    }
    CHECK(energy(t, swapped, J, Jp) == doctest::Approx(e));
  }
}
