#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <random>

#include "pottssos/analysis.hpp"
#include "pottssos/exactpoly.hpp"
#include "pottssos/solvers.hpp"

using namespace pottssos;
using namespace pottssos::exact;

namespace {

// Composes f(f(z)) - z numerator from scratch: f = (A z + B)^2 / (C z + E)^2.
RationalPoly composed_numerator(const Rational& t, const Rational& r) {
  const RationalPoly num{2 * t, r};
  const RationalPoly den{t * t + r, t};
  const RationalPoly N = num * num, D = den * den;
  const RationalPoly inner_num = Rational(2) * t * D + r * N;
  const RationalPoly inner_den = (t * t + r) * D + t * N;
  const RationalPoly z{Rational(0), Rational(1)};
  return inner_num * inner_num - z * inner_den * inner_den;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const RationalPoly zm1{Rational(-1), Rational(1)};
  const RationalPoly zp1{Rational(1), Rational(1)};
  const RationalPoly z2m1{Rational(-1), Rational(0), Rational(1)};
  CHECK(mul(zp1, zm1) == z2m1);
  const auto [q, rem] = divmod(z2m1, zm1);
  CHECK(q == zp1);
  CHECK(rem.is_zero());
  CHECK(eval(RationalPoly{Rational(1), Rational(0), Rational(1)}, Rational(2)) == 5);
  CHECK(add(zp1, zm1) == RationalPoly{Rational(0), Rational(2)});
  CHECK((zp1 - zp1).is_zero());
  CHECK((zp1 - zp1).degree() == -1);
  CHECK_THROWS_AS(divmod(z2m1, RationalPoly{}), std::domain_error);
  CHECK(RationalPoly::monomial(Rational(3), 4).degree() == 4);
  CHECK(RationalPoly{Rational(1), Rational(0), Rational(0)}.degree() == 0);

  const auto [q2, r2] = divmod(RationalPoly{Rational(1), Rational(0), Rational(1)}, RationalPoly{Rational(0), Rational(2)});
  CHECK(q2 == RationalPoly{Rational(0), Rational(1, 2)});
  CHECK(r2 == RationalPoly{Rational(1)});
}

TEST_CASE("division identity on random polynomials") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-9, 9), deg(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> pc, qc;
    for (int i = 0, n = deg(rng) + 2; i < n; ++i) pc.emplace_back(coef(rng), 1 + std::abs(coef(rng)));
    for (int i = 0, n = deg(rng) % 3 + 1; i < n; ++i) qc.emplace_back(coef(rng));
    qc.emplace_back(1 + std::abs(coef(rng)));
    const RationalPoly p(pc), q(qc);
    const auto [quot, rem] = divmod(p, q);
    CHECK(quot * q + rem == p);
    CHECK(rem.degree() < q.degree());
  }
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-7/4") == Rational(-7, 4));
  CHECK(parse_rational("0.3") == Rational(3, 10));
  CHECK(parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(parse_rational("1e2") == 100);
  CHECK(to_string(Rational(-7, 4)) == "-7/4");
  CHECK(to_string(Rational(2)) == "2");
  for (const char* bad : {"", "x", "1/0", "1/", "0.3.4", "--1"}) CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
}

TEST_CASE("proportional") {
  const RationalPoly p{Rational(2), Rational(4)};
  const std::vector<Rational> same{Rational(1), Rational(2)};
  const std::vector<Rational> other{Rational(1), Rational(3)};
  const std::vector<Rational> longer{Rational(1), Rational(2), Rational(1)};
  CHECK(proportional(p, same));
  CHECK_FALSE(proportional(p, other));
  CHECK_FALSE(proportional(p, longer));
  CHECK(proportional(RationalPoly{}, std::vector<Rational>{Rational(0)}));
}

TEST_CASE("cycle quotient examples") {
  SUBCASE("theta = r = 1") {
    const auto cq = cycle_quotient(Rational(1), Rational(1));
    CHECK(cq.composed.degree() == 5);
    CHECK(cq.fixed.degree() == 3);
    CHECK(cq.quotient.degree() == 2);
    CHECK(cq.remainder.is_zero());
    const std::vector<Rational> expected{Rational(36), Rational(36), Rational(9)};
    CHECK(proportional(cq.quotient, expected));
  }
  SUBCASE("theta = 1/2, r = 1/4") {
    const Rational t(1, 2), r(1, 4);
    const auto cq = cycle_quotient(t, r);
    CHECK(cq.remainder.is_zero());
    CHECK(proportional(cq.composed, composed_numerator(t, r).coefficients()));
    const auto q = quadratic_coeffs_t<Rational>(t, r);
    const std::vector<Rational> abc{q.c, q.b, q.a};
    CHECK(proportional(cq.quotient, abc));
  }
}

TEST_CASE("cycle quotient at random rationals") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> den(1, 16);
  for (int trial = 0; trial < 25; ++trial) {
    const int qt = den(rng), qr = den(rng);
    const Rational t(std::uniform_int_distribution<int>(1, 4 * qt)(rng), qt);
    const Rational r(std::uniform_int_distribution<int>(1, 4 * qr)(rng), qr);
    const auto cq = cycle_quotient(t, r);
    CAPTURE(to_string(t));
    CAPTURE(to_string(r));
    CHECK(cq.remainder.is_zero());
    CHECK(cq.quotient * cq.fixed == cq.composed);
    CHECK(proportional(cq.composed, composed_numerator(t, r).coefficients()));
    const auto q = quadratic_coeffs_t<Rational>(t, r);
    const std::vector<Rational> abc{q.c, q.b, q.a};
    CHECK(proportional(cq.quotient, abc));
  }
}

TEST_CASE("quotient vanishes at numerically found cycle points") {
  for (auto [ts, rs] : {std::pair{"3/10", "9/100"}, std::pair{"1/5", "1/20"}, std::pair{"1/10", "1/50"}}) {
    const Rational t = parse_rational(ts), r = parse_rational(rs);
    const auto cq = cycle_quotient(t, r);
    const auto res = two_cycles(t.convert_to<double>(), r.convert_to<double>(), 2);
    REQUIRE_FALSE(res.cycles.empty());
    double scale = 0.0;
    for (const auto& c : cq.quotient.coefficients()) scale = std::max(scale, std::abs(c.convert_to<double>()));
    for (const auto& c : res.cycles)
      for (double z : {c.z, c.w}) CHECK(std::abs(cq.quotient.eval(z)) / (scale * std::max(1.0, z * z)) <= 1e-8);
  }
}

TEST_CASE("cycle quotient rejects non-positive parameters") {
  CHECK_THROWS(cycle_quotient(Rational(0), Rational(1)));
  CHECK_THROWS(cycle_quotient(Rational(1), Rational(-1)));
}
