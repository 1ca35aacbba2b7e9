#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pottssos::exact {

/// Arbitrary-precision rational, always normalized (gcd 1, positive denominator).
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

/// Parses "3", "-7/4", "0.3", "2.5e-3" exactly. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Univariate polynomial with exact rational coefficients; coefficient i
/// multiplies z^i. Trailing zeros are stripped on construction.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coefficients);
  RationalPoly(std::initializer_list<Rational> coefficients)
      : RationalPoly(std::vector<Rational>(coefficients)) {}

  /// c * z^power
  static RationalPoly monomial(const Rational& c, int power);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coeff(int i) const;
  const Rational& leading() const;

  Rational eval(const Rational& z) const;
  double eval(double z) const;

  friend RationalPoly operator+(const RationalPoly& p, const RationalPoly& q);
  friend RationalPoly operator-(const RationalPoly& p, const RationalPoly& q);
  friend RationalPoly operator*(const RationalPoly& p, const RationalPoly& q);
  friend RationalPoly operator*(const Rational& c, const RationalPoly& p);
  friend bool operator==(const RationalPoly& p, const RationalPoly& q) { return p.coeffs_ == q.coeffs_; }

  std::string to_string(char var = 'z') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

RationalPoly add(const RationalPoly& p, const RationalPoly& q);
RationalPoly mul(const RationalPoly& p, const RationalPoly& q);
Rational eval(const RationalPoly& p, const Rational& z);

/// Polynomial long division: p = q * quotient + remainder with
/// deg(remainder) < deg(q). Throws std::domain_error when q is zero.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& p, const RationalPoly& q);

/// True when p and the coefficient list (constant term first) differ by one
/// nonzero scalar. Two zero polynomials are proportional.
bool proportional(const RationalPoly& p, std::span<const Rational> coefficients);

/// The pieces of the k = 2 two-cycle reduction at one rational (theta, r).
struct CycleQuotient {
  RationalPoly composed;      // numerator of f(f(z)) - z, degree 5
  RationalPoly fixed;         // numerator of f(z) - z, degree 3
  RationalPoly quotient;      // composed / fixed, degree 2
  RationalPoly remainder;     // zero
};

/// Builds the numerators of f(f(z)) - z and f(z) - z for k = 2 and divides
/// one by the other exactly. A nonzero remainder is an algebra error and
/// throws std::logic_error. theta and r must be positive.
CycleQuotient cycle_quotient(const Rational& theta, const Rational& r);

}  // namespace pottssos::exact
