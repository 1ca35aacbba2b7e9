#include "pottssos/exactpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pottssos::exact {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  return Integer(std::string(digits));
}

Integer pow10(long e) {
  Integer p = 1;
  for (long i = 0; i < e; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(s.substr(0, slash), text);
    const Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view es = s.substr(e + 1);
      bool eneg = false;
      if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
        eneg = es.front() == '-';
        es.remove_prefix(1);
      }
      const Integer ei = parse_integer(es, text);
      if (ei > 4000) throw std::invalid_argument("exponent too large in '" + std::string(text) + "'");
      exponent = eneg ? -ei.convert_to<long>() : ei.convert_to<long>();
      s = s.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
      digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
      frac_len = static_cast<long>(s.size() - dot - 1);
      if (digits.empty()) throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    } else {
      digits = std::string(s);
    }
    const Integer mantissa = parse_integer(digits, text);
    const long shift = exponent - frac_len;
    value = shift >= 0 ? Rational(mantissa * pow10(shift)) : Rational(mantissa, pow10(-shift));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

RationalPoly::RationalPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

RationalPoly RationalPoly::monomial(const Rational& c, int power) {
  if (power < 0) throw std::invalid_argument("negative monomial power");
  std::vector<Rational> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return RationalPoly(std::move(v));
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

const Rational& RationalPoly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Rational RationalPoly::eval(const Rational& z) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double RationalPoly::eval(double z) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->convert_to<double>();
  return acc;
}

RationalPoly operator+(const RationalPoly& p, const RationalPoly& q) {
  std::vector<Rational> out(std::max(p.coeffs_.size(), q.coeffs_.size()));
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) out[i] += p.coeffs_[i];
  for (std::size_t i = 0; i < q.coeffs_.size(); ++i) out[i] += q.coeffs_[i];
  return RationalPoly(std::move(out));
}

RationalPoly operator-(const RationalPoly& p, const RationalPoly& q) { return p + Rational(-1) * q; }

RationalPoly operator*(const RationalPoly& p, const RationalPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<Rational> out(p.coeffs_.size() + q.coeffs_.size() - 1);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += p.coeffs_[i] * q.coeffs_[j];
  return RationalPoly(std::move(out));
}

RationalPoly operator*(const Rational& c, const RationalPoly& p) {
  std::vector<Rational> out(p.coeffs_);
  for (auto& x : out) x *= c;
  return RationalPoly(std::move(out));
}

std::string RationalPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const Rational mag = c < 0 ? Rational(-c) : c;
    if (i == 0 || mag != 1) os << mag;
    if (i > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

RationalPoly add(const RationalPoly& p, const RationalPoly& q) { return p + q; }
RationalPoly mul(const RationalPoly& p, const RationalPoly& q) { return p * q; }
Rational eval(const RationalPoly& p, const Rational& z) { return p.eval(z); }

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& p, const RationalPoly& q) {
  if (q.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = p.coefficients();
  const int dq = q.degree();
  if (p.degree() < dq) return {RationalPoly{}, p};
  std::vector<Rational> quot(static_cast<std::size_t>(p.degree() - dq + 1));
  const Rational& lead = q.leading();
  for (int i = p.degree() - dq; i >= 0; --i) {
    const Rational c = rem[static_cast<std::size_t>(i + dq)] / lead;
    quot[static_cast<std::size_t>(i)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dq; ++j) rem[static_cast<std::size_t>(i + j)] -= c * q.coefficients()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dq));
  return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

bool proportional(const RationalPoly& p, std::span<const Rational> coefficients) {
  const RationalPoly q{std::vector<Rational>(coefficients.begin(), coefficients.end())};
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  if (p.degree() != q.degree()) return false;
  const Rational scale = p.leading() / q.leading();
  return p == scale * q;
}

CycleQuotient cycle_quotient(const Rational& theta, const Rational& r) {
  if (theta <= 0 || r <= 0) throw std::invalid_argument("theta and r must be positive");

  // f(z) = N(z) / D(z) with N = (2 theta + r z)^2 and D = (theta^2 + theta z + r)^2.
  const RationalPoly inner_num{2 * theta, r};
  const RationalPoly inner_den{theta * theta + r, theta};
  const RationalPoly N = inner_num * inner_num;
  const RationalPoly D = inner_den * inner_den;

  // f(f(z)) = (2 theta D + r N)^2 / ((theta^2 + r) D + theta N)^2 after clearing D.
  const RationalPoly outer_num = (2 * theta) * D + r * N;
  const RationalPoly outer_den = (theta * theta + r) * D + theta * N;
  const RationalPoly z = RationalPoly::monomial(1, 1);

  CycleQuotient out;
  out.composed = outer_num * outer_num - z * (outer_den * outer_den);
  out.fixed = N - z * D;
  auto [quot, rem] = divmod(out.composed, out.fixed);
  out.quotient = std::move(quot);
  out.remainder = std::move(rem);
  if (!out.remainder.is_zero())
    throw std::logic_error("f(z) - z does not divide f(f(z)) - z at theta=" + to_string(theta) +
                           ", r=" + to_string(r) + "; remainder " + out.remainder.to_string());
  return out;
}

}  // namespace pottssos::exact
