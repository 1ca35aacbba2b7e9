#include "pottssos/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pottssos/solvers.hpp"

namespace pottssos {

namespace {

void check_weights(double theta, double r) {
  if (!(theta > 0.0) || !(r > 0.0) || !std::isfinite(theta) || !std::isfinite(r))
    throw std::invalid_argument("theta and r must be finite and > 0");
}

}  // namespace

QuadraticCoeffs quadratic_coeffs(double theta, double r) {
  check_weights(theta, r);
  return quadratic_coeffs_t<double>(theta, r);
}

double discriminant(double theta, double r) {
  const auto q = quadratic_coeffs(theta, r);
  return q.b * q.b - 4.0 * q.a * q.c;
}

double discriminant_without_four(double theta, double r) {
  const auto q = quadratic_coeffs(theta, r);
  return q.b * q.b - q.a * q.c;
}

double slice_quartic(double theta) { return ((3.0 * theta + 10.0) * theta + 6.0) * theta * theta - 1.0; }

double slice_discriminant(double theta) {
  const double t4 = std::pow(theta, 4);
  const double s = theta * theta - 1.0;
  return -16.0 * t4 * t4 * s * s * slice_quartic(theta);
}

double slice_b(double theta) {
  const double t2 = theta * theta;
  return 4.0 * t2 * t2 * (t2 * t2 + 5.0 * t2 * theta + 4.0 * t2 - 1.0);
}

double theta_d() {
  // slice_quartic(0) = -1 and slice_quartic(1) = 18; it is increasing on [0, 1].
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (slice_quartic(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> quadratic_roots(const QuadraticCoeffs& q) {
  const double D = q.b * q.b - 4.0 * q.a * q.c;
  if (D < 0.0 || q.a == 0.0) return {};
  const double s = std::sqrt(D);
  const double p = -0.5 * (q.b + std::copysign(s, q.b));
  if (p == 0.0) return {0.0, 0.0};
  double x1 = p / q.a;
  double x2 = q.c / p;
  if (x1 > x2) std::swap(x1, x2);
  return {x1, x2};
}

std::string_view to_string(PhaseClass c) {
  switch (c) {
    case PhaseClass::two_periodic: return "two_periodic";
    case PhaseClass::one_periodic: return "one_periodic";
    case PhaseClass::none: return "none";
  }
  return "none";
}

bool discriminant_is_zero(const QuadraticCoeffs& q) {
  const double D = q.b * q.b - 4.0 * q.a * q.c;
  return std::abs(D) <= 1e-12 * std::max(q.b * q.b, std::abs(4.0 * q.a * q.c));
}

PhasePoint classify_point(double theta, double r, int k) {
  if (k != 2) throw std::invalid_argument("phase classification exists only for k = 2");
  const auto q = quadratic_coeffs(theta, r);
  PhasePoint p;
  p.theta = theta;
  p.r = r;
  p.D = q.b * q.b - 4.0 * q.a * q.c;
  p.b = q.b;
  if (q.b < 0.0) {
    if (discriminant_is_zero(q)) {
      p.classification = PhaseClass::one_periodic;
    } else if (p.D > 0.0) {
      p.classification = PhaseClass::two_periodic;
    }
  }
  return p;
}

double Range::at(int i) const {
  if (steps == 1) return min;
  if (i == steps - 1) return max;
  return min + (max - min) * i / (steps - 1);
}

Range parse_range(std::string_view text) {
  const auto bad = [&] { return std::invalid_argument("range must look like min:max:steps, got '" + std::string(text) + "'"); };
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) throw bad();
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw bad();
  Range out;
  try {
    std::size_t used = 0;
    const std::string a(text.substr(0, c1)), b(text.substr(c1 + 1, c2 - c1 - 1)), c(text.substr(c2 + 1));
    out.min = std::stod(a, &used);
    if (used != a.size()) throw bad();
    out.max = std::stod(b, &used);
    if (used != b.size()) throw bad();
    const long steps = std::stol(c, &used);
    if (used != c.size() || steps < 2 || steps > 100'000'000) throw bad();
    out.steps = static_cast<int>(steps);
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (!(out.min > 0.0) || !(out.max >= out.min) || !std::isfinite(out.max)) throw bad();
  return out;
}

std::vector<PhasePoint> phase_scan(const Range& theta, const Range& r) {
  if (theta.steps < 2 || r.steps < 2) throw std::invalid_argument("phase scan needs at least 2 steps per axis");
  std::vector<PhasePoint> out;
  out.reserve(static_cast<std::size_t>(theta.steps) * static_cast<std::size_t>(r.steps));
  for (int i = 0; i < theta.steps; ++i)
    for (int j = 0; j < r.steps; ++j) out.push_back(classify_point(theta.at(i), r.at(j)));
  return out;
}

std::vector<PhasePoint> phase_scan_theta_squared(const Range& theta) {
  if (theta.steps < 2) throw std::invalid_argument("phase scan needs at least 2 steps");
  std::vector<PhasePoint> out;
  out.reserve(static_cast<std::size_t>(theta.steps));
  for (int i = 0; i < theta.steps; ++i) {
    const double t = theta.at(i);
    out.push_back(classify_point(t, t * t));
  }
  return out;
}

CrossCheck cross_validate(const std::vector<PhasePoint>& points, std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("stride must be positive");
  CrossCheck out;
  for (std::size_t i = 0; i < points.size(); i += stride) {
    const auto& p = points[i];
    const bool predicted = p.classification == PhaseClass::two_periodic;
    const bool found = !two_cycles(p.theta, p.r, 2).cycles.empty();
    ++out.checked;
    if (predicted != found) out.mismatches.push_back(i);
  }
  return out;
}

}  // namespace pottssos
