#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace pottssos {

/// Coefficients of a z^2 + b z + c, the period-2 quadratic of f at k = 2.
template <class T>
struct Quadratic {
  T a;
  T b;
  T c;
};

using QuadraticCoeffs = Quadratic<double>;

/// The k = 2 quadratic whose roots are the two-cycle points of f, as
/// polynomials in (theta, r). Templated so the same expressions serve both
/// double and exact rational evaluation.
template <class T>
Quadratic<T> quadratic_coeffs_t(const T& t, const T& r) {
  const T t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t, t6 = t5 * t, t7 = t6 * t, t8 = t7 * t;
  const T r2 = r * r, r3 = r2 * r, r4 = r3 * r;
  Quadratic<T> q{T(0), T(0), T(0)};
  q.a = t6 + 2 * t4 * r + t2 * r2 + r4 + 2 * t * r3 + 2 * t3 * r2;
  q.b = 2 * t7 + 6 * t5 * r + 6 * t3 * r2 + 6 * t * r3 - 4 * t4 + t4 * r2 + 8 * t2 * r2 + 2 * t2 * r3 +
        8 * t4 * r + r4;
  q.c = 4 * t2 * r2 + 4 * t6 * r + r4 + 6 * t4 * r2 + 4 * t2 * r3 + t8 + 4 * t5 * r + 8 * t3 * r2 +
        4 * t * r3;
  return q;
}

QuadraticCoeffs quadratic_coeffs(double theta, double r);

/// D = b^2 - 4ac.
double discriminant(double theta, double r);

/// b^2 - ac, the discriminant without the factor 4. Kept only to show it
/// disagrees with the factorized r = theta^2 slice.
double discriminant_without_four(double theta, double r);

/// On r = theta^2: D = -16 theta^8 (theta^2 - 1)^2 (3 theta^4 + 10 theta^3 + 6 theta^2 - 1).
double slice_discriminant(double theta);
/// On r = theta^2: b = 4 theta^4 (theta^4 + 5 theta^3 + 4 theta^2 - 1).
double slice_b(double theta);
/// 3 theta^4 + 10 theta^3 + 6 theta^2 - 1, whose root in (0, 1) is theta_D.
double slice_quartic(double theta);

/// Root of slice_quartic in (0, 1) by bisection, to at least 1e-12.
double theta_d();

/// Real roots of the quadratic in ascending order, via the cancellation-free
/// q = -(b + sign(b) sqrt(D)) / 2 form. Empty when D < 0.
std::vector<double> quadratic_roots(const QuadraticCoeffs& q);

enum class PhaseClass { two_periodic, one_periodic, none };

std::string_view to_string(PhaseClass c);

struct PhasePoint {
  double theta = 0.0;
  double r = 0.0;
  double D = 0.0;
  double b = 0.0;
  PhaseClass classification = PhaseClass::none;
};

/// |D| <= 1e-12 * max(b^2, |4ac|) counts as D = 0.
bool discriminant_is_zero(const QuadraticCoeffs& q);

/// two_periodic when D > 0 and b < 0, one_periodic when D = 0 and b < 0,
/// none otherwise. Only k = 2 has a quadratic; other k throw.
PhasePoint classify_point(double theta, double r, int k = 2);

/// Inclusive range min:max with `steps` evenly spaced samples.
struct Range {
  double min = 0.0;
  double max = 0.0;
  int steps = 2;

  double at(int i) const;
};

/// Parses "min:max:steps".
Range parse_range(std::string_view text);

/// Row-major grid: theta varies slowest.
std::vector<PhasePoint> phase_scan(const Range& theta, const Range& r);

/// The r = theta^2 slice.
std::vector<PhasePoint> phase_scan_theta_squared(const Range& theta);

struct CrossCheck {
  std::size_t checked = 0;
  std::vector<std::size_t> mismatches;  // indices into the scanned points
};

/// For every stride-th point, compares "classified two_periodic" with
/// "two_cycles finds at least one cycle" (k = 2).
CrossCheck cross_validate(const std::vector<PhasePoint>& points, std::size_t stride = 1);

}  // namespace pottssos
