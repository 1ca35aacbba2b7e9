#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pottssos/recursion.hpp"

namespace pottssos {

/// Fields on the even (h) and odd (l) cosets of the even-word subgroup.
struct FieldPair {
  ReducedField h;
  ReducedField l;
};

/// An unordered period-2 orbit {z, w} of f with z < w, in exponential
/// coordinates z = e^{h_1}, w = e^{l_1}.
struct TwoCycle {
  double z = 0.0;
  double w = 0.0;
};

/// Tolerances and seeding shared by the Newton-based solvers.
struct NewtonOptions {
  double residual_tol = 1e-10;   // max-norm residual required to accept a root
  int max_iterations = 200;
  int max_halvings = 40;         // step halvings per Newton step
  double seed_radius = 8.0;      // seeds span [-seed_radius, seed_radius] per log coordinate
  double dedup_rel = 1e-9;       // relative distance below which two roots are merged
};

/// f(z) = ((2 theta + r z) / (theta^2 + theta z + r))^k, the second component
/// of k F on the manifold h_0 = 0 written in z = e^{h_1}.
double f_eval(double z, double theta, double r, int k);

/// f(0) and lim_{z -> inf} f(z); the image of f lies between them.
double f_at_zero(double theta, double r, int k);
double f_at_infinity(double theta, double r, int k);

/// True when f is strictly decreasing on (0, inf), i.e. r (theta^2 + r) < 2 theta^2.
bool f_decreasing(double theta, double r);

struct SolvedField {
  ReducedField h;
  double residual = 0.0;
};

struct TiResult {
  std::vector<SolvedField> solutions;  // sorted lexicographically by h
  int converged_starts = 0;
  int failed_starts = 0;
  bool degenerate_theta = false;
};

/// Solves h = k F(h; m, theta, r) by damped Newton from a grid of
/// seeds_per_axis^m starts plus the zero field. Starts that fail are counted,
/// not fatal.
TiResult ti_fixed_points(int m, double theta, double r, int k, int seeds_per_axis = 9,
                         const NewtonOptions& opts = {});

struct TwoCycleResult {
  std::vector<TwoCycle> cycles;        // sorted by z
  std::vector<double> fixed_points;    // roots of f(z) = z met during the scan, sorted
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool degenerate_theta = false;
};

/// Options for the period-2 scan.
struct CycleScanOptions {
  int grid_points = 2048;
  double margin = 0.01;        // relative widening of [min(f(0), f(inf)), max(...)]
  double bisect_rel = 1e-12;   // bisection stops at this relative bracket width
  double tie_rel = 1e-8;       // |f(z) - z| <= tie_rel * max(1, z) counts as a fixed point
  double dedup_rel = 1e-9;
  double slope_tol = 1e-6;     // |lambda^2 - 1| below this leaves the sign at a fixed point open
};

/// All period-2 orbits of f with z != f(z).
///
/// The sign of ln f(f(z)) - ln z is scanned on a log grid over the invariant
/// bracket. Fixed points of f are located first and divided out of the scan
/// function. Where f'(z*) is within slope_tol of -1 the sign at z* is left
/// open, so orbits closer to z* than rounding can resolve are not reported.
TwoCycleResult two_cycles(double theta, double r, int k, const CycleScanOptions& opts = {});

struct BipartiteSolution {
  FieldPair fields;
  double residual = 0.0;
  bool translation_invariant = false;
};

struct BipartiteResult {
  std::vector<BipartiteSolution> solutions;  // sorted lexicographically by (h, l)
  int converged_starts = 0;
  int failed_starts = 0;
  bool degenerate_theta = false;
};

/// Residual of h = k F(l), l = k F(h) in max norm (m = 2).
double bipartite_residual(const FieldPair& p, double theta, double r, int k);

/// Solves the m = 2 two-coset system by damped Newton in (h_0, h_1, l_0, l_1).
/// Seeds: a seeds_per_axis^4 grid, the zero field, and the lifts
/// (0, ln z) / (0, ln w) of every TI point and two-cycle of f, so the h_0 = l_0 = 0
/// branch is always represented.
BipartiteResult bipartite_solve(double theta, double r, int k, int seeds_per_axis = 5,
                                const NewtonOptions& opts = {});

struct InjectivityReport {
  bool injective_on_samples = true;
  std::optional<std::pair<ReducedField, ReducedField>> witness;
  /// Smallest ||F(h) - F(l)|| / ||h - l|| seen over the samples.
  double min_separation_ratio = 0.0;
  int samples = 0;
  bool degenerate_theta = false;
};

/// Draws pairs h != l uniformly from [-5, 5]^2 and looks for
/// ||F(h) - F(l)|| < 1e-12 with ||h - l|| > 1e-6 (m = 2, max norm).
InjectivityReport injectivity_probe(double theta, double r, int sample_count, std::uint64_t rng_seed);

}  // namespace pottssos
