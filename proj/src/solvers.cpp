#include "pottssos/solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace pottssos {

namespace {

void check_weights(double theta, double r, int k) {
  if (!(theta > 0.0) || !(r > 0.0) || !std::isfinite(theta) || !std::isfinite(r))
    throw std::invalid_argument("theta and r must be finite and > 0");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
}

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

// Damped Newton. Returns the root when the residual drops below tolerance,
// then polishes with full steps while the residual keeps shrinking.
std::optional<std::pair<Eigen::VectorXd, double>> damped_newton(Eigen::VectorXd x, const ResidualFn& residual,
                                                                const JacobianFn& jacobian,
                                                                const NewtonOptions& opts) {
  Eigen::VectorXd g = residual(x);
  double norm = max_abs(g);
  for (int it = 0; it < opts.max_iterations && norm > opts.residual_tol; ++it) {
    const Eigen::VectorXd step = jacobian(x).colPivHouseholderQr().solve(g);
    if (!step.allFinite()) return std::nullopt;
    double lambda = 1.0;
    bool improved = false;
    for (int halving = 0; halving <= opts.max_halvings; ++halving, lambda *= 0.5) {
      Eigen::VectorXd trial = x - lambda * step;
      if (!trial.allFinite() || max_abs(trial) > 745.0) continue;
      Eigen::VectorXd gt = residual(trial);
      const double nt = max_abs(gt);
      if (std::isfinite(nt) && nt < norm) {
        x = std::move(trial);
        g = std::move(gt);
        norm = nt;
        improved = true;
        break;
      }
    }
    if (!improved) return std::nullopt;
  }
  if (!(norm <= opts.residual_tol)) return std::nullopt;

  for (int polish = 0; polish < 4; ++polish) {
    const Eigen::VectorXd step = jacobian(x).colPivHouseholderQr().solve(g);
    if (!step.allFinite()) break;
    Eigen::VectorXd trial = x - step;
    Eigen::VectorXd gt = residual(trial);
    const double nt = max_abs(gt);
    if (!(nt < norm)) break;
    x = std::move(trial);
    g = std::move(gt);
    norm = nt;
  }
  return std::make_pair(x, norm);
}

std::vector<double> axis_values(int count, double radius) {
  if (count <= 1) return {0.0};
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = -radius + 2.0 * radius * i / (count - 1);
  return v;
}

// All points of the product grid axis^dim, in odometer order.
std::vector<Eigen::VectorXd> grid_seeds(int dim, int per_axis, double radius) {
  const auto axis = axis_values(per_axis, radius);
  std::vector<Eigen::VectorXd> seeds;
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    Eigen::VectorXd s(dim);
    for (int d = 0; d < dim; ++d) s[d] = axis[idx[static_cast<std::size_t>(d)]];
    seeds.push_back(std::move(s));
    int d = 0;
    while (d < dim && ++idx[static_cast<std::size_t>(d)] == axis.size()) idx[static_cast<std::size_t>(d++)] = 0;
    if (d == dim) break;
  }
  seeds.push_back(Eigen::VectorXd::Zero(dim));
  return seeds;
}

bool same_root(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double rel) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > rel * std::max(1.0, std::abs(a[i]))) return false;
  return true;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd jacobian_matrix(const std::vector<double>& h, int m, double theta, double r) {
  const auto jac = boundary_map_jacobian(h, m, theta, r);
  Eigen::MatrixXd out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out(i, j) = jac[static_cast<std::size_t>(i * m + j)];
  return out;
}

double log_f(double z, double theta, double r, int k) {
  return k * (std::log(2.0 * theta + r * z) - std::log(theta * theta + theta * z + r));
}

// d ln f / d ln z.
double log_slope(double z, double theta, double r, int k) {
  return k * z * (r / (2.0 * theta + r * z) - theta / (theta * theta + theta * z + r));
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Bisection on a sign function over [a, b] in log coordinates.
double bisect(double a, double b, int sa, const std::function<int(double)>& sign, double width) {
  // u = ln z, so an absolute width in u is a relative width in z.
  while (b - a > width) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const int sm = sign(mid);
    if (sm == 0) return mid;
    if (sm == sa) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Roots of `sign` over the sorted nodes, bisected between sign changes.
std::vector<double> roots_between(const std::vector<double>& nodes, const std::vector<int>& signs,
                                  const std::function<int(double)>& sign, double width) {
  std::vector<double> roots;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (signs[i] == 0) {
      roots.push_back(nodes[i]);
      continue;
    }
    if (i + 1 < nodes.size() && signs[i + 1] != 0 && signs[i + 1] != signs[i])
      roots.push_back(bisect(nodes[i], nodes[i + 1], signs[i], sign, width));
  }
  return roots;
}

}  // namespace

double f_eval(double z, double theta, double r, int k) {
  check_weights(theta, r, k);
  if (!(z >= 0.0)) throw std::invalid_argument("f is defined for z >= 0");
  return std::pow((2.0 * theta + r * z) / (theta * theta + theta * z + r), k);
}

double f_at_zero(double theta, double r, int k) { return f_eval(0.0, theta, r, k); }

double f_at_infinity(double theta, double r, int k) {
  check_weights(theta, r, k);
  return std::pow(r / theta, k);
}

bool f_decreasing(double theta, double r) { return r * (theta * theta + r) < 2.0 * theta * theta; }

TiResult ti_fixed_points(int m, double theta, double r, int k, int seeds_per_axis, const NewtonOptions& opts) {
  check_weights(theta, r, k);
  if (m < 1) throw std::invalid_argument("m must be >= 1");

  const ResidualFn residual = [&](const Eigen::VectorXd& x) {
    const auto h = to_std(x);
    return Eigen::VectorXd(x - k * to_eigen(boundary_map(h, m, theta, r)));
  };
  const JacobianFn jacobian = [&](const Eigen::VectorXd& x) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Identity(m, m) - k * jacobian_matrix(to_std(x), m, theta, r));
  };

  TiResult out;
  out.degenerate_theta = theta == 1.0;
  std::vector<Eigen::VectorXd> found;
  for (const auto& seed : grid_seeds(m, seeds_per_axis, opts.seed_radius)) {
    auto root = damped_newton(seed, residual, jacobian, opts);
    if (!root) {
      ++out.failed_starts;
      continue;
    }
    ++out.converged_starts;
    const bool dup = std::any_of(found.begin(), found.end(),
                                 [&](const Eigen::VectorXd& f) { return same_root(f, root->first, opts.dedup_rel); });
    if (dup) continue;
    found.push_back(root->first);
    out.solutions.push_back({to_std(root->first), root->second});
  }
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const SolvedField& a, const SolvedField& b) { return lex_less(a.h, b.h); });
  return out;
}

TwoCycleResult two_cycles(double theta, double r, int k, const CycleScanOptions& opts) {
  check_weights(theta, r, k);
  if (opts.grid_points < 2) throw std::invalid_argument("cycle scan needs at least two grid points");

  TwoCycleResult out;
  out.degenerate_theta = theta == 1.0;
  const double f0 = f_at_zero(theta, r, k);
  const double finf = f_at_infinity(theta, r, k);
  out.bracket_lo = std::min(f0, finf) * (1.0 - opts.margin);
  out.bracket_hi = std::max(f0, finf) * (1.0 + opts.margin);
  const double ulo = std::log(out.bracket_lo);
  const double uhi = std::log(out.bracket_hi);

  std::vector<double> grid(static_cast<std::size_t>(opts.grid_points));
  for (int i = 0; i < opts.grid_points; ++i)
    grid[static_cast<std::size_t>(i)] = ulo + (uhi - ulo) * i / (opts.grid_points - 1);

  // Fixed points of f: roots of ln f(e^u) - u.
  const auto fixed_sign = [&](double u) { return sign_of(log_f(std::exp(u), theta, r, k) - u); };
  std::vector<int> fsigns(grid.size());
  std::transform(grid.begin(), grid.end(), fsigns.begin(), fixed_sign);
  std::vector<double> fixed_u = roots_between(grid, fsigns, fixed_sign, opts.bisect_rel);
  std::sort(fixed_u.begin(), fixed_u.end());
  fixed_u.erase(std::unique(fixed_u.begin(), fixed_u.end(),
                            [&](double a, double b) { return std::abs(a - b) <= opts.dedup_rel * std::max(1.0, std::abs(a)); }),
                fixed_u.end());

  // Sign of (ln f(f(e^u)) - u) / prod (u - u*) with the fixed points u* divided out.
  const auto cycle_sign = [&](double u) {
    int s = sign_of(log_f(std::exp(log_f(std::exp(u), theta, r, k)), theta, r, k) - u);
    for (double fu : fixed_u) s *= sign_of(u - fu);
    return s;
  };
  // At a fixed point the quotient tends to (d ln f/d ln z)^2 - 1 times the other factors.
  const auto sign_at_fixed = [&](std::size_t i) {
    const double lam = log_slope(std::exp(fixed_u[i]), theta, r, k);
    if (std::abs(lam * lam - 1.0) <= opts.slope_tol) return 0;
    int s = sign_of(lam * lam - 1.0);
    for (std::size_t j = 0; j < fixed_u.size(); ++j)
      if (j != i) s *= sign_of(fixed_u[i] - fixed_u[j]);
    return s;
  };

  std::vector<std::pair<double, int>> nodes;
  for (double u : grid) {
    const bool near_fixed = std::any_of(fixed_u.begin(), fixed_u.end(),
                                        [&](double fu) { return std::abs(u - fu) <= 1e-9 * std::max(1.0, std::abs(fu)); });
    if (!near_fixed) nodes.emplace_back(u, cycle_sign(u));
  }
  for (std::size_t i = 0; i < fixed_u.size(); ++i) {
    const int s = sign_at_fixed(i);
    if (s != 0) nodes.emplace_back(fixed_u[i], s);
  }
  std::sort(nodes.begin(), nodes.end());
  std::vector<double> node_u;
  std::vector<int> node_s;
  for (const auto& [u, s] : nodes) {
    node_u.push_back(u);
    node_s.push_back(s);
  }
  const auto roots = roots_between(node_u, node_s, cycle_sign, opts.bisect_rel);

  for (double u : fixed_u) out.fixed_points.push_back(std::exp(u));
  std::vector<double> points;
  for (double u : roots) {
    const double z = std::exp(u);
    const double fz = f_eval(z, theta, r, k);
    if (std::abs(fz - z) <= opts.tie_rel * std::max(1.0, z)) {
      out.fixed_points.push_back(z);
    } else {
      points.push_back(z);
    }
  }
  std::sort(out.fixed_points.begin(), out.fixed_points.end());
  out.fixed_points.erase(std::unique(out.fixed_points.begin(), out.fixed_points.end(),
                                     [&](double a, double b) { return std::abs(a - b) <= opts.dedup_rel * std::max(1.0, a); }),
                         out.fixed_points.end());

  // Pair every cycle point with the scanned root nearest to its image.
  for (double z : points) {
    const double fz = f_eval(z, theta, r, k);
    double partner = fz;
    double best = 1e-6 * std::max(1.0, fz);
    for (double q : points) {
      if (std::abs(q - fz) <= best) {
        best = std::abs(q - fz);
        partner = q;
      }
    }
    TwoCycle c{std::min(z, partner), std::max(z, partner)};
    const bool dup = std::any_of(out.cycles.begin(), out.cycles.end(), [&](const TwoCycle& o) {
      return std::abs(o.z - c.z) <= opts.dedup_rel * std::max(1.0, c.z) &&
             std::abs(o.w - c.w) <= opts.dedup_rel * std::max(1.0, c.w);
    });
    if (!dup) out.cycles.push_back(c);
  }
  std::sort(out.cycles.begin(), out.cycles.end(), [](const TwoCycle& a, const TwoCycle& b) { return a.z < b.z; });
  return out;
}

double bipartite_residual(const FieldPair& p, double theta, double r, int k) {
  const auto fl = boundary_map(p.l, 2, theta, r);
  const auto fh = boundary_map(p.h, 2, theta, r);
  double res = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    res = std::max(res, std::abs(p.h[i] - k * fl[i]));
    res = std::max(res, std::abs(p.l[i] - k * fh[i]));
  }
  return res;
}

BipartiteResult bipartite_solve(double theta, double r, int k, int seeds_per_axis, const NewtonOptions& opts) {
  check_weights(theta, r, k);
  constexpr int m = 2;

  const ResidualFn residual = [&](const Eigen::VectorXd& x) {
    const std::vector<double> h{x[0], x[1]};
    const std::vector<double> l{x[2], x[3]};
    const auto fh = boundary_map(h, m, theta, r);
    const auto fl = boundary_map(l, m, theta, r);
    Eigen::VectorXd g(4);
    g << x[0] - k * fl[0], x[1] - k * fl[1], x[2] - k * fh[0], x[3] - k * fh[1];
    return g;
  };
  const JacobianFn jacobian = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(4, 4);
    jac.block(0, 2, 2, 2) = -k * jacobian_matrix({x[2], x[3]}, m, theta, r);
    jac.block(2, 0, 2, 2) = -k * jacobian_matrix({x[0], x[1]}, m, theta, r);
    return jac;
  };

  auto seeds = grid_seeds(4, seeds_per_axis, opts.seed_radius);
  const auto lift = [](double h0, double h1, double l0, double l1) {
    Eigen::VectorXd s(4);
    s << h0, h1, l0, l1;
    return s;
  };
  const auto cycles = two_cycles(theta, r, k);
  for (double z : cycles.fixed_points) seeds.push_back(lift(0.0, std::log(z), 0.0, std::log(z)));
  for (const auto& c : cycles.cycles) {
    seeds.push_back(lift(0.0, std::log(c.z), 0.0, std::log(c.w)));
    seeds.push_back(lift(0.0, std::log(c.w), 0.0, std::log(c.z)));
  }
  for (const auto& ti : ti_fixed_points(m, theta, r, k, 9, opts).solutions)
    seeds.push_back(lift(ti.h[0], ti.h[1], ti.h[0], ti.h[1]));

  BipartiteResult out;
  out.degenerate_theta = theta == 1.0;
  std::vector<Eigen::VectorXd> found;
  for (const auto& seed : seeds) {
    auto root = damped_newton(seed, residual, jacobian, opts);
    if (!root) {
      ++out.failed_starts;
      continue;
    }
    ++out.converged_starts;
    const auto& x = root->first;
    if (std::any_of(found.begin(), found.end(), [&](const Eigen::VectorXd& f) { return same_root(f, x, opts.dedup_rel); }))
      continue;
    found.push_back(x);
    BipartiteSolution sol;
    sol.fields = {{x[0], x[1]}, {x[2], x[3]}};
    sol.residual = root->second;
    sol.translation_invariant = same_root(x.head(2), x.tail(2), 1e-8);
    out.solutions.push_back(std::move(sol));
  }
  std::sort(out.solutions.begin(), out.solutions.end(), [](const BipartiteSolution& a, const BipartiteSolution& b) {
    if (a.fields.h != b.fields.h) return lex_less(a.fields.h, b.fields.h);
    return lex_less(a.fields.l, b.fields.l);
  });
  return out;
}

InjectivityReport injectivity_probe(double theta, double r, int sample_count, std::uint64_t rng_seed) {
  check_weights(theta, r, 1);
  if (sample_count < 0) throw std::invalid_argument("sample_count must be >= 0");

  InjectivityReport out;
  out.degenerate_theta = theta == 1.0;
  out.min_separation_ratio = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  for (int s = 0; s < sample_count; ++s) {
    const ReducedField h{coord(rng), coord(rng)};
    const ReducedField l{coord(rng), coord(rng)};
    const double dist = std::max(std::abs(h[0] - l[0]), std::abs(h[1] - l[1]));
    if (dist <= 1e-6) continue;
    ++out.samples;
    const auto fh = boundary_map(h, 2, theta, r);
    const auto fl = boundary_map(l, 2, theta, r);
    const double gap = std::max(std::abs(fh[0] - fl[0]), std::abs(fh[1] - fl[1]));
    out.min_separation_ratio = std::min(out.min_separation_ratio, gap / dist);
    if (gap < 1e-12 && !out.witness) {
      out.injective_on_samples = false;
      out.witness = std::make_pair(h, l);
    }
  }
  if (out.samples == 0) out.min_separation_ratio = 0.0;
  return out;
}

}  // namespace pottssos
