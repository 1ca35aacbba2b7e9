#include "pottssos/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pottssos {

const ReducedField& FieldAssignment::at(std::int64_t v) const {
  const auto& f = fields.at(static_cast<std::size_t>(v));
  if (!f) throw std::out_of_range("no field at vertex " + std::to_string(v));
  return *f;
}

bool FieldAssignment::has(std::int64_t v) const {
  return v >= 0 && static_cast<std::size_t>(v) < fields.size() && fields[static_cast<std::size_t>(v)].has_value();
}

namespace {

void check_inputs(std::span<const double> h, int m, double theta, double r) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (!(theta > 0.0) || !(r > 0.0) || !std::isfinite(theta) || !std::isfinite(r))
    throw std::invalid_argument("theta and r must be finite and > 0");
  if (h.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("reduced field has " + std::to_string(h.size()) + " components, expected " +
                                std::to_string(m));
  for (double x : h)
    if (!std::isfinite(x)) throw std::invalid_argument("reduced field component is not finite");
}

// log sum_{j=0}^{m} a(i,j) e^{h_j} with h_m = 0; also returns the per-term
// softmax weights when `weights` is non-null.
double log_row_sum(int i, std::span<const double> h, int m, double lt, double lr, double* weights) {
  std::vector<double> t(static_cast<std::size_t>(m + 1));
  double mx = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= m; ++j) {
    t[j] = log_transfer_weight(i, j, lt, lr) + (j < m ? h[static_cast<std::size_t>(j)] : 0.0);
    mx = std::max(mx, t[j]);
  }
  double s = 0.0;
  for (int j = 0; j <= m; ++j) s += std::exp(t[j] - mx);
  const double lse = mx + std::log(s);
  if (weights)
    for (int j = 0; j <= m; ++j) weights[j] = std::exp(t[j] - lse);
  return lse;
}

}  // namespace

ReducedField boundary_map(std::span<const double> h, int m, double theta, double r) {
  check_inputs(h, m, theta, r);
  const double lt = std::log(theta);
  const double lr = std::log(r);
  const double denom = log_row_sum(m, h, m, lt, lr, nullptr);
  ReducedField out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = log_row_sum(i, h, m, lt, lr, nullptr) - denom;
  return out;
}

std::vector<double> boundary_map_jacobian(std::span<const double> h, int m, double theta, double r) {
  check_inputs(h, m, theta, r);
  const double lt = std::log(theta);
  const double lr = std::log(r);
  const auto mm = static_cast<std::size_t>(m);
  std::vector<double> denom_w(mm + 1), row_w(mm + 1), jac(mm * mm);
  log_row_sum(m, h, m, lt, lr, denom_w.data());
  for (int i = 0; i < m; ++i) {
    log_row_sum(i, h, m, lt, lr, row_w.data());
    for (std::size_t j = 0; j < mm; ++j) jac[static_cast<std::size_t>(i) * mm + j] = row_w[j] - denom_w[j];
  }
  return jac;
}

ReducedField boundary_map_m2(std::span<const double> h, double theta, double r) {
  check_inputs(h, 2, theta, r);
  const double e0 = std::exp(h[0]);
  const double e1 = std::exp(h[1]);
  const double t2 = theta * theta;
  const double denom = t2 * e0 + theta * e1 + r;
  return {std::log((r * e0 + theta * e1 + t2) / denom), std::log((theta * e0 + r * e1 + theta) / denom)};
}

FieldAssignment propagate(const FiniteTree& tree, std::span<const ReducedField> boundary, int m, double theta,
                          double r) {
  const int n = tree.depth();
  if (n < 1) throw std::invalid_argument("propagate needs a tree of depth >= 1");
  if (boundary.size() != tree.level_size(n))
    throw std::invalid_argument("boundary has " + std::to_string(boundary.size()) + " fields, W_n has " +
                                std::to_string(tree.level_size(n)) + " vertices");

  FieldAssignment out;
  out.fields.resize(tree.size());
  const std::int64_t first = tree.level_begin(n);
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (boundary[i].size() != static_cast<std::size_t>(m))
      throw std::invalid_argument("boundary field " + std::to_string(i) + " is missing or has the wrong length");
    out.fields[static_cast<std::size_t>(first) + i] = boundary[i];
  }

  for (int j = n - 1; j >= 1; --j) {
    for (std::int64_t v = tree.level_begin(j); v < tree.level_end(j); ++v) {
      ReducedField acc(static_cast<std::size_t>(m), 0.0);
      for (std::int64_t c : tree.vertex(v).children) {
        const auto f = boundary_map(out.at(c), m, theta, r);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += f[i];
      }
      out.fields[static_cast<std::size_t>(v)] = std::move(acc);
    }
  }
  return out;
}

}  // namespace pottssos
