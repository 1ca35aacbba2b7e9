#include "pottssos/core.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pottssos {

double ModelParams::log_theta() const { return std::log(theta); }
double ModelParams::log_r() const { return std::log(r); }

namespace {

void check_orders(int k, int m) {
  if (k < 1) throw std::invalid_argument("branching order k must be >= 1, got " + std::to_string(k));
  if (m < 1) throw std::invalid_argument("maximal spin m must be >= 1, got " + std::to_string(m));
}

}  // namespace

ModelParams make_params(int k, int m, double J, double J_p, double beta) {
  check_orders(k, m);
  if (!std::isfinite(J) || !std::isfinite(J_p) || !std::isfinite(beta))
    throw std::invalid_argument("couplings and beta must be finite");
  if (beta <= 0.0) throw std::invalid_argument("inverse temperature beta must be > 0");
  if (J == 0.0 || J_p == 0.0)
    throw std::invalid_argument("couplings J and J_p must be nonzero (use params_from_weights for theta = 1)");

  ModelParams p;
  p.k = k;
  p.m = m;
  p.J = J;
  p.J_p = J_p;
  p.beta = beta;
  p.theta = std::exp(J * beta);
  p.r = std::exp(J_p * beta);
  if (!std::isfinite(p.theta) || !std::isfinite(p.r) || p.theta <= 0.0 || p.r <= 0.0)
    throw std::invalid_argument("exp(J*beta) or exp(J_p*beta) is not representable");
  return p;
}

ModelParams params_from_weights(int k, int m, double theta, double r) {
  check_orders(k, m);
  if (!std::isfinite(theta) || !std::isfinite(r) || theta <= 0.0 || r <= 0.0)
    throw std::invalid_argument("theta and r must be finite and > 0");
  ModelParams p;
  p.k = k;
  p.m = m;
  p.beta = 1.0;
  p.J = std::log(theta);
  p.J_p = std::log(r);
  p.theta = theta;
  p.r = r;
  return p;
}

FiniteTree::FiniteTree(int k, int depth, std::vector<Vertex> vertices,
                       std::vector<std::int64_t> level_offsets)
    : k_(k), depth_(depth), vertices_(std::move(vertices)), level_offsets_(std::move(level_offsets)) {}

std::int64_t FiniteTree::level_begin(int j) const {
  if (j < 0 || j > depth_ + 1) throw std::out_of_range("level " + std::to_string(j) + " outside tree");
  return level_offsets_[static_cast<std::size_t>(j)];
}

std::size_t FiniteTree::level_size(int j) const {
  return static_cast<std::size_t>(level_end(j) - level_begin(j));
}

std::size_t FiniteTree::ball_size(int j) const { return static_cast<std::size_t>(level_end(j)); }

std::vector<std::pair<std::int64_t, std::int64_t>> FiniteTree::edges() const {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  out.reserve(vertices_.empty() ? 0 : vertices_.size() - 1);
  for (std::size_t v = 1; v < vertices_.size(); ++v)
    out.emplace_back(vertices_[v].parent, static_cast<std::int64_t>(v));
  return out;
}

std::uint64_t ball_vertex_count(int k, int depth) {
  if (k < 1) throw std::invalid_argument("branching order k must be >= 1");
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  // |W_0| = 1, |W_1| = k + 1, |W_{j+1}| = k |W_j|; saturate instead of overflowing.
  constexpr std::uint64_t kSat = std::uint64_t{1} << 62;
  std::uint64_t total = 1;
  std::uint64_t level = k + 1;
  for (int j = 1; j <= depth; ++j) {
    total += level;
    if (total >= kSat) return kSat;
    level = level > kSat / static_cast<std::uint64_t>(k) ? kSat : level * static_cast<std::uint64_t>(k);
  }
  return total;
}

FiniteTree build_tree(int k, int depth, std::uint64_t vertex_cap) {
  const std::uint64_t count = ball_vertex_count(k, depth);
  if (count > vertex_cap)
    throw std::invalid_argument("tree with k=" + std::to_string(k) + ", n=" + std::to_string(depth) +
                                " has " + std::to_string(count) + " vertices, above the cap of " +
                                std::to_string(vertex_cap));

  std::vector<Vertex> vertices(static_cast<std::size_t>(count));
  std::vector<std::int64_t> offsets{0, 1};
  std::int64_t next = 1;
  for (int j = 0; j < depth; ++j) {
    for (std::int64_t v = offsets[j]; v < offsets[j + 1]; ++v) {
      const int branching = (j == 0) ? k + 1 : k;
      auto& parent = vertices[static_cast<std::size_t>(v)];
      parent.children.reserve(static_cast<std::size_t>(branching));
      for (int c = 0; c < branching; ++c) {
        auto& child = vertices[static_cast<std::size_t>(next)];
        child.level = j + 1;
        child.parent = v;
        parent.children.push_back(next);
        ++next;
      }
    }
    offsets.push_back(next);
  }
  return FiniteTree(k, depth, std::move(vertices), std::move(offsets));
}

void check_config(const FiniteTree& tree, const FiniteConfig& config, int m) {
  if (config.spins.size() != tree.size())
    throw std::invalid_argument("configuration has " + std::to_string(config.spins.size()) +
                                " spins for a tree of " + std::to_string(tree.size()) + " vertices");
  for (Spin s : config.spins)
    if (s < 0 || s > m) throw std::invalid_argument("spin " + std::to_string(s) + " outside {0,...,m}");
}

double energy(const FiniteTree& tree, const FiniteConfig& config, double J, double J_p) {
  if (config.spins.size() != tree.size())
    throw std::invalid_argument("configuration does not cover the tree");
  long sos = 0;
  long potts = 0;
  for (std::size_t v = 1; v < tree.size(); ++v) {
    const Spin a = config.spins[v];
    const Spin b = config.spins[static_cast<std::size_t>(tree.vertex(static_cast<std::int64_t>(v)).parent)];
    sos += std::abs(a - b);
    potts += (a == b) ? 1 : 0;
  }
  return -J * static_cast<double>(sos) - J_p * static_cast<double>(potts);
}

}  // namespace pottssos
