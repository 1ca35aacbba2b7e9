#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pottssos {

/// Spin value in {0, ..., m}.
using Spin = int;

/// Physical and reduced parameters of the Potts-SOS model.
///
/// theta = exp(J * beta) weighs the SOS term |s(x) - s(y)| and
/// r = exp(J_p * beta) the Potts term delta(s(x), s(y)). Instances are only
/// produced by make_params / params_from_weights, so theta and r are always
/// finite and positive.
struct ModelParams {
  int k = 2;
  int m = 2;
  double J = 0.0;
  double J_p = 0.0;
  double beta = 1.0;
  double theta = 1.0;
  double r = 1.0;

  double log_theta() const;
  double log_r() const;

  /// theta == 1 is the Potts limit where the boundary map stops being injective.
  bool degenerate() const { return theta == 1.0; }
};

/// Builds parameters from couplings. Rejects beta <= 0, zero couplings,
/// non-finite input and exponents that overflow.
ModelParams make_params(int k, int m, double J, double J_p, double beta);

/// Builds parameters directly from the Boltzmann weights. theta = 1 is
/// accepted here (zero SOS coupling). The couplings are recorded at beta = 1.
ModelParams params_from_weights(int k, int m, double theta, double r);

/// A vertex of a finite Cayley tree, stored in breadth-first order.
struct Vertex {
  int level = 0;
  std::int64_t parent = -1;  // -1 for the root
  std::vector<std::int64_t> children;

  int parity() const { return level % 2; }
};

/// The ball V_n of radius n around the root of the Cayley tree of order k.
///
/// Vertices are indexed breadth first, so every level W_j occupies a
/// contiguous index range and V_j is a prefix of the vertex array.
class FiniteTree {
 public:
  FiniteTree(int k, int depth, std::vector<Vertex> vertices,
             std::vector<std::int64_t> level_offsets);

  int k() const { return k_; }
  int depth() const { return depth_; }
  std::size_t size() const { return vertices_.size(); }
  const Vertex& vertex(std::int64_t v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  std::span<const Vertex> vertices() const { return vertices_; }

  /// First index of level j; level_begin(depth + 1) == size().
  std::int64_t level_begin(int j) const;
  std::int64_t level_end(int j) const { return level_begin(j + 1); }
  std::size_t level_size(int j) const;
  /// |V_j|, the number of vertices at distance <= j.
  std::size_t ball_size(int j) const;

  /// Every (parent, child) pair; these are the edges L_n.
  std::vector<std::pair<std::int64_t, std::int64_t>> edges() const;

 private:
  int k_;
  int depth_;
  std::vector<Vertex> vertices_;
  std::vector<std::int64_t> level_offsets_;
};

/// Vertex count of V_n without building the tree.
std::uint64_t ball_vertex_count(int k, int depth);

inline constexpr std::uint64_t kDefaultVertexCap = 50'000'000;

/// Builds V_n. Throws std::invalid_argument for k < 1, depth < 0 or a ball
/// larger than vertex_cap.
FiniteTree build_tree(int k, int depth, std::uint64_t vertex_cap = kDefaultVertexCap);

/// A spin assignment on every vertex of a FiniteTree, indexed like the tree.
struct FiniteConfig {
  std::vector<Spin> spins;
};

/// Validates that config covers the tree with spins in {0, ..., m}.
void check_config(const FiniteTree& tree, const FiniteConfig& config, int m);

/// H(s) = -J * sum |s(x) - s(y)| - J_p * sum delta(s(x), s(y)) over the edges of the tree.
double energy(const FiniteTree& tree, const FiniteConfig& config, double J, double J_p);

}  // namespace pottssos
