#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pottssos/core.hpp"
#include "pottssos/recursion.hpp"

namespace pottssos {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Number of configurations (m + 1)^vertices, saturating at UINT64_MAX.
std::uint64_t configuration_count(int m, std::size_t vertices);

/// Exact finite-volume distribution over every configuration of a small tree.
///
/// Configuration index c encodes spin s_v as the v-th base-(m + 1) digit of c
/// (vertex 0 least significant). Because V_j is a prefix of the breadth-first
/// vertex order, the restriction of c to V_j is c mod (m + 1)^|V_j|.
struct MeasureTable {
  FiniteTree tree;
  int m = 1;
  double log_partition = 0.0;
  std::vector<double> probabilities;

  std::size_t size() const { return probabilities.size(); }
  FiniteConfig config(std::uint64_t index) const;
  std::uint64_t index(const FiniteConfig& config) const;
};

/// Lifts a reduced field to the full (m + 1)-vector by appending 0.
std::vector<double> lift_field(std::span<const double> reduced);

/// mu(s) proportional to exp(-beta H(s) + sum_{x in W_n} h_{s(x), x}).
/// `boundary` holds one (m + 1)-vector per vertex of W_n. Throws
/// std::invalid_argument when the configuration count exceeds `cap`.
MeasureTable finite_volume_measure(const FiniteTree& tree, const ModelParams& params,
                                   std::span<const std::vector<double>> boundary,
                                   std::uint64_t cap = kDefaultEnumerationCap);

/// Sums out every level deeper than `depth`.
MeasureTable marginalize(const MeasureTable& table, int depth);

/// max_s |sum_{w} mu_n(s v w) - mu_{n-1}(s)| for the measures driven by the
/// reduced fields on W_{n-1} and W_n (lifted with a trailing 0).
double compatibility_residual(const ModelParams& params, std::span<const ReducedField> fields_prev,
                              std::span<const ReducedField> fields_last, int n = 2,
                              std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace pottssos
