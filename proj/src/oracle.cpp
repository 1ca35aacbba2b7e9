#include "pottssos/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pottssos {

namespace {

// Fixed-shape pairwise summation so the partition function is bit-stable.
double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

void normalize_in_place(std::vector<double>& log_weights, double& log_partition) {
  const double mx = *std::max_element(log_weights.begin(), log_weights.end());
  for (double& w : log_weights) w = std::exp(w - mx);
  const double total = pairwise_sum(log_weights);
  for (double& w : log_weights) w /= total;
  log_partition = mx + std::log(total);
}

}  // namespace

std::uint64_t configuration_count(int m, std::size_t vertices) {
  const std::uint64_t base = static_cast<std::uint64_t>(m) + 1;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < vertices; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    count *= base;
  }
  return count;
}

FiniteConfig MeasureTable::config(std::uint64_t index) const {
  FiniteConfig c;
  c.spins.resize(tree.size());
  const auto base = static_cast<std::uint64_t>(m) + 1;
  for (auto& s : c.spins) {
    s = static_cast<Spin>(index % base);
    index /= base;
  }
  return c;
}

std::uint64_t MeasureTable::index(const FiniteConfig& config) const {
  check_config(tree, config, m);
  const auto base = static_cast<std::uint64_t>(m) + 1;
  std::uint64_t idx = 0;
  for (auto it = config.spins.rbegin(); it != config.spins.rend(); ++it) idx = idx * base + static_cast<std::uint64_t>(*it);
  return idx;
}

std::vector<double> lift_field(std::span<const double> reduced) {
  std::vector<double> full(reduced.begin(), reduced.end());
  full.push_back(0.0);
  return full;
}

MeasureTable finite_volume_measure(const FiniteTree& tree, const ModelParams& params,
                                   std::span<const std::vector<double>> boundary, std::uint64_t cap) {
  const int m = params.m;
  const std::uint64_t count = configuration_count(m, tree.size());
  if (count > cap)
    throw std::invalid_argument(std::to_string(m + 1) + "^" + std::to_string(tree.size()) +
                                " configurations exceed the enumeration cap of " + std::to_string(cap));
  const int n = tree.depth();
  const std::int64_t first = tree.level_begin(n);
  if (boundary.size() != tree.level_size(n))
    throw std::invalid_argument("boundary has " + std::to_string(boundary.size()) + " fields, W_n has " +
                                std::to_string(tree.level_size(n)));
  for (const auto& h : boundary)
    if (h.size() != static_cast<std::size_t>(m) + 1)
      throw std::invalid_argument("boundary fields must have m + 1 components");

  MeasureTable table{tree, m, 0.0, {}};
  table.probabilities.resize(static_cast<std::size_t>(count));
  FiniteConfig config;
  config.spins.assign(tree.size(), 0);
  for (std::uint64_t c = 0; c < count; ++c) {
    double lw = -params.beta * energy(tree, config, params.J, params.J_p);
    for (std::size_t i = 0; i < boundary.size(); ++i)
      lw += boundary[i][static_cast<std::size_t>(config.spins[static_cast<std::size_t>(first) + i])];
    table.probabilities[static_cast<std::size_t>(c)] = lw;
    // Odometer step, vertex 0 fastest.
    for (auto& s : config.spins) {
      if (++s <= m) break;
      s = 0;
    }
  }
  normalize_in_place(table.probabilities, table.log_partition);
  return table;
}

MeasureTable marginalize(const MeasureTable& table, int depth) {
  if (depth < 0 || depth > table.tree.depth()) throw std::invalid_argument("marginal depth outside the tree");
  MeasureTable out{build_tree(table.tree.k(), depth), table.m, table.log_partition, {}};
  const std::uint64_t keep = configuration_count(table.m, out.tree.size());
  std::vector<std::vector<double>> buckets(static_cast<std::size_t>(keep));
  for (std::uint64_t c = 0; c < table.size(); ++c) buckets[static_cast<std::size_t>(c % keep)].push_back(table.probabilities[static_cast<std::size_t>(c)]);
  out.probabilities.resize(static_cast<std::size_t>(keep));
  for (std::size_t i = 0; i < buckets.size(); ++i) out.probabilities[i] = pairwise_sum(buckets[i]);
  return out;
}

double compatibility_residual(const ModelParams& params, std::span<const ReducedField> fields_prev,
                              std::span<const ReducedField> fields_last, int n, std::uint64_t cap) {
  if (n < 2) throw std::invalid_argument("compatibility is checked for n >= 2 (the root carries no field)");
  const auto lift_all = [&](std::span<const ReducedField> fields) {
    std::vector<std::vector<double>> out;
    out.reserve(fields.size());
    for (const auto& f : fields) {
      if (f.size() != static_cast<std::size_t>(params.m))
        throw std::invalid_argument("reduced fields must have m components");
      out.push_back(lift_field(f));
    }
    return out;
  };

  const FiniteTree big = build_tree(params.k, n);
  const FiniteTree small = build_tree(params.k, n - 1);
  const auto prev = lift_all(fields_prev);
  const auto last = lift_all(fields_last);

  const auto mu_n = finite_volume_measure(big, params, last, cap);
  const auto mu_prev = finite_volume_measure(small, params, prev, cap);
  const auto marginal = marginalize(mu_n, n - 1);

  double residual = 0.0;
  for (std::size_t i = 0; i < marginal.size(); ++i)
    residual = std::max(residual, std::abs(marginal.probabilities[i] - mu_prev.probabilities[i]));
  return residual;
}

}  // namespace pottssos
