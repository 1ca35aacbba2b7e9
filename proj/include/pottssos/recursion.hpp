#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pottssos/core.hpp"

namespace pottssos {

/// Log boundary-law ratios (h_0 - h_m, ..., h_{m-1} - h_m) at one vertex.
using ReducedField = std::vector<double>;

/// Reduced fields indexed by tree vertex; empty where the recursion is not evaluated.
struct FieldAssignment {
  std::vector<std::optional<ReducedField>> fields;

  const ReducedField& at(std::int64_t v) const;
  bool has(std::int64_t v) const;
};

/// log of the nearest-neighbour transfer weight theta^|i-j| * r^[i==j].
inline double log_transfer_weight(int i, int j, double log_theta, double log_r) {
  const int d = i > j ? i - j : j - i;
  return d * log_theta + (i == j ? log_r : 0.0);
}

/// The boundary-law map F(h; m, theta, r) for general m.
///
/// Component i is ln(sum_j a(i,j) e^{h_j}) - ln(sum_j a(m,j) e^{h_j}) with
/// h_m = 0 and a(i,j) = theta^|i-j| r^[i==j]. Both sums are evaluated with
/// max-subtracted log-sum-exp so fields of magnitude ~700 do not overflow.
ReducedField boundary_map(std::span<const double> h, int m, double theta, double r);

/// Row-major m x m Jacobian dF_i/dh_j of boundary_map.
std::vector<double> boundary_map_jacobian(std::span<const double> h, int m, double theta, double r);

/// m = 2 case written out term by term. Plain exponentials: meant for
/// moderate fields (|h| < ~300) and as a cross-check of boundary_map.
ReducedField boundary_map_m2(std::span<const double> h, double theta, double r);

/// Fills the fields of levels 1..n-1 from the boundary W_n by
/// h_x = sum over children y of F(h_y). Boundary fields are kept; the root is
/// left empty. `boundary` lists the fields of W_n in vertex order.
FieldAssignment propagate(const FiniteTree& tree, std::span<const ReducedField> boundary, int m,
                          double theta, double r);

}  // namespace pottssos
