#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace distancing {

struct AssignmentResult {
  /// (row, col) pairs, ascending by row.
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  std::vector<std::size_t> unmatched_rows;
  std::vector<std::size_t> unmatched_cols;
  /// Sum of matched costs, accumulated in ascending row order.
  double total_cost = 0.0;
};

/// Rectangular assignment over admissible pairs.
///
/// Non-finite entries mark forbidden pairs. The result has maximum cardinality
/// among matchings that use only admissible pairs and, among those, minimum
/// total cost. Finite costs must be non-negative.
///
/// The matrix is padded to square with a finite sentinel larger than any
/// achievable admissible total, then solved with the O(n^3) shortest
/// augmenting path form of the Hungarian method.
AssignmentResult solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace distancing
