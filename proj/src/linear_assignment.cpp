#include "distancing/linear_assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "distancing/errors.hpp"

namespace distancing {

namespace {

// Square Hungarian method with row/column potentials. Returns col index per row.
std::vector<std::size_t> hungarian_square(const Eigen::MatrixXd& c) {
  const std::size_t n = static_cast<std::size_t>(c.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // 1-based internally; index 0 is the virtual root column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c(static_cast<Eigen::Index>(i0 - 1), static_cast<Eigen::Index>(j - 1)) -
                           u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

AssignmentResult solve_assignment(const Eigen::MatrixXd& cost) {
  const auto rows = static_cast<std::size_t>(cost.rows());
  const auto cols = static_cast<std::size_t>(cost.cols());
  AssignmentResult result;

  double max_cost = 0.0;
  bool any_admissible = false;
  for (Eigen::Index r = 0; r < cost.rows(); ++r) {
    for (Eigen::Index c = 0; c < cost.cols(); ++c) {
      const double x = cost(r, c);
      if (!std::isfinite(x)) continue;
      if (x < 0.0) throw ParameterError("solve_assignment: costs must be non-negative");
      max_cost = std::max(max_cost, x);
      any_admissible = true;
    }
  }

  if (!any_admissible) {
    for (std::size_t r = 0; r < rows; ++r) result.unmatched_rows.push_back(r);
    for (std::size_t c = 0; c < cols; ++c) result.unmatched_cols.push_back(c);
    return result;
  }

  // Any matching with one more admissible pair beats every matching with one
  // fewer, since a full admissible total never exceeds n * max_cost.
  const std::size_t n = std::max(rows, cols);
  const double sentinel = (static_cast<double>(n) + 1.0) * (max_cost + 1.0);

  Eigen::MatrixXd padded = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n),
                                                     static_cast<Eigen::Index>(n), sentinel);
  for (Eigen::Index r = 0; r < cost.rows(); ++r) {
    for (Eigen::Index c = 0; c < cost.cols(); ++c) {
      if (std::isfinite(cost(r, c))) padded(r, c) = cost(r, c);
    }
  }

  const std::vector<std::size_t> row_to_col = hungarian_square(padded);
  std::vector<char> col_matched(cols, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t c = row_to_col[r];
    if (c < cols && std::isfinite(cost(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)))) {
      result.matches.emplace_back(r, c);
      result.total_cost += cost(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      col_matched[c] = 1;
    } else {
      result.unmatched_rows.push_back(r);
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (!col_matched[c]) result.unmatched_cols.push_back(c);
  }
  return result;
}

}  // namespace distancing
