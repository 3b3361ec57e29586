#include "stackgame/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace stackgame {

AssignmentMatrix AssignmentMatrix::validated(int targets, int resources,
                                             std::vector<double> entries,
                                             double tolerance) {
  if (targets < 1 || resources < 1) {
    throw GameError(ErrorCode::InvalidMatrix,
                    "assignment matrix needs at least one target and one resource");
  }
  if (entries.size() != static_cast<std::size_t>(targets) * resources) {
    throw GameError(ErrorCode::InvalidMatrix,
                    "assignment entry count does not match targets*resources");
  }
  char buf[128];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double v = entries[i];
    if (!std::isfinite(v) || v < -tolerance || v > 1.0 + tolerance) {
      std::snprintf(buf, sizeof(buf),
                    "assignment entry (%zu,%zu) outside [0,1]: %g",
                    i / resources + 1, i % resources + 1, v);
      throw GameError(ErrorCode::InvalidMatrix, buf);
    }
  }
  AssignmentMatrix m{targets, resources, std::move(entries)};
  for (int s = 0; s < resources; ++s) {
    double column = 0.0;
    for (int j = 0; j < targets; ++j) column += m.at(j, s);
    if (std::abs(column - 1.0) > tolerance) {
      std::snprintf(buf, sizeof(buf),
                    "assignment column %d must sum to 1; got %.12g", s + 1,
                    column);
      throw GameError(ErrorCode::InvalidMatrix, buf);
    }
    // Same snap as StrategyVector: clamp dust, rescale the column to 1.
    for (int j = 0; j < targets; ++j) {
      m.at(j, s) = std::clamp(m.at(j, s), 0.0, 1.0);
    }
    column = 0.0;
    for (int j = 0; j < targets; ++j) column += m.at(j, s);
    if (column > 0.0) {
      for (int j = 0; j < targets; ++j) {
        m.at(j, s) = std::clamp(m.at(j, s) / column, 0.0, 1.0);
      }
    }
  }
  return m;
}

StrategyVector marginals_from_assignment(const AssignmentMatrix& assignment) {
  std::vector<double> marginals(static_cast<std::size_t>(assignment.targets), 0.0);
  for (int j = 0; j < assignment.targets; ++j) {
    double row = 0.0;
    for (int s = 0; s < assignment.resources; ++s) row += assignment.at(j, s);
    marginals[static_cast<std::size_t>(j)] = row / assignment.resources;
  }
  // Column sums are 1 each, so the averages always total 1 up to rounding;
  // a large assignment can accumulate more dust than the default tolerance.
  const double tolerance = std::max(
      kSimplexTolerance,
      1e-14 * assignment.targets * assignment.resources);
  return StrategyVector::validated(std::move(marginals), tolerance);
}

AssignmentMatrix assignment_from_marginals(const StrategyVector& defence,
                                           int resource_count) {
  if (resource_count < 1) {
    throw GameError(ErrorCode::InvalidMarginals,
                    "resource count must be at least 1");
  }
  const int n = defence.size();
  AssignmentMatrix m{n, resource_count,
                     std::vector<double>(static_cast<std::size_t>(n) * resource_count, 0.0)};
  // Northwest-corner fill of the transportation polytope: target j demands
  // total mass resource_count*D_j, each resource column holds capacity 1.
  // Demands total exactly the capacity, so the fill always completes.
  int column = 0;
  double capacity = 1.0;
  for (int j = 0; j < n; ++j) {
    double demand = defence[j] * resource_count;
    while (demand > 0.0 && column < resource_count) {
      const double placed = std::min(demand, capacity);
      m.at(j, column) += placed;
      demand -= placed;
      capacity -= placed;
      if (capacity <= 0.0) {
        ++column;
        capacity = 1.0;
      }
    }
  }
  // Rounding in the demands can leave the last column a hair short; top up
  // the final target so every column is exactly stochastic.
  if (column < resource_count && capacity < 1.0) {
    m.at(n - 1, column) += capacity;
  }
  return AssignmentMatrix::validated(m.targets, m.resources,
                                     std::move(m.entries));
}

}  // namespace stackgame
