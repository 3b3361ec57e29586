#pragma once

#include <vector>

#include "stackgame/model.hpp"

namespace stackgame {

// Row-major targets-by-resources matrix; entry (j,s) is the probability that
// resource s sits on target j. Each column is a distribution over targets
// (resources are always deployed somewhere).
struct AssignmentMatrix {
  int targets = 0;
  int resources = 0;
  std::vector<double> entries;  // row-major, size targets*resources

  double at(int target, int resource) const {
    return entries[static_cast<std::size_t>(target) * resources + resource];
  }
  double& at(int target, int resource) {
    return entries[static_cast<std::size_t>(target) * resources + resource];
  }

  // Validates ranges and column sums (each within kSimplexTolerance of 1),
  // snapping columns onto the simplex; throws InvalidMatrix otherwise.
  static AssignmentMatrix validated(int targets, int resources,
                                    std::vector<double> entries,
                                    double tolerance = kSimplexTolerance);
};

// Protection marginals induced by an assignment: the per-target column
// averages, which always form a distribution.
StrategyVector marginals_from_assignment(const AssignmentMatrix& assignment);

// One assignment matrix realizing the requested marginals: each target j
// demands resource mass resource_count*D_j, and columns of unit capacity are
// filled greedily in order (northwest-corner fill). Always feasible for a
// valid simplex input; the result round-trips through
// marginals_from_assignment.
AssignmentMatrix assignment_from_marginals(const StrategyVector& defence,
                                           int resource_count);

}  // namespace stackgame
