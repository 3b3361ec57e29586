#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stackgame/induction.hpp"
#include "stackgame/model.hpp"

namespace stackgame {

// How a follower breaks exact-or-near payoff ties among best targets.
enum class TieBreak {
  FavorLeader,    // among tied targets, the one best for the defender
  FavorFollower,  // among tied targets, the one worst for the defender
  LowestIndex,
};

const char* to_string(TieBreak t);
TieBreak tie_break_from_name(const std::string& name);  // InvalidArgument on unknown

inline constexpr double kTieTolerance = 1e-9;

// Follower's reply to a fixed defence: the attainable payoff per target is
// read off follower_payoff_form; best_targets collects every index within
// tie_tolerance of the maximum.
struct BestResponse {
  std::vector<int> best_targets;
  double best_value = 0.0;
  int chosen = 0;  // element of best_targets selected by the tie-break rule
};

BestResponse attacker_best_response(const std::vector<double>& defence,
                                    const Scenario& scenario,
                                    TieBreak tie_break,
                                    double tie_tolerance = kTieTolerance);

// Grid search outcome: the best defence found, the follower's pure reply to
// it, and both payoffs at that pair.
struct OracleResult {
  StrategyVector defence;
  StrategyVector attack;
  int attacked_target = 0;
  double leader_payoff = 0.0;
  double follower_payoff = 0.0;
  double resolution = 0.0;
};

// Refusal threshold for grid sizes; C(k+n-1, n-1) points at k = 1/resolution.
inline constexpr std::uint64_t kDefaultGridPointCap = 50'000'000;

// Steps per unit for a grid resolution, which must divide 1 within 1e-12;
// InvalidArgument otherwise. resolution 0.05 -> 20.
int grid_steps(double resolution);

// Visits every length-`parts` tuple of non-negative integers summing to
// `steps`, in ascending lexicographic order; tuple/steps are the simplex
// grid coordinates. Exact integer enumeration, so grids of different
// resolutions with a common divisor nest exactly.
void for_each_simplex_grid_point(
    int parts, int steps,
    const std::function<void(const std::vector<int>&)>& visit);

// Exhaustive search over all defence vectors whose entries are multiples of
// `resolution` (which must divide 1 within 1e-12). Every grid point is scored
// by the leader payoff under the follower's tie-broken best response; the
// winner is the maximum under the total order (payoff, then lexicographically
// smaller defence), so the result does not depend on enumeration order.
// Throws ResolutionTooFine when the grid would exceed point_cap.
OracleResult stackelberg_grid(const Scenario& scenario, double resolution,
                              TieBreak tie_break,
                              std::uint64_t point_cap = kDefaultGridPointCap);

// One audited property of a candidate solution.
struct AuditCheck {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct SolutionAudit {
  std::vector<AuditCheck> checks;
  bool all_passed() const;
  const AuditCheck* find(const std::string& name) const;
};

// Thresholds for the four audit checks. Normalization and box are exact-math
// properties and stay tight; indifference and reduction are checked at print
// precision so hand-entered (rounded) solutions audit clean while genuine
// violations, which sit orders of magnitude higher, still fail.
struct AuditTolerances {
  double normalization = 1e-9;
  double box = 1e-9;
  double indifference = 1e-3;
  double reduction = 1e-3;
};

// Audits a raw defence vector: |sum - 1|, worst box violation, worst
// pairwise indifference residual among non-pivot targets, and the worst
// disagreement between the actual leader payoff and the delta-form
// reconstruction over a fixed deterministic set of random attacks.
SolutionAudit audit_defence(const std::vector<double>& defence,
                            const Scenario& scenario, int pivot, int reference,
                            const AuditTolerances& tolerances = {});

// Convenience wrapper auditing a solver output under the given pivot (the
// reference comes from the solution itself).
SolutionAudit verify_solution(const InductionSolution& solution,
                              const Scenario& scenario, int pivot,
                              const AuditTolerances& tolerances = {});

}  // namespace stackgame
