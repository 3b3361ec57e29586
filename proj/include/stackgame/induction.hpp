#pragma once

#include <vector>

#include "stackgame/model.hpp"

namespace stackgame {

// Result of eliminating the attacker-indifference conditions: every
// protection marginal written as an affine function of a single free one,
//   D_j(t) = slope[j]*t + intercept[j],
// where t is the marginal of the reference target (slope 1, intercept 0).
// The pivot target's line is fixed by total probability instead of
// indifference, so its slope is minus the sum of the others.
struct EliminationMaps {
  int pivot = 0;
  int reference = 0;
  std::vector<double> slope;
  std::vector<double> intercept;

  int size() const { return static_cast<int>(slope.size()); }

  // The full defence vector at a given free marginal. No box clamping; use
  // feasible_interval() to know where the result is a real distribution.
  std::vector<double> assemble(double free_marginal) const;

  struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    bool empty() const { return lower > upper; }
  };

  // The set of free-marginal values for which every assembled entry lies in
  // [0,1]. Total probability holds by construction, so box constraints are
  // the only restriction. lower > upper when no value works.
  Interval feasible_interval() const;
};

// Which branch of the optimization the solver took, by the sign of the
// leader-payoff slope in the free marginal.
enum class InductionCase {
  Delta1Positive,  // payoff increases in t: push to the upper bound
  Delta1Negative,  // payoff decreases in t: push to the lower bound
  Delta1Zero,      // payoff flat in t: any feasible t; midpoint reported
};

const char* to_string(InductionCase c);

// Leader payoff restricted to the indifference family, as two forms over the
// attack vector: payoff(t, A) = t*delta1(A) + delta2(A).
struct DeltaForms {
  AttackLinearForm delta1;
  AttackLinearForm delta2;
};

// Everything the backward-induction step produces for one (attack, pivot,
// reference) configuration.
struct InductionSolution {
  int pivot;
  int reference;
  InductionCase case_label;
  double delta1_value;
  double delta2_value;
  EliminationMaps::Interval interval;
  double free_marginal;
  bool clamped;  // Delta1Negative only: 0 was infeasible, settled on interval.lower
  StrategyVector defence;
  AttackLinearForm leader_form;    // leader payoff at this defence, over attacks
  AttackLinearForm follower_form;  // attacker payoff at this defence, over attacks
  double leader_payoff;            // both evaluated at the attack handed to solve()
  double follower_payoff;
};

// Builds the indifference elimination for the given pivot/reference pair.
// Throws PivotEqualsReference or IndexOutOfRange on bad indices.
EliminationMaps eliminate(const Scenario& scenario, int pivot, int reference);

// The leader payoff along the indifference family, split into the slope and
// offset forms over attacks. Equivalent to substituting the elimination maps
// into the leader payoff target by target:
//   delta1 coefficient j  =  slope[j]*omega_defender[j]
//   delta2 coefficient j  =  intercept[j]*omega_defender[j] - cost_defender[j]
DeltaForms delta_forms(const Scenario& scenario, int pivot, int reference);

// Backward induction for a fixed attack vector: evaluates delta1 there and
// places the free marginal at the interval top (positive), at zero or the
// clamped interval bottom (negative), or at the interval midpoint (within
// zero_tolerance of flat). Throws InfeasibleIndifference when the interval
// is empty.
InductionSolution solve(const Scenario& scenario, const StrategyVector& attack,
                        int pivot, int reference,
                        double zero_tolerance = 1e-9);

// Same, but the Delta1Positive branch picks its free marginal by scanning
// the step grid (scan_max_free_marginal) instead of taking the analytic
// endpoint. The other branches are unchanged.
InductionSolution solve_on_grid(const Scenario& scenario,
                                const StrategyVector& attack, int pivot,
                                int reference, double scan_step,
                                double zero_tolerance = 1e-9);

// Largest multiple of `step` in [0,1] whose assembled defence satisfies the
// box constraints (checked with a small slack for float dust). The
// tabulation counterpart of feasible_interval().upper. Throws
// InfeasibleIndifference when no grid point is feasible, InvalidArgument for
// a step outside (0,1], ResolutionTooFine past 1e8 grid points.
double scan_max_free_marginal(const EliminationMaps& maps, double step);

// Signed attacker-indifference residuals of a raw defence vector against the
// pivot: entry j is (attacker payoff for j) - (attacker payoff for pivot),
// zero at the pivot itself. All-zero (off the pivot) means exact
// indifference.
std::vector<double> full_indifference_residuals(const std::vector<double>& defence,
                                                const Scenario& scenario,
                                                int pivot);

}  // namespace stackgame
