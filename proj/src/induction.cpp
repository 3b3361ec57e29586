#include "stackgame/induction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stackgame {

const char* to_string(InductionCase c) {
  switch (c) {
    case InductionCase::Delta1Positive: return "delta1_positive";
    case InductionCase::Delta1Negative: return "delta1_negative";
    case InductionCase::Delta1Zero: return "delta1_zero";
  }
  return "unknown";
}

std::vector<double> EliminationMaps::assemble(double free_marginal) const {
  std::vector<double> defence(slope.size());
  for (std::size_t j = 0; j < slope.size(); ++j) {
    defence[j] = slope[j] * free_marginal + intercept[j];
  }
  return defence;
}

EliminationMaps::Interval EliminationMaps::feasible_interval() const {
  // The free marginal is itself a probability, so start from [0,1] and
  // intersect the box constraint of every line.
  Interval iv{0.0, 1.0};
  for (std::size_t j = 0; j < slope.size(); ++j) {
    const double a = slope[j];
    const double b = intercept[j];
    if (a > 0.0) {
      iv.lower = std::max(iv.lower, (0.0 - b) / a);
      iv.upper = std::min(iv.upper, (1.0 - b) / a);
    } else if (a < 0.0) {
      iv.lower = std::max(iv.lower, (1.0 - b) / a);
      iv.upper = std::min(iv.upper, (0.0 - b) / a);
    } else if (b < 0.0 || b > 1.0) {
      return Interval{std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity()};
    }
  }
  return iv;
}

namespace {

void check_pivot_reference(const Scenario& scenario, int pivot, int reference) {
  if (pivot < 0 || pivot >= scenario.size() || reference < 0 ||
      reference >= scenario.size()) {
    throw GameError(ErrorCode::IndexOutOfRange,
                    "pivot or reference index outside the target list");
  }
  if (pivot == reference) {
    throw GameError(ErrorCode::PivotEqualsReference,
                    "pivot and reference must be different targets");
  }
}

}  // namespace

EliminationMaps eliminate(const Scenario& scenario, int pivot, int reference) {
  check_pivot_reference(scenario, pivot, reference);
  const int n = scenario.size();
  const OmegaTable om = omega(scenario);
  const double omega_ref = om.omega_attacker[static_cast<std::size_t>(reference)];
  const double reward_ref =
      scenario.targets[static_cast<std::size_t>(reference)].reward_attacker;

  EliminationMaps maps;
  maps.pivot = pivot;
  maps.reference = reference;
  maps.slope.assign(static_cast<std::size_t>(n), 0.0);
  maps.intercept.assign(static_cast<std::size_t>(n), 0.0);

  // Equal attacker payoffs for j and the reference pin down every non-pivot
  // line; the pivot line is whatever total probability leaves over.
  for (int j = 0; j < n; ++j) {
    if (j == pivot) continue;
    if (j == reference) {
      maps.slope[static_cast<std::size_t>(j)] = 1.0;
      maps.intercept[static_cast<std::size_t>(j)] = 0.0;
    } else {
      const double omega_j = om.omega_attacker[static_cast<std::size_t>(j)];
      const double reward_j =
          scenario.targets[static_cast<std::size_t>(j)].reward_attacker;
      maps.slope[static_cast<std::size_t>(j)] = omega_ref / omega_j;
      maps.intercept[static_cast<std::size_t>(j)] = (reward_j - reward_ref) / omega_j;
    }
  }
  double slope_sum = 0.0;
  double intercept_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == pivot) continue;
    slope_sum += maps.slope[static_cast<std::size_t>(j)];
    intercept_sum += maps.intercept[static_cast<std::size_t>(j)];
  }
  maps.slope[static_cast<std::size_t>(pivot)] = -slope_sum;
  maps.intercept[static_cast<std::size_t>(pivot)] = 1.0 - intercept_sum;
  return maps;
}

DeltaForms delta_forms(const Scenario& scenario, int pivot, int reference) {
  const EliminationMaps maps = eliminate(scenario, pivot, reference);
  const OmegaTable om = omega(scenario);
  DeltaForms forms;
  const std::size_t n = maps.slope.size();
  forms.delta1.coefficients.resize(n);
  forms.delta2.coefficients.resize(n);
  // Substituting D_j(t) into the leader coefficients D_j*omega - cost splits
  // each one into a t part and a constant part.
  for (std::size_t j = 0; j < n; ++j) {
    forms.delta1.coefficients[j] = maps.slope[j] * om.omega_defender[j];
    forms.delta2.coefficients[j] = maps.intercept[j] * om.omega_defender[j] -
                                   scenario.targets[j].cost_defender;
  }
  return forms;
}

namespace {

InductionSolution assemble_solution(const Scenario& scenario,
                                    const EliminationMaps& maps,
                                    const StrategyVector& attack,
                                    InductionCase case_label, double d1,
                                    double d2,
                                    EliminationMaps::Interval interval,
                                    double t, bool clamped) {
  std::vector<double> raw = maps.assemble(t);
  // Feasibility was established analytically; whatever sticks out of the box
  // here is rounding dust from the assembly.
  for (double& v : raw) v = std::clamp(v, 0.0, 1.0);
  StrategyVector defence = StrategyVector::validated(std::move(raw));
  AttackLinearForm leader = leader_payoff_form(defence.probabilities(), scenario);
  AttackLinearForm follower = follower_payoff_form(defence.probabilities(), scenario);
  const double leader_payoff = leader.evaluate(attack);
  const double follower_payoff = follower.evaluate(attack);
  return InductionSolution{maps.pivot,
                           maps.reference,
                           case_label,
                           d1,
                           d2,
                           interval,
                           t,
                           clamped,
                           std::move(defence),
                           std::move(leader),
                           std::move(follower),
                           leader_payoff,
                           follower_payoff};
}

InductionSolution solve_impl(const Scenario& scenario,
                             const StrategyVector& attack, int pivot,
                             int reference, double zero_tolerance,
                             const double* scan_step) {
  if (attack.size() != scenario.size()) {
    throw GameError(ErrorCode::DimensionMismatch,
                    "attack vector length does not match target count");
  }
  const EliminationMaps maps = eliminate(scenario, pivot, reference);
  const EliminationMaps::Interval interval = maps.feasible_interval();
  if (interval.empty()) {
    throw GameError(ErrorCode::InfeasibleIndifference,
                    "no defence satisfies indifference and the box constraints");
  }
  const DeltaForms forms = delta_forms(scenario, pivot, reference);
  const double d1 = forms.delta1.evaluate(attack);
  const double d2 = forms.delta2.evaluate(attack);

  if (d1 > zero_tolerance) {
    // Payoff rises with the free marginal: take the top of the interval, or
    // the highest feasible grid point in tabulation mode.
    const double t = scan_step ? scan_max_free_marginal(maps, *scan_step)
                               : interval.upper;
    return assemble_solution(scenario, maps, attack,
                             InductionCase::Delta1Positive, d1, d2, interval,
                             t, false);
  }
  if (d1 < -zero_tolerance) {
    // Payoff falls with the free marginal: aim for zero, settle for the
    // interval bottom when other lines keep zero out of reach.
    const bool clamped = interval.lower > 0.0;
    return assemble_solution(scenario, maps, attack,
                             InductionCase::Delta1Negative, d1, d2, interval,
                             interval.lower, clamped);
  }
  // Flat in the free marginal: every feasible choice pays the same; report
  // the midpoint as the canonical representative.
  const double t = 0.5 * (interval.lower + interval.upper);
  return assemble_solution(scenario, maps, attack,
                           InductionCase::Delta1Zero, d1, d2, interval, t,
                           false);
}

}  // namespace

InductionSolution solve(const Scenario& scenario, const StrategyVector& attack,
                        int pivot, int reference, double zero_tolerance) {
  return solve_impl(scenario, attack, pivot, reference, zero_tolerance, nullptr);
}

InductionSolution solve_on_grid(const Scenario& scenario,
                                const StrategyVector& attack, int pivot,
                                int reference, double scan_step,
                                double zero_tolerance) {
  return solve_impl(scenario, attack, pivot, reference, zero_tolerance,
                    &scan_step);
}

double scan_max_free_marginal(const EliminationMaps& maps, double step) {
  if (!(step > 0.0) || step > 1.0) {
    throw GameError(ErrorCode::InvalidArgument,
                    "scan step must lie in (0, 1]");
  }
  const double k_max_real = std::floor(1.0 / step + 1e-9);
  if (k_max_real > 1e8) {
    throw GameError(ErrorCode::ResolutionTooFine,
                    "scan step produces more than 1e8 grid points");
  }
  // Slack for assembly rounding so an exact analytic endpoint that lands on
  // the grid is not rejected by the last bit.
  constexpr double kBoxSlack = 1e-12;
  const long k_max = static_cast<long>(k_max_real);
  for (long k = k_max; k >= 0; --k) {
    const double t = static_cast<double>(k) * step;
    bool feasible = true;
    for (std::size_t j = 0; j < maps.slope.size() && feasible; ++j) {
      const double d = maps.slope[j] * t + maps.intercept[j];
      feasible = d >= -kBoxSlack && d <= 1.0 + kBoxSlack;
    }
    if (feasible) return t;
  }
  throw GameError(ErrorCode::InfeasibleIndifference,
                  "no grid point satisfies the box constraints");
}

std::vector<double> full_indifference_residuals(const std::vector<double>& defence,
                                                const Scenario& scenario,
                                                int pivot) {
  if (static_cast<int>(defence.size()) != scenario.size()) {
    throw GameError(ErrorCode::DimensionMismatch,
                    "defence vector length does not match target count");
  }
  if (pivot < 0 || pivot >= scenario.size()) {
    throw GameError(ErrorCode::IndexOutOfRange,
                    "pivot index outside the target list");
  }
  const AttackLinearForm payoff = follower_payoff_form(defence, scenario);
  const double pivot_payoff = payoff.coefficients[static_cast<std::size_t>(pivot)];
  std::vector<double> residuals(payoff.coefficients.size());
  for (std::size_t j = 0; j < residuals.size(); ++j) {
    residuals[j] = payoff.coefficients[j] - pivot_payoff;
  }
  return residuals;
}

}  // namespace stackgame
