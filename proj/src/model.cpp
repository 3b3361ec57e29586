#include "stackgame/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace stackgame {

namespace {

std::string index_message(const char* what, int index, double value) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s at target %d (value %g)", what, index + 1,
                value);
  return buf;
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewTargets: return "TooFewTargets";
    case ErrorCode::NegativeValuation: return "NegativeValuation";
    case ErrorCode::NonPositiveOmega: return "NonPositiveOmega";
    case ErrorCode::InvalidStrategy: return "InvalidStrategy";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::InvalidMarginals: return "InvalidMarginals";
    case ErrorCode::PivotEqualsReference: return "PivotEqualsReference";
    case ErrorCode::InfeasibleIndifference: return "InfeasibleIndifference";
    case ErrorCode::ResolutionTooFine: return "ResolutionTooFine";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

StrategyVector StrategyVector::validated(std::vector<double> probabilities,
                                         double tolerance) {
  if (probabilities.empty()) {
    throw GameError(ErrorCode::InvalidStrategy,
                    "strategy vector must not be empty");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const double v = probabilities[i];
    if (!std::isfinite(v)) {
      throw GameError(ErrorCode::InvalidStrategy,
                      index_message("non-finite probability", static_cast<int>(i), v));
    }
    if (v < -tolerance || v > 1.0 + tolerance) {
      throw GameError(ErrorCode::InvalidStrategy,
                      index_message("probability outside [0,1]", static_cast<int>(i), v));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tolerance) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "probabilities must sum to 1 (simplex constraint); got %.12g",
                  sum);
    throw GameError(ErrorCode::InvalidStrategy, buf);
  }
  // Snap onto the simplex: clamp the tolerated dust, rescale, clamp again so
  // no entry leaves [0,1] by a rounding hair.
  for (double& v : probabilities) v = std::clamp(v, 0.0, 1.0);
  sum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (sum > 0.0) {
    for (double& v : probabilities) v = std::clamp(v / sum, 0.0, 1.0);
  }
  return StrategyVector(std::move(probabilities));
}

double AttackLinearForm::evaluate(const StrategyVector& attack) const {
  if (attack.size() != static_cast<int>(coefficients.size())) {
    throw GameError(ErrorCode::DimensionMismatch,
                    "attack vector length does not match form");
  }
  double total = constant;
  for (int j = 0; j < attack.size(); ++j) {
    total += coefficients[static_cast<std::size_t>(j)] * attack[j];
  }
  return total;
}

Scenario validate_scenario(Scenario candidate) {
  if (candidate.size() < 2) {
    throw GameError(ErrorCode::TooFewTargets,
                    "a scenario needs at least two targets");
  }
  for (int j = 0; j < candidate.size(); ++j) {
    const TargetProfile& t = candidate.targets[static_cast<std::size_t>(j)];
    const double fields[] = {t.reward_defender, t.cost_defender,
                             t.reward_attacker, t.cost_attacker};
    for (double v : fields) {
      if (!std::isfinite(v) || v < 0.0) {
        throw GameError(ErrorCode::NegativeValuation,
                        index_message("negative or non-finite valuation", j, v));
      }
    }
    if (t.reward_defender + t.cost_defender <= 0.0) {
      throw GameError(ErrorCode::NonPositiveOmega,
                      index_message("defender reward+cost total is zero", j, 0.0));
    }
    if (t.reward_attacker + t.cost_attacker <= 0.0) {
      throw GameError(ErrorCode::NonPositiveOmega,
                      index_message("attacker reward+cost total is zero", j, 0.0));
    }
  }
  if (candidate.resource_count < 1) {
    throw GameError(ErrorCode::InvalidArgument,
                    "resource count must be at least 1");
  }
  return candidate;
}

OmegaTable omega(const Scenario& scenario) {
  OmegaTable table;
  table.omega_defender.reserve(scenario.targets.size());
  table.omega_attacker.reserve(scenario.targets.size());
  for (const TargetProfile& t : scenario.targets) {
    table.omega_defender.push_back(t.reward_defender + t.cost_defender);
    table.omega_attacker.push_back(t.reward_attacker + t.cost_attacker);
  }
  return table;
}

namespace {

void check_defence_size(const std::vector<double>& defence,
                        const Scenario& scenario) {
  if (static_cast<int>(defence.size()) != scenario.size()) {
    throw GameError(ErrorCode::DimensionMismatch,
                    "defence vector length does not match target count");
  }
}

}  // namespace

Payoffs expected_payoffs(const std::vector<double>& defence,
                         const StrategyVector& attack,
                         const Scenario& scenario) {
  check_defence_size(defence, scenario);
  if (attack.size() != scenario.size()) {
    throw GameError(ErrorCode::DimensionMismatch,
                    "attack vector length does not match target count");
  }
  Payoffs result;
  for (int j = 0; j < scenario.size(); ++j) {
    const TargetProfile& t = scenario.targets[static_cast<std::size_t>(j)];
    const double d = defence[static_cast<std::size_t>(j)];
    const double a = attack[j];
    result.leader += a * (d * t.reward_defender - (1.0 - d) * t.cost_defender);
    result.follower += a * ((1.0 - d) * t.reward_attacker - d * t.cost_attacker);
  }
  return result;
}

AttackLinearForm leader_payoff_form(const std::vector<double>& defence,
                                    const Scenario& scenario) {
  check_defence_size(defence, scenario);
  AttackLinearForm form;
  form.coefficients.reserve(defence.size());
  for (int j = 0; j < scenario.size(); ++j) {
    const TargetProfile& t = scenario.targets[static_cast<std::size_t>(j)];
    const double d = defence[static_cast<std::size_t>(j)];
    form.coefficients.push_back(d * (t.reward_defender + t.cost_defender) -
                                t.cost_defender);
  }
  return form;
}

AttackLinearForm follower_payoff_form(const std::vector<double>& defence,
                                      const Scenario& scenario) {
  check_defence_size(defence, scenario);
  AttackLinearForm form;
  form.coefficients.reserve(defence.size());
  for (int j = 0; j < scenario.size(); ++j) {
    const TargetProfile& t = scenario.targets[static_cast<std::size_t>(j)];
    const double d = defence[static_cast<std::size_t>(j)];
    form.coefficients.push_back((1.0 - d) * t.reward_attacker -
                                d * t.cost_attacker);
  }
  return form;
}

AttackLinearForm reduce_form(const AttackLinearForm& form, int eliminated_index) {
  const int n = static_cast<int>(form.coefficients.size());
  if (eliminated_index < 0 || eliminated_index >= n) {
    throw GameError(ErrorCode::IndexOutOfRange,
                    "eliminated index outside the form");
  }
  const double pivot_coeff = form.coefficients[static_cast<std::size_t>(eliminated_index)];
  AttackLinearForm reduced;
  reduced.constant = form.constant + pivot_coeff;
  reduced.coefficients.reserve(form.coefficients.size());
  for (int j = 0; j < n; ++j) {
    reduced.coefficients.push_back(
        j == eliminated_index
            ? 0.0
            : form.coefficients[static_cast<std::size_t>(j)] - pivot_coeff);
  }
  return reduced;
}

}  // namespace stackgame
