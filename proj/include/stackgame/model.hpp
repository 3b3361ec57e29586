#pragma once

#include <vector>

#include "stackgame/error.hpp"

namespace stackgame {

// Tolerance used when admitting probability vectors and assignment matrices.
// Inputs within this distance of the constraint surface are renormalized onto
// it; anything further out is rejected.
inline constexpr double kSimplexTolerance = 1e-9;

// Per-target valuations for the two players. All four are magnitudes >= 0;
// the sign convention (gain vs. loss) is applied by the payoff formulas.
struct TargetProfile {
  double reward_defender = 0.0;  // defender payout when the attacked target was protected
  double cost_defender = 0.0;    // defender loss when the attacked target was unprotected
  double reward_attacker = 0.0;  // attacker gain on an unprotected target
  double cost_attacker = 0.0;    // attacker loss on a protected target
};

// A game instance: an ordered list of targets plus the number of
// indivisible protective resources the defender can deploy per round.
struct Scenario {
  std::vector<TargetProfile> targets;
  int resource_count = 0;

  int size() const { return static_cast<int>(targets.size()); }
};

// Per-target reward+cost totals, one entry per target for each player.
// These totals drive both the indifference slopes and the payoff forms, so
// they are computed once and passed around.
struct OmegaTable {
  std::vector<double> omega_defender;
  std::vector<double> omega_attacker;
};

// A probability distribution over targets. The only way to obtain one is
// validated(), which enforces entries in [0,1] and total 1 within
// `tolerance`, then snaps the accepted vector exactly onto the simplex.
class StrategyVector {
 public:
  static StrategyVector validated(std::vector<double> probabilities,
                                  double tolerance = kSimplexTolerance);

  const std::vector<double>& probabilities() const { return p_; }
  double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(p_.size()); }

 private:
  explicit StrategyVector(std::vector<double> p) : p_(std::move(p)) {}

  std::vector<double> p_;
};

// Affine functional over attack vectors: constant + sum_j coefficients[j]*A_j.
// Payoffs, indifference deltas, and reduced lines are all carried in this shape.
struct AttackLinearForm {
  std::vector<double> coefficients;
  double constant = 0.0;

  double evaluate(const StrategyVector& attack) const;
};

struct Payoffs {
  double leader = 0.0;    // defender
  double follower = 0.0;  // attacker
};

// Checks a raw scenario and returns it unchanged, or throws GameError:
// fewer than two targets, any negative or non-finite valuation, any target
// whose reward+cost total is zero for either player, or a resource count
// below one.
Scenario validate_scenario(Scenario candidate);

// Reward+cost totals per target. Entries are the plain two-term sums of the
// profile fields, so they match them exactly.
OmegaTable omega(const Scenario& scenario);

// Expected payoffs for both players when the defender covers with marginals
// `defence` and the attacker mixes with `attack`. The defence parameter is
// deliberately a raw vector (dimension-checked only): audit and what-if
// surfaces need to evaluate candidates that are not on the simplex.
// Plain summation; target counts are small, so no compensated accumulation.
Payoffs expected_payoffs(const std::vector<double>& defence,
                         const StrategyVector& attack,
                         const Scenario& scenario);

// Defender payoff as a function of the attack vector, for a fixed defence:
// coefficient j is D_j*omega_defender[j] - cost_defender[j], constant 0.
AttackLinearForm leader_payoff_form(const std::vector<double>& defence,
                                    const Scenario& scenario);

// Attacker payoff as a function of the attack vector, for a fixed defence:
// coefficient j is (1-D_j)*reward_attacker[j] - D_j*cost_attacker[j].
// Coefficient j is also the attacker's payoff for attacking j outright.
AttackLinearForm follower_payoff_form(const std::vector<double>& defence,
                                      const Scenario& scenario);

// Substitutes A_e = 1 - sum of the others into `form`, eliminating variable
// `eliminated_index`: its coefficient moves into the constant and is
// subtracted from every other coefficient. The result evaluates identically
// on the simplex.
AttackLinearForm reduce_form(const AttackLinearForm& form, int eliminated_index);

}  // namespace stackgame
