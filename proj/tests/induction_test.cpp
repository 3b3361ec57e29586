#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stackgame/induction.hpp"
#include "test_util.hpp"

using namespace stackgame;
using namespace testutil;

namespace {

// The worked example eliminates around pivot target 3 with target 1 as the
// free marginal (0-based: pivot 2, reference 0).
constexpr int kPivot = 2;
constexpr int kReference = 0;

// The printed tabulation coefficients from the worked example, including its
// (uncorrected) third line. Used for fidelity checks of the scanner.
EliminationMaps printed_maps() {
  EliminationMaps maps;
  maps.pivot = kPivot;
  maps.reference = kReference;
  maps.slope = {1.0, 6.0 / 11.0, -10.272, 1.0};
  maps.intercept = {0.0, 2.0 / 11.0, 1.0 - 0.3485, 1.0 / 6.0};
  return maps;
}

}  // namespace

TEST_CASE("eliminate reproduces the worked example lines") {
  const EliminationMaps maps = eliminate(example_scenario(), kPivot, kReference);
  CHECK(maps.pivot == kPivot);
  CHECK(maps.reference == kReference);

  // Reference line is the identity.
  CHECK(maps.slope[0] == 1.0);
  CHECK(maps.intercept[0] == 0.0);

  // D2 = (6 D1 + 2) / 11 and D4 = (6 D1 + 1) / 6.
  CHECK(near(maps.slope[1], 6.0 / 11.0, 1e-12));
  CHECK(near(maps.intercept[1], 2.0 / 11.0, 1e-12));
  CHECK(near(maps.slope[3], 1.0, 1e-12));
  CHECK(near(maps.intercept[3], 1.0 / 6.0, 1e-12));

  // Pivot line: slope -(1 + 6/11 + 1) = -28/11, intercept 43/66.
  CHECK(near(maps.slope[2], -28.0 / 11.0, 1e-12));
  CHECK(near(maps.intercept[2], 43.0 / 66.0, 1e-12));
  CHECK(near(maps.intercept[2], 1.0 - 0.34848, 1e-4));
}

TEST_CASE("eliminate validates its indices") {
  const Scenario s = example_scenario();
  CHECK(code_of([&] { eliminate(s, 1, 1); }) == ErrorCode::PivotEqualsReference);
  CHECK(code_of([&] { eliminate(s, 4, 0); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { eliminate(s, 2, -1); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("identical targets produce unit slopes and zero intercepts") {
  Scenario s;
  s.resource_count = 2;
  s.targets.assign(4, TargetProfile{2.0, 1.0, 3.0, 2.0});
  const EliminationMaps maps = eliminate(s, 3, 0);
  for (int j = 0; j < 3; ++j) {
    CHECK(near(maps.slope[j], 1.0, 1e-15));
    CHECK(near(maps.intercept[j], 0.0, 1e-15));
  }
  CHECK(near(maps.slope[3], -3.0, 1e-15));
  CHECK(near(maps.intercept[3], 1.0, 1e-15));
}

TEST_CASE("assembled marginals always total exactly one") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> t_draw(-0.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Scenario s = random_scenario(rng, n, 2);
    const int pivot = static_cast<int>(rng() % n);
    int reference = static_cast<int>(rng() % n);
    if (reference == pivot) reference = (reference + 1) % n;
    const EliminationMaps maps = eliminate(s, pivot, reference);
    const std::vector<double> defence = maps.assemble(t_draw(rng));
    double sum = 0.0;
    for (double v : defence) sum += v;
    CHECK(near(sum, 1.0, 1e-12));
  }
}

TEST_CASE("feasible interval of the worked example") {
  const EliminationMaps maps = eliminate(example_scenario(), kPivot, kReference);
  const EliminationMaps::Interval interval = maps.feasible_interval();
  CHECK_FALSE(interval.empty());
  CHECK(interval.lower == 0.0);
  CHECK(near(interval.upper, 43.0 / 168.0, 1e-12));  // 0.255952
}

TEST_CASE("delta forms reproduce the worked example coefficients") {
  const DeltaForms forms = delta_forms(example_scenario(), kPivot, kReference);

  CHECK(near(forms.delta1.coefficients[0], 16.0, 1e-12));
  CHECK(near(forms.delta1.coefficients[1], 90.0 / 11.0, 1e-12));    // 8.1818
  CHECK(near(forms.delta1.coefficients[2], -364.0 / 11.0, 1e-12));  // -33.0909
  CHECK(near(forms.delta1.coefficients[3], 6.0, 1e-12));

  CHECK(near(forms.delta2.coefficients[0], -7.0, 1e-12));
  CHECK(near(forms.delta2.coefficients[1], -47.0 / 11.0, 1e-12));   // -4.2727
  CHECK(near(forms.delta2.coefficients[2], 163.0 / 66.0, 1e-12));   // 2.4697
  CHECK(near(forms.delta2.coefficients[3], -1.0, 1e-12));

  // Rounded display values.
  CHECK(near(forms.delta1.coefficients[1], 8.1818, 1e-3));
  CHECK(near(forms.delta1.coefficients[2], -33.0909, 1e-3));
  CHECK(near(forms.delta2.coefficients[1], -4.2727, 1e-3));
  CHECK(near(forms.delta2.coefficients[2], 2.4697, 1e-3));
}

TEST_CASE("symmetric stakes make the payoff flat in the free marginal") {
  // Same totals for both players on every target, uniform attack: moving
  // protection mass along the indifference family cannot change the payoff.
  Scenario s;
  s.resource_count = 1;
  s.targets.assign(3, TargetProfile{1.0, 2.0, 2.0, 1.0});
  const DeltaForms forms = delta_forms(s, 2, 0);
  const StrategyVector uniform =
      StrategyVector::validated({1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(near(forms.delta1.evaluate(uniform), 0.0, 1e-12));
}

TEST_CASE("delta forms reconstruct the leader payoff along the family") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Scenario s = random_scenario(rng, n, 2);
    const int pivot = static_cast<int>(rng() % n);
    int reference = static_cast<int>(rng() % n);
    if (reference == pivot) reference = (reference + 1) % n;

    const EliminationMaps maps = eliminate(s, pivot, reference);
    const EliminationMaps::Interval interval = maps.feasible_interval();
    if (interval.empty()) continue;
    const double t = interval.lower + unit(rng) * (interval.upper - interval.lower);

    const std::vector<double> defence = maps.assemble(t);
    const StrategyVector attack = random_simplex(rng, n);
    const DeltaForms forms = delta_forms(s, pivot, reference);
    const double reconstructed =
        t * forms.delta1.evaluate(attack) + forms.delta2.evaluate(attack);
    const double direct = leader_payoff_form(defence, s).evaluate(attack);
    CHECK(near(reconstructed, direct, 1e-9));
  }
}

TEST_CASE("solve: falling payoff pushes the free marginal to zero") {
  const StrategyVector attack = StrategyVector::validated({0.0, 0.0, 1.0, 0.0});
  const InductionSolution sol =
      solve(example_scenario(), attack, kPivot, kReference);

  CHECK(sol.case_label == InductionCase::Delta1Negative);
  CHECK(near(sol.delta1_value, -364.0 / 11.0, 1e-12));
  CHECK(near(sol.delta2_value, 163.0 / 66.0, 1e-12));
  CHECK(sol.free_marginal == 0.0);
  CHECK_FALSE(sol.clamped);

  const std::vector<double> expected = example_solution_defence();
  for (int j = 0; j < 4; ++j) CHECK(near(sol.defence[j], expected[j], 1e-9));
  CHECK(near(sol.defence[1], 0.1818, 5e-4));
  CHECK(near(sol.defence[2], 0.6515, 5e-4));
  CHECK(near(sol.defence[3], 0.1667, 5e-4));

  // Payoffs at the given attack, and the delta identity.
  CHECK(near(sol.leader_payoff, 163.0 / 66.0, 1e-9));
  CHECK(near(sol.follower_payoff, 16.0 / 33.0, 1e-9));
  CHECK(near(sol.leader_payoff,
             sol.free_marginal * sol.delta1_value + sol.delta2_value, 1e-9));

  // Both payoff forms evaluated at the pure pivot attack.
  CHECK(near(sol.leader_form.coefficients[2], 163.0 / 66.0, 1e-9));
  CHECK(near(sol.follower_form.coefficients[2], 16.0 / 33.0, 1e-9));
}

TEST_CASE("solve: rising payoff pushes the free marginal to the interval top") {
  const StrategyVector attack = StrategyVector::validated({1.0, 0.0, 0.0, 0.0});
  const InductionSolution sol =
      solve(example_scenario(), attack, kPivot, kReference);

  CHECK(sol.case_label == InductionCase::Delta1Positive);
  CHECK(near(sol.delta1_value, 16.0, 1e-12));
  CHECK(near(sol.free_marginal, 43.0 / 168.0, 1e-12));

  // At the top of the interval the pivot marginal hits its box bound.
  CHECK(near(sol.defence[0], 43.0 / 168.0, 1e-9));
  CHECK(near(sol.defence[1], 9.0 / 28.0, 1e-9));
  CHECK(near(sol.defence[2], 0.0, 1e-9));
  CHECK(near(sol.defence[3], 71.0 / 168.0, 1e-9));

  CHECK(near(sol.leader_payoff, 16.0 * 43.0 / 168.0 - 7.0, 1e-9));
  CHECK(near(sol.leader_payoff,
             sol.free_marginal * sol.delta1_value + sol.delta2_value, 1e-9));
}

TEST_CASE("solve: flat payoff reports the interval midpoint") {
  // Mix the pure attacks so the rising and falling contributions cancel:
  // 16*a = (364/11)*(1-a)  =>  a = 91/135.
  const StrategyVector attack =
      StrategyVector::validated({91.0 / 135.0, 0.0, 44.0 / 135.0, 0.0});
  const InductionSolution sol =
      solve(example_scenario(), attack, kPivot, kReference);

  CHECK(sol.case_label == InductionCase::Delta1Zero);
  CHECK(near(sol.delta1_value, 0.0, 1e-9));
  CHECK(near(sol.free_marginal, 0.5 * 43.0 / 168.0, 1e-12));
  CHECK(near(sol.leader_payoff, sol.delta2_value, 1e-9));
}

TEST_CASE("solve surfaces infeasible indifference systems") {
  // Two targets promise the attacker 10 at full protection of the reference
  // scale, forcing their lines to 1 at t=0 while the pivot line is already
  // negative there: no feasible free marginal exists.
  Scenario s;
  s.resource_count = 1;
  s.targets = {
      {1.0, 1.0, 0.0, 1.0},
      {1.0, 1.0, 10.0, 0.0},
      {1.0, 1.0, 10.0, 0.0},
      {1.0, 1.0, 0.0, 1.0},
  };
  const StrategyVector attack = StrategyVector::validated({0.25, 0.25, 0.25, 0.25});
  CHECK(code_of([&] { solve(s, attack, 3, 0); }) ==
        ErrorCode::InfeasibleIndifference);
}

TEST_CASE("solve validates the attack dimension") {
  const StrategyVector attack = StrategyVector::validated({0.5, 0.5});
  CHECK(code_of([&] { solve(example_scenario(), attack, 2, 0); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("scan_max_free_marginal walks down a simple two-line family") {
  // D1 = t, D2 = 1 - 2t: feasible up to t = 0.5.
  EliminationMaps maps;
  maps.pivot = 1;
  maps.reference = 0;
  maps.slope = {1.0, -2.0};
  maps.intercept = {0.0, 1.0};
  CHECK(near(scan_max_free_marginal(maps, 0.25), 0.5, 1e-12));
  CHECK(near(scan_max_free_marginal(maps, 0.2), 0.4, 1e-12));
}

TEST_CASE("scan agrees with the analytic interval top on the example") {
  const EliminationMaps maps = eliminate(example_scenario(), kPivot, kReference);
  const double top = maps.feasible_interval().upper;
  const double scanned = scan_max_free_marginal(maps, 1e-4);
  CHECK(scanned <= top + 1e-12);
  CHECK(near(scanned, top, 1e-4));
}

TEST_CASE("scan reproduces the printed tabulation maximum") {
  // Under the printed (uncorrected) third line the box closes much earlier.
  CHECK(near(scan_max_free_marginal(printed_maps(), 1e-4), 0.0634, 1e-12));
}

TEST_CASE("scan rejects bad steps and infeasible families") {
  const EliminationMaps maps = eliminate(example_scenario(), kPivot, kReference);
  CHECK(code_of([&] { scan_max_free_marginal(maps, 0.0); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { scan_max_free_marginal(maps, -0.1); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { scan_max_free_marginal(maps, 1e-10); }) ==
        ErrorCode::ResolutionTooFine);

  EliminationMaps out_of_box;
  out_of_box.pivot = 1;
  out_of_box.reference = 0;
  out_of_box.slope = {1.0, -1.0};
  out_of_box.intercept = {0.0, -1.5};  // D2 = -1.5 - t: never in [0,1]
  CHECK(code_of([&] { scan_max_free_marginal(out_of_box, 0.1); }) ==
        ErrorCode::InfeasibleIndifference);
}

TEST_CASE("solve_on_grid quantizes only the rising case") {
  const Scenario s = example_scenario();
  const StrategyVector rising = StrategyVector::validated({1.0, 0.0, 0.0, 0.0});
  const InductionSolution grid_sol =
      solve_on_grid(s, rising, kPivot, kReference, 0.05);
  CHECK(grid_sol.case_label == InductionCase::Delta1Positive);
  CHECK(near(grid_sol.free_marginal, 0.25, 1e-12));  // floor(0.2559/0.05)

  const StrategyVector falling = StrategyVector::validated({0.0, 0.0, 1.0, 0.0});
  const InductionSolution same_as_solve =
      solve_on_grid(s, falling, kPivot, kReference, 0.05);
  CHECK(same_as_solve.free_marginal == 0.0);
}

TEST_CASE("full_indifference_residuals at the solved defence") {
  const Scenario s = example_scenario();
  const std::vector<double> residuals =
      full_indifference_residuals(example_solution_defence(), s, kPivot);

  CHECK(residuals[kPivot] == 0.0);
  // Non-pivot targets all pay the attacker 4 while the pivot pays 16/33, so
  // each residual is 4 - 16/33 and they agree pairwise.
  const double expected = 4.0 - 16.0 / 33.0;  // 3.515152
  for (int j : {0, 1, 3}) CHECK(near(residuals[j], expected, 1e-9));
  CHECK(near(residuals[0], residuals[1], 1e-12));
  CHECK(near(residuals[0], residuals[3], 1e-12));
}

TEST_CASE("uniform attacker stakes put every defence at zero residual") {
  Scenario s;
  s.resource_count = 1;
  s.targets.assign(3, TargetProfile{1.0, 1.0, 2.0, 3.0});
  const std::vector<double> residuals =
      full_indifference_residuals({1.0 / 3, 1.0 / 3, 1.0 / 3}, s, 1);
  for (double r : residuals) CHECK(near(r, 0.0, 1e-15));
}

TEST_CASE("assembled marginals are pairwise indifferent for the attacker") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Scenario s = random_scenario(rng, n, 2);
    const int pivot = static_cast<int>(rng() % n);
    int reference = static_cast<int>(rng() % n);
    if (reference == pivot) reference = (reference + 1) % n;

    const EliminationMaps maps = eliminate(s, pivot, reference);
    const std::vector<double> defence = maps.assemble(unit(rng));
    const std::vector<double> residuals =
        full_indifference_residuals(defence, s, pivot);
    double low = 0.0, high = 0.0;
    bool first = true;
    for (int j = 0; j < n; ++j) {
      if (j == pivot) continue;
      low = first ? residuals[j] : std::min(low, residuals[j]);
      high = first ? residuals[j] : std::max(high, residuals[j]);
      first = false;
    }
    CHECK(near(high - low, 0.0, 1e-9));
  }
}

TEST_CASE("full_indifference_residuals validates arguments") {
  const Scenario s = example_scenario();
  CHECK(code_of([&] { full_indifference_residuals({0.5, 0.5}, s, 0); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([&] {
          full_indifference_residuals({0.25, 0.25, 0.25, 0.25}, s, 7);
        }) == ErrorCode::IndexOutOfRange);
}
