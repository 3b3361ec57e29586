#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stackgame/allocation.hpp"
#include "stackgame/induction.hpp"
#include "stackgame/model.hpp"
#include "stackgame/oracle.hpp"
#include "stackgame/scenario_io.hpp"

namespace {

using namespace stackgame;

// Fixed 6-decimal rendering for every real the tool emits; "-0" is folded
// into "0" so output bytes don't depend on how a zero was produced.
std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  std::string text(buf);
  if (text == "-0.000000") text = "0.000000";
  return text;
}

std::string format_tolerance(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

std::string join_reals(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += ',';
    out += format_real(values[i]);
  }
  return out;
}

// Flags carry 1-based indices to match the target labels; everything behind
// the flag parser is 0-based.
int to_zero_based(int value, int target_count, const char* flag) {
  if (value < 1 || value > target_count) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s must be between 1 and %d", flag,
                  target_count);
    throw GameError(ErrorCode::IndexOutOfRange, buf);
  }
  return value - 1;
}

void print_form(const char* label, const AttackLinearForm& form) {
  std::cout << label << "_coefficients: " << join_reals(form.coefficients)
            << "\n"
            << label << "_constant: " << format_real(form.constant) << "\n";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfeasibleIndifference: return 3;
    case ErrorCode::IoFailure: return 4;
    case ErrorCode::ResolutionTooFine: return 5;
    default: return 2;  // validation, parsing, bad indices, bad arguments
  }
}

struct SolveOptions {
  std::string scenario_path;
  std::vector<double> attack;
  int pivot = 0;
  int reference = 0;
  double scan_step = 0.0;
  bool has_scan_step = false;
  double tolerance = 1e-9;
};

int run_solve(const SolveOptions& options) {
  const Scenario scenario = load_scenario(options.scenario_path);
  const int pivot = to_zero_based(options.pivot, scenario.size(), "--pivot");
  const int reference =
      to_zero_based(options.reference, scenario.size(), "--ref");
  const StrategyVector attack = StrategyVector::validated(options.attack);
  const InductionSolution solution =
      options.has_scan_step
          ? solve_on_grid(scenario, attack, pivot, reference,
                          options.scan_step, options.tolerance)
          : solve(scenario, attack, pivot, reference, options.tolerance);

  std::cout << "pivot: " << options.pivot << "\n"
            << "reference: " << options.reference << "\n";
  if (options.has_scan_step) {
    std::cout << "scan_step: " << format_real(options.scan_step) << "\n";
  }
  std::cout << "case: " << to_string(solution.case_label) << "\n"
            << "delta1: " << format_real(solution.delta1_value) << "\n"
            << "delta2: " << format_real(solution.delta2_value) << "\n"
            << "interval: [" << format_real(solution.interval.lower) << ", "
            << format_real(solution.interval.upper) << "]\n"
            << "free_marginal: " << format_real(solution.free_marginal) << "\n"
            << "clamped: " << (solution.clamped ? "true" : "false") << "\n"
            << "defence: " << join_reals(solution.defence.probabilities())
            << "\n";
  print_form("leader_form", solution.leader_form);
  print_form("follower_form", solution.follower_form);
  std::cout << "leader_payoff: " << format_real(solution.leader_payoff) << "\n"
            << "follower_payoff: " << format_real(solution.follower_payoff)
            << "\n";
  return 0;
}

struct EvaluateOptions {
  std::string scenario_path;
  std::vector<double> defence;
  std::vector<double> attack;
};

int run_evaluate(const EvaluateOptions& options) {
  const Scenario scenario = load_scenario(options.scenario_path);
  const StrategyVector attack = StrategyVector::validated(options.attack);
  const Payoffs payoffs = expected_payoffs(options.defence, attack, scenario);
  std::cout << "leader_payoff: " << format_real(payoffs.leader) << "\n"
            << "follower_payoff: " << format_real(payoffs.follower) << "\n";
  return 0;
}

struct SweepOptions {
  std::string scenario_path;
  std::vector<double> defence;
  double step = 0.0;
  std::string out_path;
};

int run_sweep(const SweepOptions& options) {
  const Scenario scenario = load_scenario(options.scenario_path);
  const int n = scenario.size();
  if (static_cast<int>(options.defence.size()) != n) {
    throw GameError(ErrorCode::DimensionMismatch,
                    "--defence length does not match target count");
  }
  const int steps = grid_steps(options.step);

  std::ofstream out(options.out_path, std::ios::binary);
  if (!out) {
    throw GameError(ErrorCode::IoFailure,
                    "cannot write output file: " + options.out_path);
  }
  for (int j = 0; j < n; ++j) out << "A" << (j + 1) << ",";
  out << "leader_payoff,follower_payoff\n";

  std::uint64_t rows = 0;
  std::vector<double> attack_values(static_cast<std::size_t>(n), 0.0);
  for_each_simplex_grid_point(n, steps, [&](const std::vector<int>& point) {
    for (int j = 0; j < n; ++j) {
      attack_values[static_cast<std::size_t>(j)] =
          static_cast<double>(point[static_cast<std::size_t>(j)]) / steps;
    }
    const StrategyVector attack = StrategyVector::validated(attack_values);
    const Payoffs payoffs = expected_payoffs(options.defence, attack, scenario);
    out << join_reals(attack.probabilities()) << ','
        << format_real(payoffs.leader) << ','
        << format_real(payoffs.follower) << "\n";
    ++rows;
  });
  out.flush();
  if (!out) {
    throw GameError(ErrorCode::IoFailure,
                    "error while writing output file: " + options.out_path);
  }
  std::cout << "wrote " << rows << " rows to " << options.out_path << "\n";
  return 0;
}

struct OracleOptions {
  std::string scenario_path;
  double resolution = 0.0;
  std::string tie_break = "favor_leader";
};

int run_oracle(const OracleOptions& options) {
  const Scenario scenario = load_scenario(options.scenario_path);
  const TieBreak tie_break = tie_break_from_name(options.tie_break);
  const OracleResult result =
      stackelberg_grid(scenario, options.resolution, tie_break);
  std::cout << "resolution: " << format_real(result.resolution) << "\n"
            << "tie_break: " << to_string(tie_break) << "\n"
            << "defence: " << join_reals(result.defence.probabilities()) << "\n"
            << "attacked_target: " << (result.attacked_target + 1) << "\n"
            << "attack: " << join_reals(result.attack.probabilities()) << "\n"
            << "leader_payoff: " << format_real(result.leader_payoff) << "\n"
            << "follower_payoff: " << format_real(result.follower_payoff)
            << "\n";
  return 0;
}

struct VerifyOptions {
  std::string scenario_path;
  std::vector<double> defence;
  int pivot = 0;
  int reference = 0;
  bool has_reference = false;
};

int run_verify(const VerifyOptions& options) {
  const Scenario scenario = load_scenario(options.scenario_path);
  const int pivot = to_zero_based(options.pivot, scenario.size(), "--pivot");
  // Default reference: the lowest non-pivot target, the usual choice when
  // reading solutions straight off a worked example.
  int reference;
  if (options.has_reference) {
    reference = to_zero_based(options.reference, scenario.size(), "--ref");
  } else {
    reference = pivot == 0 ? 1 : 0;
  }
  const SolutionAudit audit =
      audit_defence(options.defence, scenario, pivot, reference);
  for (const AuditCheck& check : audit.checks) {
    std::cout << "check " << check.name << ": "
              << (check.passed ? "PASS" : "FAIL") << " (deviation "
              << format_real(check.deviation) << ", tolerance "
              << format_tolerance(check.tolerance) << ")\n";
  }
  const bool ok = audit.all_passed();
  std::cout << "audit: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 6;
}

struct DecomposeOptions {
  std::string scenario_path;
  std::vector<double> defence;
  std::string out_path;
};

int run_decompose(const DecomposeOptions& options) {
  const Scenario scenario = load_scenario(options.scenario_path);
  const StrategyVector defence = StrategyVector::validated(options.defence);
  if (defence.size() != scenario.size()) {
    throw GameError(ErrorCode::DimensionMismatch,
                    "--defence length does not match target count");
  }
  const AssignmentMatrix matrix =
      assignment_from_marginals(defence, scenario.resource_count);

  std::ofstream out(options.out_path, std::ios::binary);
  if (!out) {
    throw GameError(ErrorCode::IoFailure,
                    "cannot write output file: " + options.out_path);
  }
  for (int s = 0; s < matrix.resources; ++s) {
    out << (s == 0 ? "" : ",") << "S" << (s + 1);
  }
  out << "\n";
  for (int j = 0; j < matrix.targets; ++j) {
    for (int s = 0; s < matrix.resources; ++s) {
      out << (s == 0 ? "" : ",") << format_real(matrix.at(j, s));
    }
    out << "\n";
  }
  out.flush();
  if (!out) {
    throw GameError(ErrorCode::IoFailure,
                    "error while writing output file: " + options.out_path);
  }
  std::cout << "wrote " << matrix.targets << "x" << matrix.resources
            << " matrix to " << options.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leader-follower coverage game: backward-induction solver, "
               "payoff evaluator, and brute-force oracle"};
  app.require_subcommand(1);
  int exit_code = 0;

  SolveOptions solve_options;
  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "Backward-induction solution for a fixed attack vector");
  solve_cmd->add_option("--scenario", solve_options.scenario_path,
                        "scenario JSON file")->required();
  solve_cmd->add_option("--attack", solve_options.attack,
                        "attack probabilities, comma-separated")
      ->delimiter(',')->required();
  solve_cmd->add_option("--pivot", solve_options.pivot,
                        "pivot target (1-based)")->required();
  solve_cmd->add_option("--ref", solve_options.reference,
                        "reference target (1-based)")->required();
  CLI::Option* scan_step_opt =
      solve_cmd->add_option("--scan-step", solve_options.scan_step,
                            "pick the rising-case free marginal by grid scan "
                            "with this step");
  solve_cmd->add_option("--tolerance", solve_options.tolerance,
                        "threshold separating the delta1 sign cases");
  solve_cmd->callback([&]() {
    solve_options.has_scan_step = scan_step_opt->count() > 0;
    exit_code = run_solve(solve_options);
  });

  EvaluateOptions evaluate_options;
  CLI::App* evaluate_cmd = app.add_subcommand(
      "evaluate", "Expected payoffs for a defence/attack pair");
  evaluate_cmd->add_option("--scenario", evaluate_options.scenario_path,
                           "scenario JSON file")->required();
  evaluate_cmd->add_option("--defence", evaluate_options.defence,
                           "protection marginals, comma-separated")
      ->delimiter(',')->required();
  evaluate_cmd->add_option("--attack", evaluate_options.attack,
                           "attack probabilities, comma-separated")
      ->delimiter(',')->required();
  evaluate_cmd->callback([&]() { exit_code = run_evaluate(evaluate_options); });

  SweepOptions sweep_options;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Payoff table over the attack simplex grid, written as CSV");
  sweep_cmd->add_option("--scenario", sweep_options.scenario_path,
                        "scenario JSON file")->required();
  sweep_cmd->add_option("--defence", sweep_options.defence,
                        "protection marginals, comma-separated")
      ->delimiter(',')->required();
  sweep_cmd->add_option("--step", sweep_options.step,
                        "attack grid step; must divide 1")->required();
  sweep_cmd->add_option("--out", sweep_options.out_path,
                        "output CSV path")->required();
  sweep_cmd->callback([&]() { exit_code = run_sweep(sweep_options); });

  OracleOptions oracle_options;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Brute-force grid search for the leader's best commitment");
  oracle_cmd->add_option("--scenario", oracle_options.scenario_path,
                         "scenario JSON file")->required();
  oracle_cmd->add_option("--resolution", oracle_options.resolution,
                         "defence grid resolution; must divide 1")->required();
  oracle_cmd->add_option("--tie-break", oracle_options.tie_break,
                         "favor_leader, favor_follower, or lowest_index");
  oracle_cmd->callback([&]() { exit_code = run_oracle(oracle_options); });

  VerifyOptions verify_options;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Audit a candidate defence vector against the solution "
                "properties");
  verify_cmd->add_option("--scenario", verify_options.scenario_path,
                         "scenario JSON file")->required();
  verify_cmd->add_option("--defence", verify_options.defence,
                         "candidate defence vector, comma-separated")
      ->delimiter(',')->required();
  verify_cmd->add_option("--pivot", verify_options.pivot,
                         "pivot target (1-based)")->required();
  CLI::Option* ref_opt =
      verify_cmd->add_option("--ref", verify_options.reference,
                             "reference target (1-based); default: lowest "
                             "non-pivot");
  verify_cmd->callback([&]() {
    verify_options.has_reference = ref_opt->count() > 0;
    exit_code = run_verify(verify_options);
  });

  DecomposeOptions decompose_options;
  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose", "Assignment matrix realizing a defence vector, written as "
                   "CSV");
  decompose_cmd->add_option("--scenario", decompose_options.scenario_path,
                            "scenario JSON file")->required();
  decompose_cmd->add_option("--defence", decompose_options.defence,
                            "protection marginals, comma-separated")
      ->delimiter(',')->required();
  decompose_cmd->add_option("--out", decompose_options.out_path,
                            "output CSV path")->required();
  decompose_cmd->callback([&]() { exit_code = run_decompose(decompose_options); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const stackgame::GameError& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
