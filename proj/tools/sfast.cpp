#include <CLI11.hpp>
#include <iostream>

#include "sfast/cli.hpp"

using namespace sfast;
using namespace sfast::cli;

int main(int argc, char** argv) {
  CLI::App app{"Subset feedback arc set in tournaments: kernelization and chromatic-coding solver"};
  app.require_subcommand(1);

  KernelizeArgs kz;
  auto* kernelize_cmd = app.add_subcommand("kernelize", "apply the reduction rules and write the kernel");
  kernelize_cmd->add_option("instance", kz.input, "instance file")->required()->check(CLI::ExistingFile);
  kernelize_cmd->add_option("-o,--output", kz.output, "kernel instance file");
  kernelize_cmd->add_option("--trace", kz.trace, "rule trace file (one JSON object per line)");
  kernelize_cmd->add_flag("--json", kz.json, "print the summary as JSON");
  kernelize_cmd->add_flag("--wide-threshold", kz.wide_threshold, "arc swap at class size 7k+5 instead of 6k+7");

  SolveArgs sv;
  auto* solve_cmd = app.add_subcommand("solve", "kernelize, then solve the kernel by randomized coloring and DP");
  solve_cmd->add_option("instance", sv.input, "instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("-o,--output", sv.output, "solution file (r <u> <v> lines)");
  solve_cmd->add_option("--trace", sv.trace, "rule trace file");
  solve_cmd->add_option("--seed", sv.seed, "coloring seed")->capture_default_str();
  solve_cmd->add_option("--trials", sv.trials, "number of colorings (0: default for the kernel budget)")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--workers", sv.workers, "parallel trial workers")->check(CLI::PositiveNumber)->capture_default_str();
  solve_cmd->add_flag("--json", sv.json, "print the summary as JSON");
  solve_cmd->add_flag("--first-success", sv.first_success, "stop at the first coloring that fits the budget");
  solve_cmd->add_flag("--wide-threshold", sv.wide_threshold, "arc swap at class size 7k+5 instead of 6k+7");

  VerifyArgs vf;
  std::string mode = "reversal";
  auto* verify_cmd = app.add_subcommand("verify", "check a solution file against an instance");
  verify_cmd->add_option("instance", vf.input, "instance file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("solution", vf.solution, "solution file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--mode", mode, "deletion or reversal")
      ->check(CLI::IsMember({"deletion", "reversal"}))
      ->capture_default_str();
  verify_cmd->add_flag("--json", vf.json, "print the result as JSON");

  OracleArgs oc;
  std::string method = "deletion";
  auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum by exhaustive search (small instances)");
  oracle_cmd->add_option("instance", oc.input, "instance file")->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--kmax", oc.kmax, "largest solution size to search")->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--method", method, "deletion or orderings")
      ->check(CLI::IsMember({"deletion", "orderings"}))
      ->capture_default_str();
  oracle_cmd->add_option("--budget", oc.budget, "search node budget")->capture_default_str();
  oracle_cmd->add_flag("--json", oc.json, "print the result as JSON");

  GenArgs gn;
  std::optional<int> planted;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random or planted instance");
  gen_cmd->add_option("--n", gn.spec.n, "vertices")->required()->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--s", gn.spec.s_count, "terminals")->required()->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gn.spec.seed, "generator seed")->capture_default_str();
  gen_cmd->add_option("--k", gn.spec.k, "budget (random instances)")->capture_default_str();
  gen_cmd->add_option("--planted", planted, "plant a solution of this size; the budget becomes this size")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("-o,--output", gn.output, "instance file (stdout when omitted)");
  gen_cmd->add_option("--planted-out", gn.planted_output, "write the planted arcs as a solution file");

  BenchArgs bn;
  auto* bench_cmd = app.add_subcommand("bench", "solve every *.sfast file of a directory and print CSV");
  bench_cmd->add_option("corpus", bn.corpus, "directory of instance files")->required()->check(CLI::ExistingDirectory);
  bench_cmd->add_option("-o,--output", bn.output, "CSV file (stdout when omitted)");
  bench_cmd->add_option("--seed", bn.seed, "coloring seed")->capture_default_str();
  bench_cmd->add_option("--trials", bn.trials, "colorings per instance (0: default)")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--workers", bn.workers, "parallel trial workers")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::error;
  }

  if (*kernelize_cmd) return cmd_kernelize(kz, std::cout, std::cerr);
  if (*solve_cmd) return cmd_solve(sv, std::cout, std::cerr);
  if (*verify_cmd) {
    vf.mode = mode == "deletion" ? SolutionMode::deletion : SolutionMode::reversal;
    return cmd_verify(vf, std::cout, std::cerr);
  }
  if (*oracle_cmd) {
    oc.orderings = method == "orderings";
    return cmd_oracle(oc, std::cout, std::cerr);
  }
  if (*gen_cmd) {
    gn.spec.planted_k = planted;
    return cmd_gen(gn, std::cout, std::cerr);
  }
  if (*bench_cmd) return cmd_bench(bn, std::cout, std::cerr);
  return exit_code::error;
}
