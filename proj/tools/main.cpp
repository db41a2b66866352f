#include <algorithm>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "gnmwis/errors.hpp"

using namespace gnmwis;

namespace {

void add_run_flags(CLI::App* cmd, cli::RunConfig& c) {
  cmd->add_option("--gamma0", c.gamma0, "Initial gamma")->capture_default_str();
  cmd->add_option("--gamma1", c.gamma1, "Final gamma")->capture_default_str();
  cmd->add_option("--iterations", c.iterations, "Iterations per start")->capture_default_str();
  cmd->add_option("--starts", c.starts, "Random starts (ignored with --warm-start)")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for random starts")->capture_default_str();
  cmd->add_option("--warm-start", c.warm_starts, "Fractional start vector file, repeatable");
  cmd->add_option("--reference", c.reference_csv, "CSV of name,reference objective");
  cmd->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  cmd->add_flag("--trace", c.trace, "Per-iteration CSV on stderr");
  cmd->add_flag("--no-timing", c.no_timing, "Report wall times as 0");
  cmd->add_flag("--early-exit", c.early_exit, "Stop once gamma1 is reached and the state is still");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph normalization dynamics for maximum weight independent set"};
  app.require_subcommand(1);

  cli::RunConfig run;
  run.threads = std::max(1u, std::thread::hardware_concurrency());

  auto* solve = app.add_subcommand("solve", "Run the dynamics on one instance");
  std::string instance;
  solve->add_option("instance", instance, "Instance file")->required();
  solve->add_option("-o,--output", run.output, "Result file (default stdout)");
  add_run_flags(solve, run);

  auto* verify = app.add_subcommand("verify", "Check a vertex set against an instance");
  std::string solution;
  double gamma = 1.5;
  verify->add_option("instance", instance, "Instance file")->required();
  verify->add_option("solution", solution, "File listing 0-based member indices")->required();
  verify->add_option("--gamma", gamma, "Gamma for the stability score")->capture_default_str();

  auto* atoms = app.add_subcommand("atoms", "Census of atomic graphs");
  cli::AtomsConfig ac;
  ac.threads = run.threads;
  auto* n_opt = atoms->add_option("--n", ac.n, "Order 1..7");
  atoms->add_flag("--all", ac.all, "Rows 1..n");
  auto* g6_opt = atoms->add_option("--graph6", ac.graph6, "graph6 stream instead of --n");
  atoms->add_option("--threads", ac.threads, "Worker threads");
  n_opt->excludes(g6_opt);

  auto* oracle = app.add_subcommand("oracle", "Exact MIS correspondence check (n <= 16)");
  std::size_t perturbations = 200;
  std::uint64_t oracle_seed = 0;
  oracle->add_option("instance", instance, "Instance file")->required();
  oracle->add_option("--gamma", gamma, "Gamma (> 1)")->capture_default_str();
  oracle->add_option("--perturbations", perturbations, "Tangent samples per set")
      ->capture_default_str();
  oracle->add_option("--seed", oracle_seed, "Sampling seed")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Solve every *.mwis file in a directory");
  std::string directory;
  bench->add_option("directory", directory, "Instance directory")->required();
  bench->add_option("-o,--output", run.output, "Directory for per-instance result files");
  add_run_flags(bench, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputFailure;
  }

  try {
    if (*solve) {
      run.command = "solve";
      run.instances = {instance};
      return cli::cmd_solve(run, std::cout, std::cerr);
    }
    if (*verify) return cli::cmd_verify(instance, solution, gamma, std::cout);
    if (*atoms) {
      if (ac.graph6.empty() && ac.n == 0) throw InputError("atoms needs --n or --graph6");
      return cli::cmd_atoms(ac, std::cout);
    }
    if (*oracle) return cli::cmd_oracle(instance, gamma, perturbations, oracle_seed, std::cout);
    if (*bench) {
      run.command = "bench";
      return cli::cmd_bench(run, directory, std::cout, std::cerr);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kInputFailure;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return cli::kNumericalAnomaly;
  }
  return cli::kSuccess;
}
