#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gnmwis/enumeration.hpp"
#include "gnmwis/io.hpp"

namespace gnmwis::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidSolution = 1,
  kInputFailure = 2,
  kNumericalAnomaly = 3,
};

struct RunConfig {
  std::string command;
  std::vector<std::string> instances;
  double gamma0 = 0.9;
  double gamma1 = 1.5;
  std::size_t iterations = 1000;
  std::size_t starts = 16;
  std::uint64_t seed = 0;
  std::vector<std::string> warm_starts;
  std::string reference_csv;
  std::string output;  // empty or "-" means stdout
  bool trace = false;
  std::size_t threads = 1;
  bool no_timing = false;  // report wall_time_ms as 0 for reproducible files
  bool early_exit = false;
};

/// Throws InputError unless gamma1 >= gamma0 > 0, starts >= 1 and the
/// iteration budget suits the schedule (>= 2 when gamma0 != gamma1).
void validate(const RunConfig& config);

/// Solves one instance. Writes a per-iteration CSV to `trace` when the
/// config asks for it.
struct SolveOutcome {
  SolveResult result;
  int exit_code = kSuccess;
};
SolveOutcome solve_instance(const RunConfig& config, const std::string& path,
                            const std::map<std::string, double>& references,
                            std::ostream* trace);

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& instance, const std::string& solution,
               double gamma, std::ostream& out);

struct AtomsConfig {
  std::size_t n = 0;
  bool all = false;  // rows 1..n
  std::string graph6;
  std::size_t threads = 1;
};
std::string render_census(const std::vector<CensusRow>& rows);
int cmd_atoms(const AtomsConfig& config, std::ostream& out);

int cmd_oracle(const std::string& instance, double gamma,
               std::size_t perturbations, std::uint64_t seed,
               std::ostream& out);

/// Solves every *.mwis file in `directory` (sorted by name) sequentially and
/// prints one row per instance plus a summary. Result files go to
/// config.output when it names a directory.
int cmd_bench(const RunConfig& config, const std::string& directory,
              std::ostream& out, std::ostream& err);

/// Formats a percentage with two decimals, or blank when absent.
std::string format_gap(std::optional<double> gap);

}  // namespace gnmwis::cli
