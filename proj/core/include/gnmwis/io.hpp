#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gnmwis/graph.hpp"
#include "gnmwis/simple_graph.hpp"

namespace gnmwis {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Instance format, one record per line:
//   c <anything>         comment
//   p mwis <n> <m>       problem line, exactly once, before any n/e line
//   n <id> <weight>      one per vertex, ids 1-based
//   e <u> <v>            undirected edge, 1-based
// Any line ending is accepted. Edges may repeat; `m` must equal either the
// number of e lines or the number of distinct edges.
WeightedGraph parse_instance(std::string_view text);
/// Canonical rendering: u < v, ascending, LF endings, weights round-trip.
std::string write_instance(const WeightedGraph& g);

/// Exactly n non-empty lines, one finite decimal number each.
std::vector<double> parse_warm_start(std::string_view text, std::size_t n);

/// One graph6 record, n <= 62. Trailing whitespace is ignored.
SimpleGraph parse_graph6(std::string_view line);
std::string write_graph6(const SimpleGraph& g);

struct StartRecord {
  std::string kind;  // "seed" or "warm"
  std::string id;    // stream index for seeds, file name for warm starts
  double objective = 0.0;
  bool valid = false;
  bool maximal = false;
  std::size_t iterations = 0;
  double wall_time_ms = 0.0;
  std::size_t fallbacks = 0;
  std::string error;  // non-empty when the start aborted

  friend bool operator==(const StartRecord&, const StartRecord&) = default;
};

struct ScheduleParams {
  double gamma0 = 0.9;
  double gamma1 = 1.5;
  std::size_t iterations = 1000;
  std::string mode = "linear";

  friend bool operator==(const ScheduleParams&, const ScheduleParams&) = default;
};

struct SolveResult {
  std::string instance_name;
  std::size_t n = 0;
  std::size_t edge_count = 0;
  std::vector<StartRecord> starts;
  double best_objective = 0.0;
  std::optional<double> reference_objective;
  std::optional<double> gap_percent;       // Best Gap
  std::optional<double> mean_gap_percent;  // E[Gap] over completed starts
  ScheduleParams schedule;
  std::string artifact_version = kArtifactVersion;

  friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

/// (reference - objective) / reference * 100; empty unless reference > 0.
std::optional<double> gap_percent(double objective, std::optional<double> reference);

/// Sets best_objective from the starts and fills both gap fields from
/// reference_objective.
void finalize_result(SolveResult& r);

/// JSON with the field names above, reals at 12 significant digits.
std::string write_result(const SolveResult& r);
SolveResult parse_result(std::string_view text);

/// Two columns "name,objective"; '#' comments, blank lines and a header row
/// whose second field is not numeric are skipped.
std::map<std::string, double> parse_reference_csv(std::string_view text);

/// Member indices (0-based) separated by whitespace, commas or braces.
VertexSet parse_solution(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace gnmwis
