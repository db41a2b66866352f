#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gnmwis/analysis.hpp"
#include "gnmwis/dynamics.hpp"
#include "gnmwis/errors.hpp"
#include "gnmwis/oracle.hpp"

namespace gnmwis::cli {

namespace fs = std::filesystem;

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string general(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string pad(const std::string& s, std::size_t width, bool left = false) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

GammaSchedule schedule_of(const RunConfig& c) {
  if (c.gamma0 == c.gamma1) return GammaSchedule::constant(c.gamma0, c.iterations);
  return GammaSchedule::linear(c.gamma0, c.gamma1, c.iterations);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

std::string members_text(const VertexSet& s) {
  std::string t = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) t += ",";
    t += std::to_string(s[i]);
  }
  return t + "}";
}

}  // namespace

void validate(const RunConfig& c) {
  if (!(c.gamma0 > 0.0) || !std::isfinite(c.gamma0) || !std::isfinite(c.gamma1)) {
    throw InputError("gamma0 must be a positive finite number");
  }
  if (c.gamma1 < c.gamma0) throw InputError("gamma1 must be >= gamma0");
  if (c.starts < 1) throw InputError("starts must be >= 1");
  if (c.iterations < 1) throw InputError("iterations must be >= 1");
  if (c.gamma0 != c.gamma1 && c.iterations < 2) {
    throw InputError("a linear schedule needs iterations >= 2");
  }
  if (c.threads < 1) throw InputError("threads must be >= 1");
}

std::string format_gap(std::optional<double> gap) {
  return gap ? fixed(*gap, 2) : std::string{};
}

SolveOutcome solve_instance(const RunConfig& config, const std::string& path,
                            const std::map<std::string, double>& references,
                            std::ostream* trace) {
  validate(config);
  const auto g = parse_instance(read_file(path));
  const auto schedule = schedule_of(config);

  std::vector<StateVector> starts;
  std::vector<std::pair<std::string, std::string>> ids;
  if (!config.warm_starts.empty()) {
    for (const auto& w : config.warm_starts) {
      starts.push_back(init_warm(parse_warm_start(read_file(w), g.size()), g.size()));
      ids.emplace_back("warm", fs::path(w).filename().string());
    }
  } else {
    for (std::size_t i = 0; i < config.starts; ++i) {
      starts.push_back(init_random(g.size(), config.seed, i));
      ids.emplace_back("seed", std::to_string(i));
    }
  }

  RunOptions options;
  options.record_trace = config.trace;
  options.early_exit = config.early_exit;
  const auto outcomes = run_multistart(g, starts, schedule, options, config.threads);

  SolveOutcome so;
  auto& r = so.result;
  r.instance_name = fs::path(path).stem().string();
  r.n = g.size();
  r.edge_count = g.edge_count();
  r.schedule = {schedule.gamma0(), schedule.gamma1(), schedule.iterations(),
                schedule.mode() == ScheduleMode::linear ? "linear" : "constant"};
  if (auto it = references.find(r.instance_name); it != references.end()) {
    r.reference_objective = it->second;
  }

  bool anomaly = false;
  bool invalid = false;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    StartRecord s;
    s.kind = ids[i].first;
    s.id = ids[i].second;
    s.objective = o.solution.weight;
    s.valid = o.solution.independent;
    s.maximal = o.solution.maximal;
    s.iterations = o.run.iterations;
    s.wall_time_ms = config.no_timing ? 0.0 : o.wall_time_ms;
    s.fallbacks = o.run.fallbacks;
    if (o.error) {
      s.error = *o.error;
      s.objective = 0.0;
      s.valid = s.maximal = false;
      anomaly = true;
    }
    anomaly = anomaly || s.fallbacks > 0;
    invalid = invalid || !s.valid || !s.maximal;
    r.starts.push_back(std::move(s));

    if (trace && config.trace) {
      if (i == 0) *trace << "start,iteration,gamma,energy,mass,step_norm,fallbacks\n";
      const auto& steps = o.run.trace.steps;
      for (std::size_t k = 0; k < steps.size(); ++k) {
        const auto& st = steps[k];
        *trace << i << ',' << k << ',' << general(st.gamma) << ',' << general(st.energy)
               << ',' << general(st.mass) << ',' << general(st.step_norm) << ','
               << st.fallbacks << '\n';
      }
    }
  }
  finalize_result(r);
  so.exit_code = anomaly ? kNumericalAnomaly : invalid ? kInvalidSolution : kSuccess;
  return so;
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.instances.size() != 1) throw InputError("solve takes exactly one instance");
  std::map<std::string, double> refs;
  if (!config.reference_csv.empty()) refs = parse_reference_csv(read_file(config.reference_csv));
  auto so = solve_instance(config, config.instances.front(), refs, &err);
  const auto& r = so.result;
  write_text(config.output, write_result(r), out);

  std::ostream& summary = (config.output.empty() || config.output == "-") ? err : out;
  summary << r.instance_name << ": best " << general(r.best_objective);
  if (r.gap_percent) {
    summary << ", Best Gap " << format_gap(r.gap_percent) << "%, E[Gap] "
            << format_gap(r.mean_gap_percent) << "%";
  } else if (!config.reference_csv.empty()) {
    summary << " (no reference)";
  }
  summary << '\n';
  return so.exit_code;
}

int cmd_verify(const std::string& instance, const std::string& solution,
               double gamma, std::ostream& out) {
  const auto g = parse_instance(read_file(instance));
  const auto members = parse_solution(read_file(solution));
  const auto m = MisSolution::evaluate(g, members);
  out << "independent: " << (m.independent ? "true" : "false") << '\n'
      << "maximal: " << (m.maximal ? "true" : "false") << '\n'
      << "weight: " << general(m.weight) << '\n';
  if (m.independent && m.maximal) {
    const double s = mis_stability(g, m, gamma);
    out << "stability: " << (std::isinf(s) ? std::string("inf") : general(s))
        << " at gamma " << general(gamma) << (s > 1.0 ? " (stable)" : " (unstable)") << '\n';
    return kSuccess;
  }
  out << "stability: n/a\n";
  return kInvalidSolution;
}

std::string render_census(const std::vector<CensusRow>& rows) {
  std::ostringstream os;
  os << " n  connected  irr-discrete  irr-continuous  reg-discrete  reg-continuous"
        "  atomic  density\n";
  bool notes = false;
  for (const auto& r : rows) {
    os << pad(std::to_string(r.n), 2) << pad(std::to_string(r.connected_total), 11)
       << pad(std::to_string(r.irregular_discrete), 14)
       << pad(std::to_string(r.irregular_continuous), 16)
       << pad(std::to_string(r.regular_discrete), 14)
       << pad(std::to_string(r.regular_continuous), 16)
       << pad(std::to_string(r.atomic_total()), 8)
       << pad(fixed(100.0 * r.density(), 2) + "%", 9) << '\n';
    notes = notes || r.skipped || r.borderline;
  }
  if (notes) {
    for (const auto& r : rows) {
      if (r.skipped) os << "n=" << r.n << ": " << r.skipped << " disconnected records skipped\n";
      if (r.borderline) {
        os << "n=" << r.n << ": " << r.borderline
           << " borderline positivity cases settled in exact arithmetic\n";
      }
    }
  }
  return os.str();
}

int cmd_atoms(const AtomsConfig& config, std::ostream& out) {
  std::vector<CensusRow> rows;
  if (!config.graph6.empty()) {
    std::ifstream in(config.graph6, std::ios::binary);
    if (!in) throw InputError("cannot open '" + config.graph6 + "'");
    rows.push_back(census_from_stream(in, config.threads));
  } else {
    if (config.n < 1 || config.n > kMaxEnumerationOrder) {
      throw InputError("atoms --n must lie in 1.." + std::to_string(kMaxEnumerationOrder) +
                       "; use --graph6 for larger orders");
    }
    for (std::size_t k = config.all ? 1 : config.n; k <= config.n; ++k) {
      rows.push_back(census(k, config.threads));
    }
  }
  out << render_census(rows);
  return kSuccess;
}

int cmd_oracle(const std::string& instance, double gamma,
               std::size_t perturbations, std::uint64_t seed,
               std::ostream& out) {
  const auto g = parse_instance(read_file(instance));
  const auto report = correspondence_check(g, gamma, perturbations, seed);
  out << "optimum " << members_text(report.optimum.members) << " weight "
      << general(report.optimum.weight) << '\n'
      << "gamma " << general(gamma) << ", " << report.entries.size()
      << " maximal independent sets\n";
  out << pad("set", 20, true) << pad("weight", 14) << pad("stability", 12)
      << pad("Q", 16) << pad("1/W", 16) << "  local-min  note\n";
  for (const auto& e : report.entries) {
    const std::string stab = std::isinf(e.stability) ? "inf" : fixed(e.stability, 4);
    std::string note = e.violation ? "VIOLATION" : e.marginal ? "marginal" : "";
    out << pad(members_text(e.mis.members), 20, true) << ' ' << pad(general(e.mis.weight), 13)
        << ' ' << pad(stab, 11) << ' ' << pad(general(e.q_value), 15) << ' '
        << pad(general(1.0 / e.mis.weight), 15) << pad(e.local_min_verified ? "yes" : "no", 11)
        << (note.empty() ? "" : "  " + note) << '\n';
  }
  out << "violations: " << report.violations << '\n';
  return report.violations == 0 ? kSuccess : kInvalidSolution;
}

int cmd_bench(const RunConfig& config, const std::string& directory,
              std::ostream& out, std::ostream& err) {
  validate(config);
  if (!fs::is_directory(directory)) throw InputError("not a directory: '" + directory + "'");
  std::map<std::string, double> refs;
  if (!config.reference_csv.empty()) refs = parse_reference_csv(read_file(config.reference_csv));

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".mwis") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  const bool write_files = !config.output.empty() && config.output != "-";
  if (write_files) fs::create_directories(config.output);

  out << pad("instance", 24, true) << pad("n", 8) << pad("m", 10) << pad("best", 14)
      << pad("reference", 14) << pad("E[Gap]%", 10) << pad("BestGap%", 10)
      << pad("time_ms", 12) << '\n';

  int code = kSuccess;
  std::size_t solved = 0, with_ref = 0;
  double sum_mean_gap = 0.0, sum_best_gap = 0.0, sum_time = 0.0;
  for (const auto& file : files) {
    SolveOutcome so;
    try {
      so = solve_instance(config, file.string(), refs, nullptr);
    } catch (const InputError& e) {
      err << file.filename().string() << ": " << e.what() << '\n';
      code = std::max(code, static_cast<int>(kInputFailure));
      continue;
    }
    const auto& r = so.result;
    code = std::max(code, so.exit_code);
    if (!r.reference_objective) err << r.instance_name << ": no reference objective\n";

    double time = 0.0;
    for (const auto& s : r.starts) time += s.wall_time_ms;
    time /= static_cast<double>(std::max<std::size_t>(1, r.starts.size()));

    out << pad(r.instance_name, 24, true) << pad(std::to_string(r.n), 8)
        << pad(std::to_string(r.edge_count), 10) << pad(general(r.best_objective), 14)
        << pad(r.reference_objective ? general(*r.reference_objective) : "", 14)
        << pad(format_gap(r.mean_gap_percent), 10) << pad(format_gap(r.gap_percent), 10)
        << pad(fixed(time, 2), 12) << '\n';

    ++solved;
    sum_time += time;
    if (r.gap_percent && r.mean_gap_percent) {
      ++with_ref;
      sum_mean_gap += *r.mean_gap_percent;
      sum_best_gap += *r.gap_percent;
    }
    if (write_files) {
      write_text((fs::path(config.output) / (r.instance_name + ".json")).string(),
                 write_result(r), out);
    }
  }
  out << "summary: " << solved << " instances, " << with_ref << " with reference";
  if (with_ref) {
    out << ", mean E[Gap] " << fixed(sum_mean_gap / with_ref, 2) << "%, mean Best Gap "
        << fixed(sum_best_gap / with_ref, 2) << "%";
  }
  if (solved) out << ", mean time " << fixed(sum_time / solved, 2) << " ms";
  out << '\n';
  return code;
}

}  // namespace gnmwis::cli
