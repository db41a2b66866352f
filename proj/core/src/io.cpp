#include "gnmwis/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "gnmwis/errors.hpp"

namespace gnmwis {

namespace {

/// Splits on LF, CRLF or lone CR.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n' || text[i] == '\r') {
      lines.push_back(text.substr(start, i - start));
      if (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      start = i + 1;
    }
  }
  if (start < text.size()) lines.push_back(text.substr(start));
  return lines;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\v' || c == '\f' || c == '\r' || c == '\n';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t b = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> to_index(std::string_view s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string at_line(std::size_t lineno) {
  return "line " + std::to_string(lineno) + ": ";
}

std::string shortest(double w) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, w);
    if (std::strtod(buf, nullptr) == w) break;
  }
  return buf;
}

double round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace

WeightedGraph parse_instance(std::string_view text) {
  std::optional<std::pair<std::uint64_t, std::uint64_t>> header;
  std::vector<std::optional<double>> weights;
  std::vector<Edge> edges;
  std::size_t lineno = 0;

  for (auto raw : split_lines(text)) {
    ++lineno;
    const auto tok = tokens(raw);
    if (tok.empty() || tok[0] == "c") continue;
    const auto kind = tok[0];
    if (kind == "p") {
      if (header) throw InputError(at_line(lineno) + "second problem line");
      if (tok.size() != 4 || tok[1] != "mwis") {
        throw InputError(at_line(lineno) + "expected 'p mwis <n> <m>'");
      }
      auto n = to_index(tok[2]);
      auto m = to_index(tok[3]);
      if (!n || !m || *n > 0xFFFFFFFFull) {
        throw InputError(at_line(lineno) + "bad vertex or edge count");
      }
      header.emplace(*n, *m);
      weights.assign(*n, std::nullopt);
      continue;
    }
    if (kind != "n" && kind != "e") {
      throw InputError(at_line(lineno) + "unknown line type '" + std::string(kind) + "'");
    }
    if (!header) throw InputError(at_line(lineno) + "record before problem line");
    if (tok.size() != 3) throw InputError(at_line(lineno) + "expected two fields");
    const std::uint64_t n = header->first;
    auto id = to_index(tok[1]);
    if (!id || *id < 1 || *id > n) {
      throw InputError(at_line(lineno) + "vertex id out of range 1.." + std::to_string(n));
    }
    if (kind == "n") {
      auto w = to_double(tok[2]);
      if (!w) throw InputError(at_line(lineno) + "unparsable weight");
      if (weights[*id - 1]) {
        throw InputError(at_line(lineno) + "second weight for vertex " + std::to_string(*id));
      }
      weights[*id - 1] = *w;
    } else {
      auto v = to_index(tok[2]);
      if (!v || *v < 1 || *v > n) {
        throw InputError(at_line(lineno) + "vertex id out of range 1.." + std::to_string(n));
      }
      edges.push_back({static_cast<Vertex>(*id - 1), static_cast<Vertex>(*v - 1)});
    }
  }
  if (!header) throw InputError("missing problem line");

  std::vector<double> w(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!weights[i]) throw InputError("missing weight for vertex " + std::to_string(i + 1));
    w[i] = *weights[i];
  }
  auto g = build_graph(w.size(), edges, w);
  const std::uint64_t m = header->second;
  if (m != edges.size() && m != g.edge_count()) {
    throw InputError("problem line declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()) + " edge lines (" +
                     std::to_string(g.edge_count()) + " distinct)");
  }
  return g;
}

std::string write_instance(const WeightedGraph& g) {
  std::string out = "p mwis " + std::to_string(g.size()) + " " +
                    std::to_string(g.edge_count()) + "\n";
  for (Vertex i = 0; i < g.size(); ++i) {
    out += "n " + std::to_string(i + 1) + " " + shortest(g.weight(i)) + "\n";
  }
  for (const auto& e : g.edges()) {
    out += "e " + std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + "\n";
  }
  return out;
}

std::vector<double> parse_warm_start(std::string_view text, std::size_t n) {
  std::vector<double> out;
  std::size_t lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty()) continue;
    auto v = to_double(line);
    if (!v) throw InputError(at_line(lineno) + "unparsable number '" + std::string(line) + "'");
    if (!std::isfinite(*v)) throw InputError(at_line(lineno) + "non-finite value");
    out.push_back(*v);
  }
  if (out.size() != n) {
    throw InputError("warm start has " + std::to_string(out.size()) +
                     " values, graph has " + std::to_string(n) + " vertices");
  }
  return out;
}

SimpleGraph parse_graph6(std::string_view line) {
  line = trim(line);
  if (line.empty()) throw InputError("graph6: empty record");
  for (char c : line) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 63 || u > 126) throw InputError("graph6: character outside [63,126]");
  }
  const std::size_t n = static_cast<unsigned char>(line[0]) - 63;
  if (n > 62) throw InputError("graph6: size byte for n > 62 is not supported");
  const std::size_t bits = n * (n - (n > 0)) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (line.size() != 1 + bytes) {
    throw InputError("graph6: payload length " + std::to_string(line.size() - 1) +
                     ", expected " + std::to_string(bytes));
  }
  SimpleGraph g(n);
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      const unsigned chunk = static_cast<unsigned char>(line[1 + k / 6]) - 63;
      if ((chunk >> (5 - k % 6)) & 1u) g.add_edge(i, j);
    }
  }
  return g;
}

std::string write_graph6(const SimpleGraph& g) {
  const std::size_t n = g.size();
  if (n > 62) throw InputError("graph6: n > 62 is not supported");
  std::string out(1, static_cast<char>(63 + n));
  unsigned chunk = 0;
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      chunk = (chunk << 1) | (g.has_edge(i, j) ? 1u : 0u);
      if (k % 6 == 5) {
        out.push_back(static_cast<char>(63 + chunk));
        chunk = 0;
      }
    }
  }
  if (k % 6 != 0) out.push_back(static_cast<char>(63 + (chunk << (6 - k % 6))));
  return out;
}

std::optional<double> gap_percent(double objective, std::optional<double> reference) {
  if (!reference || !(*reference > 0.0)) return std::nullopt;
  return (*reference - objective) / *reference * 100.0;
}

void finalize_result(SolveResult& r) {
  r.best_objective = 0.0;
  double sum = 0.0;
  std::size_t done = 0;
  for (const auto& s : r.starts) {
    if (!s.error.empty()) continue;
    r.best_objective = std::max(r.best_objective, s.objective);
    sum += s.objective;
    ++done;
  }
  r.gap_percent = gap_percent(r.best_objective, r.reference_objective);
  r.mean_gap_percent.reset();
  if (done > 0) r.mean_gap_percent = gap_percent(sum / done, r.reference_objective);
}

std::string write_result(const SolveResult& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["instance_name"] = r.instance_name;
  j["n"] = r.n;
  j["edge_count"] = r.edge_count;
  ordered_json starts = ordered_json::array();
  for (const auto& s : r.starts) {
    ordered_json e;
    e["kind"] = s.kind;
    e["id"] = s.id;
    e["objective"] = round12(s.objective);
    e["valid"] = s.valid;
    e["maximal"] = s.maximal;
    e["iterations"] = s.iterations;
    e["wall_time_ms"] = round12(s.wall_time_ms);
    e["fallbacks"] = s.fallbacks;
    if (!s.error.empty()) e["error"] = s.error;
    starts.push_back(std::move(e));
  }
  j["starts"] = std::move(starts);
  j["best_objective"] = round12(r.best_objective);
  if (r.reference_objective) j["reference_objective"] = round12(*r.reference_objective);
  if (r.gap_percent) j["gap_percent"] = round12(*r.gap_percent);
  if (r.mean_gap_percent) j["mean_gap_percent"] = round12(*r.mean_gap_percent);
  j["schedule"] = {{"gamma0", round12(r.schedule.gamma0)},
                   {"gamma1", round12(r.schedule.gamma1)},
                   {"iterations", r.schedule.iterations},
                   {"mode", r.schedule.mode}};
  j["artifact_version"] = r.artifact_version;
  return j.dump(2) + "\n";
}

SolveResult parse_result(std::string_view text) {
  using nlohmann::json;
  SolveResult r;
  try {
    const json j = json::parse(text);
    r.instance_name = j.at("instance_name").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.edge_count = j.at("edge_count").get<std::size_t>();
    for (const auto& e : j.at("starts")) {
      StartRecord s;
      s.kind = e.at("kind").get<std::string>();
      s.id = e.at("id").get<std::string>();
      s.objective = e.at("objective").get<double>();
      s.valid = e.at("valid").get<bool>();
      s.maximal = e.at("maximal").get<bool>();
      s.iterations = e.at("iterations").get<std::size_t>();
      s.wall_time_ms = e.at("wall_time_ms").get<double>();
      s.fallbacks = e.value("fallbacks", std::size_t{0});
      s.error = e.value("error", std::string{});
      r.starts.push_back(std::move(s));
    }
    r.best_objective = j.at("best_objective").get<double>();
    if (j.contains("reference_objective")) r.reference_objective = j["reference_objective"].get<double>();
    if (j.contains("gap_percent")) r.gap_percent = j["gap_percent"].get<double>();
    if (j.contains("mean_gap_percent")) r.mean_gap_percent = j["mean_gap_percent"].get<double>();
    const auto& s = j.at("schedule");
    r.schedule.gamma0 = s.at("gamma0").get<double>();
    r.schedule.gamma1 = s.at("gamma1").get<double>();
    r.schedule.iterations = s.at("iterations").get<std::size_t>();
    r.schedule.mode = s.at("mode").get<std::string>();
    r.artifact_version = j.at("artifact_version").get<std::string>();
  } catch (const json::exception& e) {
    throw InputError(std::string("result: ") + e.what());
  }
  return r;
}

std::map<std::string, double> parse_reference_csv(std::string_view text) {
  std::map<std::string, double> out;
  std::size_t lineno = 0;
  bool first = true;
  for (auto raw : split_lines(text)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw InputError(at_line(lineno) + "expected 'name,objective'");
    }
    const auto name = trim(line.substr(0, comma));
    const auto value = to_double(trim(line.substr(comma + 1)));
    const bool header = first;
    first = false;
    if (!value) {
      if (header) continue;
      throw InputError(at_line(lineno) + "unparsable objective");
    }
    if (name.empty() || !std::isfinite(*value)) {
      throw InputError(at_line(lineno) + "empty name or non-finite objective");
    }
    if (!out.emplace(std::string(name), *value).second) {
      throw InputError(at_line(lineno) + "duplicate instance '" + std::string(name) + "'");
    }
  }
  return out;
}

VertexSet parse_solution(std::string_view text) {
  VertexSet out;
  std::string cleaned(text);
  for (char& c : cleaned) {
    if (c == ',' || c == '{' || c == '}') c = ' ';
  }
  for (auto tok : tokens(cleaned)) {
    auto v = to_index(tok);
    if (!v || *v > 0xFFFFFFFFull) {
      throw InputError("solution: bad vertex index '" + std::string(tok) + "'");
    }
    out.push_back(static_cast<Vertex>(*v));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gnmwis
