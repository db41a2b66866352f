#include "gnmwis/enumeration.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_set>

#include "gnmwis/analysis.hpp"
#include "gnmwis/errors.hpp"
#include "gnmwis/io.hpp"

namespace gnmwis {

namespace {

struct PairOrder {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  explicit PairOrder(std::size_t n) {
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    }
  }
};

}  // namespace

std::uint64_t canonical_code(const SimpleGraph& g) {
  const std::size_t n = g.size();
  if (n > 11) throw InputError("canonical_code supports n <= 11");
  const PairOrder order(n);
  const std::size_t len = order.pairs.size();

  std::array<std::size_t, 11> perm{};
  std::iota(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n), 0);

  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    bool worse = false;
    for (std::size_t t = 0; t < len; ++t) {
      const auto [i, j] = order.pairs[t];
      code = (code << 1) | static_cast<std::uint64_t>(g.has_edge(perm[i], perm[j]));
      // Prefix already larger than the best prefix: prune this permutation.
      if (code > (best >> (len - 1 - t))) {
        worse = true;
        break;
      }
    }
    if (!worse && code < best) best = code;
  } while (std::next_permutation(perm.begin(),
                                 perm.begin() + static_cast<std::ptrdiff_t>(n)));
  return len == 0 ? 0 : best;
}

SimpleGraph graph_from_code(std::size_t n, std::uint64_t code) {
  SimpleGraph g(n);
  const PairOrder order(n);
  const std::size_t len = order.pairs.size();
  for (std::size_t t = 0; t < len; ++t) {
    if ((code >> (len - 1 - t)) & 1u) {
      g.add_edge(order.pairs[t].first, order.pairs[t].second);
    }
  }
  return g;
}

std::vector<SimpleGraph> connected_graphs(std::size_t n) {
  if (n < 1 || n > kMaxEnumerationOrder) {
    throw InputError("built-in enumeration supports 1 <= n <= 7, got " +
                     std::to_string(n) + "; use a graph6 stream instead");
  }
  // All graphs up to isomorphism, grown one vertex at a time: every graph
  // on k vertices minus its last vertex is a graph on k - 1 vertices.
  std::vector<std::uint64_t> level{0};
  for (std::size_t k = 2; k <= n; ++k) {
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t code : level) {
      const SimpleGraph base = graph_from_code(k - 1, code);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
        SimpleGraph g(k);
        for (std::size_t i = 0; i < k - 1; ++i) {
          for (std::size_t j = i + 1; j < k - 1; ++j) {
            if (base.has_edge(i, j)) g.add_edge(i, j);
          }
          if ((mask >> i) & 1u) g.add_edge(i, k - 1);
        }
        seen.insert(canonical_code(g));
      }
    }
    level.assign(seen.begin(), seen.end());
  }
  std::sort(level.begin(), level.end());

  std::vector<SimpleGraph> out;
  for (std::uint64_t code : level) {
    SimpleGraph g = graph_from_code(n, code);
    if (g.is_connected()) out.push_back(std::move(g));
  }
  return out;
}

CensusRow& CensusRow::operator+=(const CensusRow& o) {
  if (n == 0) n = o.n;
  connected_total += o.connected_total;
  irregular_discrete += o.irregular_discrete;
  irregular_continuous += o.irregular_continuous;
  regular_discrete += o.regular_discrete;
  regular_continuous += o.regular_continuous;
  skipped += o.skipped;
  borderline += o.borderline;
  return *this;
}

namespace {

CensusRow tally_one(const SimpleGraph& g) {
  CensusRow row;
  row.n = g.size();
  if (!g.is_connected()) {
    row.skipped = 1;
    return row;
  }
  row.connected_total = 1;
  const auto s = atom_spectrum(g);
  row.borderline = s.borderline ? 1 : 0;
  if (s.kind == SpectrumKind::discrete) {
    (s.regular ? row.regular_discrete : row.irregular_discrete) = 1;
  } else if (s.kind == SpectrumKind::continuous) {
    (s.regular ? row.regular_continuous : row.irregular_continuous) = 1;
  }
  return row;
}

}  // namespace

CensusRow census_of(std::span<const SimpleGraph> graphs, std::size_t threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, graphs.size()));

  std::vector<CensusRow> partial(threads);
  auto work = [&](std::size_t t) {
    for (std::size_t i = t; i < graphs.size(); i += threads) {
      partial[t] += tally_one(graphs[i]);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  CensusRow total;
  for (const auto& p : partial) total += p;
  return total;
}

CensusRow census(std::size_t n, std::size_t threads) {
  const auto graphs = connected_graphs(n);
  CensusRow row = census_of(graphs, threads);
  row.n = n;
  return row;
}

CensusRow census_from_stream(std::istream& in, std::size_t threads) {
  std::vector<SimpleGraph> graphs;
  std::string line;
  std::size_t lineno = 0;
  std::size_t order = 0;
  bool have_order = false;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line.rfind(">>graph6<<", 0) == 0) line.erase(0, 10);
    if (line.empty()) continue;
    SimpleGraph g;
    try {
      g = parse_graph6(line);
    } catch (const InputError& e) {
      throw InputError("graph6 line " + std::to_string(lineno) + ": " + e.what());
    }
    if (have_order && g.size() != order) {
      throw InputError("graph6 line " + std::to_string(lineno) +
                       ": mixed orders (" + std::to_string(g.size()) + " vs " +
                       std::to_string(order) + ")");
    }
    order = g.size();
    have_order = true;
    graphs.push_back(std::move(g));
  }
  CensusRow row = census_of(graphs, threads);
  row.n = order;
  return row;
}

}  // namespace gnmwis
