#include "gnmwis/simple_graph.hpp"

#include <bit>
#include <string>

#include "gnmwis/errors.hpp"

namespace gnmwis {

SimpleGraph::SimpleGraph(std::size_t n) : rows_(n, 0) {
  if (n > kMaxVertices) {
    throw InputError("SimpleGraph supports at most 64 vertices, got " +
                     std::to_string(n));
  }
}

void SimpleGraph::add_edge(std::size_t i, std::size_t j) {
  if (i >= size() || j >= size()) throw InputError("edge endpoint out of range");
  if (i == j) throw InputError("self-loop at vertex " + std::to_string(i));
  rows_[i] |= std::uint64_t{1} << j;
  rows_[j] |= std::uint64_t{1} << i;
}

std::size_t SimpleGraph::degree(std::size_t i) const noexcept {
  return static_cast<std::size_t>(std::popcount(rows_[i]));
}

std::size_t SimpleGraph::edge_count() const noexcept {
  std::size_t twice = 0;
  for (auto r : rows_) twice += static_cast<std::size_t>(std::popcount(r));
  return twice / 2;
}

bool SimpleGraph::is_connected() const noexcept {
  const std::size_t n = size();
  if (n == 0) return false;
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << n) - 1;
  std::uint64_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f; f &= f - 1) {
      next |= rows_[static_cast<std::size_t>(std::countr_zero(f))];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == all;
}

bool SimpleGraph::is_regular() const noexcept {
  for (std::size_t i = 1; i < size(); ++i) {
    if (degree(i) != degree(0)) return false;
  }
  return true;
}

WeightedGraph SimpleGraph::to_weighted(const std::vector<double>& weights) const {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (has_edge(i, j)) {
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
      }
    }
  }
  std::vector<double> w = weights.empty() ? std::vector<double>(size(), 1.0)
                                          : weights;
  return WeightedGraph::build(size(), edges, w);
}

SimpleGraph to_simple(const WeightedGraph& g) {
  SimpleGraph s(g.size());
  for (const auto& e : g.edges()) s.add_edge(e.u, e.v);
  return s;
}

}  // namespace gnmwis
