#include "gnmwis/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gnmwis/errors.hpp"

namespace gnmwis {

WeightedGraph WeightedGraph::build(std::size_t n, std::span<const Edge> edges,
                                   std::span<const double> weights) {
  if (weights.size() != n) {
    throw InputError("expected " + std::to_string(n) + " weights, got " +
                     std::to_string(weights.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(weights[i]) || weights[i] <= 0.0) {
      throw InputError("weight of vertex " + std::to_string(i) +
                       " must be positive and finite");
    }
  }

  std::vector<std::vector<Vertex>> lists(n);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InputError("edge (" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + ") out of range for n=" +
                       std::to_string(n));
    }
    if (e.u == e.v) {
      throw InputError("self-loop at vertex " + std::to_string(e.u));
    }
    lists[e.u].push_back(e.v);
    lists[e.v].push_back(e.u);
  }

  WeightedGraph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& l = lists[i];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    g.offsets_[i + 1] = g.offsets_[i] + l.size();
  }
  g.targets_.reserve(g.offsets_[n]);
  for (auto& l : lists) g.targets_.insert(g.targets_.end(), l.begin(), l.end());

  g.weights_.assign(weights.begin(), weights.end());
  g.sqrt_weights_.resize(n);
  std::transform(g.weights_.begin(), g.weights_.end(), g.sqrt_weights_.begin(),
                 [](double w) { return std::sqrt(w); });
  return g;
}

bool WeightedGraph::adjacent(Vertex a, Vertex b) const noexcept {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex i = 0; i < size(); ++i) {
    for (Vertex j : neighbors(i)) {
      if (i < j) out.push_back({i, j});
    }
  }
  return out;
}

namespace {

std::vector<char> membership(const WeightedGraph& g,
                             std::span<const Vertex> s) {
  std::vector<char> in(g.size(), 0);
  for (Vertex i : s) {
    if (i >= g.size()) {
      throw InputError("vertex " + std::to_string(i) +
                       " out of range for n=" + std::to_string(g.size()));
    }
    in[i] = 1;
  }
  return in;
}

bool independent_mask(const WeightedGraph& g, const std::vector<char>& in) {
  for (Vertex i = 0; i < g.size(); ++i) {
    if (!in[i]) continue;
    for (Vertex j : g.neighbors(i)) {
      if (in[j]) return false;
    }
  }
  return true;
}

bool dominating_mask(const WeightedGraph& g, const std::vector<char>& in) {
  for (Vertex i = 0; i < g.size(); ++i) {
    if (in[i]) continue;
    auto nb = g.neighbors(i);
    if (std::none_of(nb.begin(), nb.end(), [&](Vertex j) { return in[j]; })) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool is_independent(const WeightedGraph& g, std::span<const Vertex> s) {
  return independent_mask(g, membership(g, s));
}

bool is_maximal_independent(const WeightedGraph& g,
                            std::span<const Vertex> s) {
  auto in = membership(g, s);
  return independent_mask(g, in) && dominating_mask(g, in);
}

double set_weight(const WeightedGraph& g, std::span<const Vertex> s) {
  auto in = membership(g, s);
  double total = 0.0;
  for (Vertex i = 0; i < g.size(); ++i) {
    if (in[i]) total += g.weight(i);
  }
  return total;
}

MisSolution MisSolution::evaluate(const WeightedGraph& g, VertexSet members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto in = membership(g, members);
  MisSolution s;
  s.members = std::move(members);
  for (Vertex i : s.members) s.weight += g.weight(i);
  s.independent = independent_mask(g, in);
  s.maximal = s.independent && dominating_mask(g, in);
  return s;
}

std::vector<std::size_t> connected_components(const WeightedGraph& g) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.size(), unset);
  std::vector<Vertex> stack;
  std::size_t next = 0;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : g.neighbors(u)) {
        if (label[v] == unset) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace gnmwis
