#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gnmwis {

using Vertex = std::uint32_t;
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex u;
  Vertex v;
};

/// Immutable undirected simple graph with positive vertex weights.
///
/// Adjacency is stored in CSR form with every neighbor list sorted
/// ascending. The square roots of the weights are cached since every
/// iteration of the dynamics reads them.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Validates and builds a graph. Edges may appear in either orientation
  /// and more than once; duplicates are merged. Throws InputError on
  /// self-loops, out-of-range endpoints, or weights that are missing,
  /// non-positive, or non-finite.
  static WeightedGraph build(std::size_t n, std::span<const Edge> edges,
                             std::span<const double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex i) const noexcept {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }
  std::size_t degree(Vertex i) const noexcept {
    return offsets_[i + 1] - offsets_[i];
  }
  bool adjacent(Vertex a, Vertex b) const noexcept;

  double weight(Vertex i) const noexcept { return weights_[i]; }
  double sqrt_weight(Vertex i) const noexcept { return sqrt_weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> sqrt_weights() const noexcept {
    return sqrt_weights_;
  }

  /// Each undirected edge once, as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<double> weights_;
  std::vector<double> sqrt_weights_;
};

inline WeightedGraph build_graph(std::size_t n, std::span<const Edge> edges,
                                 std::span<const double> weights) {
  return WeightedGraph::build(n, edges, weights);
}

/// A vertex subset claimed independent, with its weight and validity flags.
struct MisSolution {
  VertexSet members;  // sorted, unique
  double weight = 0.0;
  bool independent = false;
  bool maximal = false;

  /// Sorts and deduplicates `members`, then recomputes weight and flags.
  static MisSolution evaluate(const WeightedGraph& g, VertexSet members);
};

// Set predicates. A set is read as a set: order and repetition are ignored.
// All throw InputError when an index is out of range.
bool is_independent(const WeightedGraph& g, std::span<const Vertex> s);
bool is_maximal_independent(const WeightedGraph& g, std::span<const Vertex> s);
double set_weight(const WeightedGraph& g, std::span<const Vertex> s);

/// Vertices reachable from each other share a label; labels are dense and
/// assigned in order of the smallest vertex of each component.
std::vector<std::size_t> connected_components(const WeightedGraph& g);

}  // namespace gnmwis
