#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gnmwis/graph.hpp"

namespace gnmwis {

/// Small unweighted simple graph (n <= 64) with one adjacency bitmask per
/// vertex. Used for atom classification, enumeration and graph6 records.
class SimpleGraph {
 public:
  static constexpr std::size_t kMaxVertices = 64;

  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t n);

  std::size_t size() const noexcept { return rows_.size(); }
  std::uint64_t row(std::size_t i) const noexcept { return rows_[i]; }
  bool has_edge(std::size_t i, std::size_t j) const noexcept {
    return (rows_[i] >> j) & 1u;
  }
  void add_edge(std::size_t i, std::size_t j);

  std::size_t degree(std::size_t i) const noexcept;
  std::size_t edge_count() const noexcept;
  bool is_connected() const noexcept;
  bool is_regular() const noexcept;

  /// Weighted view of the same topology; uniform unit weights when
  /// `weights` is empty.
  WeightedGraph to_weighted(const std::vector<double>& weights = {}) const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  std::vector<std::uint64_t> rows_;
};

SimpleGraph to_simple(const WeightedGraph& g);

}  // namespace gnmwis
