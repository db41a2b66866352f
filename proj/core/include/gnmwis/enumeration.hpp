#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <vector>

#include "gnmwis/simple_graph.hpp"

namespace gnmwis {

inline constexpr std::size_t kMaxEnumerationOrder = 7;

/// Lexicographically minimal upper-triangle bit string over all vertex
/// permutations, packed with the first pair in the most significant used
/// bit. Pairs are ordered column-major, (0,1), (0,2), (1,2), (0,3), ...
/// as in graph6. Brute force over n! permutations, so n <= 10 in practice.
std::uint64_t canonical_code(const SimpleGraph& g);

/// The graph whose upper-triangle bit string is `code`.
SimpleGraph graph_from_code(std::size_t n, std::uint64_t code);

/// One canonical representative per isomorphism class of connected simple
/// graphs on exactly n vertices, in ascending code order. 1 <= n <= 7.
std::vector<SimpleGraph> connected_graphs(std::size_t n);

struct CensusRow {
  std::size_t n = 0;
  std::size_t connected_total = 0;
  std::size_t irregular_discrete = 0;
  std::size_t irregular_continuous = 0;
  std::size_t regular_discrete = 0;
  std::size_t regular_continuous = 0;
  std::size_t skipped = 0;     // disconnected records in a stream
  std::size_t borderline = 0;  // classifications settled exactly

  std::size_t atomic_total() const noexcept {
    return irregular_discrete + irregular_continuous + regular_discrete +
           regular_continuous;
  }
  double density() const noexcept {
    return connected_total == 0
               ? 0.0
               : static_cast<double>(atomic_total()) /
                     static_cast<double>(connected_total);
  }

  /// Order-independent merge of two tallies over the same n.
  CensusRow& operator+=(const CensusRow& other);
  friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

/// Tallies atom classes over connected graphs of one common order; the
/// reduction is split across `threads` workers (0 = hardware concurrency).
CensusRow census_of(std::span<const SimpleGraph> graphs,
                    std::size_t threads = 1);

CensusRow census(std::size_t n, std::size_t threads = 1);

/// Census over graph6 records, one per line. Blank lines and a leading
/// ">>graph6<<" header are ignored; disconnected graphs are skipped and
/// counted. Throws InputError on malformed records or mixed orders.
CensusRow census_from_stream(std::istream& in, std::size_t threads = 1);

}  // namespace gnmwis
