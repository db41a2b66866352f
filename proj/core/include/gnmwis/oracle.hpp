#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "gnmwis/graph.hpp"

namespace gnmwis {

inline constexpr std::size_t kBruteForceLimit = 32;
inline constexpr std::size_t kMisEnumerationLimit = 24;
inline constexpr std::size_t kCorrespondenceLimit = 16;
/// Stability scores within this distance of 1 are not held to the
/// local-minimum prediction.
inline constexpr double kMarginalBand = 0.05;
inline constexpr double kTangentMagnitude = 1e-4;

/// Exact maximum-weight independent set (returned maximal). n <= 32.
MisSolution brute_force_mwis(const WeightedGraph& g);

/// Every maximal independent set, members ascending, sets in lexicographic
/// order. n <= 24.
std::vector<MisSolution> enumerate_mises(const WeightedGraph& g);

struct MisCorrespondence {
  MisSolution mis;
  double stability = 0.0;
  bool gamma_stable = false;       // stability > 1
  double q_value = 0.0;            // Q at the tilted-simplex point of M
  bool q_matches = false;          // Q == 1 / W(M) to 1e-12
  bool local_min_verified = false; // no tested direction lowered Q
  bool marginal = false;           // |stability - 1| < kMarginalBand
  bool violation = false;          // disagrees with the stable <=> minimum rule
};

struct OracleReport {
  double gamma = 0.0;
  MisSolution optimum;
  std::vector<MisCorrespondence> entries;  // one per MIS
  std::size_t violations = 0;
};

/// Random admissible tangent directions at the tilted-simplex point of `m`:
/// sum_i sqrt(w_i) delta_i = 0 and r + delta >= 0, norm at most 1e-4.
/// Returns true when none of `perturbations` samples lowers Q by more than
/// 1e-12.
bool tilted_local_min_test(const WeightedGraph& g, const MisSolution& m,
                           double gamma, std::size_t perturbations,
                           std::mt19937_64& rng);

/// For every MIS: stability, Q at its tilted-simplex point, and a random
/// local-minimality test. Requires n <= 16 and gamma > 1.
OracleReport correspondence_check(const WeightedGraph& g, double gamma,
                                  std::size_t perturbations,
                                  std::uint64_t seed = 0);

}  // namespace gnmwis
