#include "gnmwis/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "gnmwis/analysis.hpp"
#include "gnmwis/errors.hpp"

namespace gnmwis {

namespace {

using Mask = std::uint64_t;

std::vector<Mask> closed_neighborhoods(const WeightedGraph& g) {
  std::vector<Mask> nb(g.size());
  for (Vertex i = 0; i < g.size(); ++i) {
    nb[i] = Mask{1} << i;
    for (Vertex j : g.neighbors(i)) nb[i] |= Mask{1} << j;
  }
  return nb;
}

VertexSet members_of(Mask m) {
  VertexSet out;
  for (; m; m &= m - 1) out.push_back(static_cast<Vertex>(std::countr_zero(m)));
  return out;
}

struct BranchAndBound {
  const WeightedGraph& g;
  std::vector<Mask> closed;
  double best = -1.0;
  Mask best_set = 0;

  double mass(Mask m) const {
    double s = 0.0;
    for (; m; m &= m - 1) s += g.weight(static_cast<Vertex>(std::countr_zero(m)));
    return s;
  }

  void search(Mask chosen, double weight, Mask candidates) {
    if (candidates == 0) {
      if (weight > best) {
        best = weight;
        best_set = chosen;
      }
      return;
    }
    if (weight + mass(candidates) <= best) return;
    // Branch on the heaviest candidate (smallest index on ties).
    Vertex pick = static_cast<Vertex>(std::countr_zero(candidates));
    for (Mask c = candidates; c; c &= c - 1) {
      auto i = static_cast<Vertex>(std::countr_zero(c));
      if (g.weight(i) > g.weight(pick)) pick = i;
    }
    search(chosen | (Mask{1} << pick), weight + g.weight(pick),
           candidates & ~closed[pick]);
    search(chosen, weight, candidates & ~(Mask{1} << pick));
  }
};

}  // namespace

MisSolution brute_force_mwis(const WeightedGraph& g) {
  if (g.size() > kBruteForceLimit) {
    throw InputError("brute_force_mwis supports n <= 32, got " +
                     std::to_string(g.size()));
  }
  BranchAndBound bb{g, closed_neighborhoods(g)};
  const Mask all = g.size() == 64 ? ~Mask{0} : (Mask{1} << g.size()) - 1;
  bb.search(0, 0.0, all);

  // Positive weights make every optimum maximal; extend anyway so the
  // contract does not rest on that argument.
  Mask set = bb.best_set;
  Mask blocked = 0;
  for (Mask m = set; m; m &= m - 1) blocked |= bb.closed[std::countr_zero(m)];
  std::vector<Vertex> order(g.size());
  for (Vertex i = 0; i < g.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return g.weight(a) > g.weight(b);
  });
  for (Vertex i : order) {
    if (!((blocked >> i) & 1u)) {
      set |= Mask{1} << i;
      blocked |= bb.closed[i];
    }
  }
  return MisSolution::evaluate(g, members_of(set));
}

std::vector<MisSolution> enumerate_mises(const WeightedGraph& g) {
  if (g.size() > kMisEnumerationLimit) {
    throw InputError("enumerate_mises supports n <= 24, got " +
                     std::to_string(g.size()));
  }
  const auto closed = closed_neighborhoods(g);
  std::vector<Mask> found;

  // Bron-Kerbosch with pivoting over the "independent of" relation: the
  // candidates compatible with v are P minus the closed neighborhood of v.
  auto extend = [&](auto& self, Mask r, Mask p, Mask x) -> void {
    if (p == 0 && x == 0) {
      found.push_back(r);
      return;
    }
    // Pivot u maximizing |P \ N[u]|; only P cap N[u] needs branching.
    Mask pivot_cover = 0;
    int best = -1;
    for (Mask c = p | x; c; c &= c - 1) {
      const int u = std::countr_zero(c);
      const int keep = std::popcount(p & ~closed[u]);
      if (keep > best) {
        best = keep;
        pivot_cover = closed[u];
      }
    }
    for (Mask c = p & pivot_cover; c; c &= c - 1) {
      const int v = std::countr_zero(c);
      const Mask bit = Mask{1} << v;
      self(self, r | bit, p & ~closed[v], x & ~closed[v]);
      p &= ~bit;
      x |= bit;
    }
  };
  const Mask all = (Mask{1} << g.size()) - 1;
  extend(extend, 0, all, 0);

  std::vector<MisSolution> out;
  out.reserve(found.size());
  for (Mask m : found) out.push_back(MisSolution::evaluate(g, members_of(m)));
  std::sort(out.begin(), out.end(), [](const MisSolution& a, const MisSolution& b) {
    return a.members < b.members;
  });
  return out;
}

bool tilted_local_min_test(const WeightedGraph& g, const MisSolution& m,
                           double gamma, std::size_t perturbations,
                           std::mt19937_64& rng) {
  const std::size_t n = g.size();
  const auto v = g.sqrt_weights();
  const auto r = tilted_simplex_point(g, m);
  const double q0 = tilted_simplex_q(g, r, gamma);

  std::vector<char> in(n, 0);
  for (Vertex i : m.members) in[i] = 1;
  std::vector<Vertex> outside;
  double support_norm2 = 0.0;
  for (Vertex i = 0; i < n; ++i) {
    if (in[i]) {
      support_norm2 += v[i] * v[i];
    } else {
      outside.push_back(i);
    }
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> delta(n), moved(n);

  for (std::size_t s = 0; s < perturbations; ++s) {
    std::fill(delta.begin(), delta.end(), 0.0);
    // Outside coordinates sit at 0 and may only grow: mix single-vertex
    // moves, random subsets, and moves within the support.
    const double kind = unit(rng);
    if (!outside.empty() && kind < 0.5) {
      delta[outside[rng() % outside.size()]] = unit(rng) + 1e-3;
    } else if (!outside.empty() && kind < 0.8) {
      for (Vertex i : outside) {
        if (unit(rng) < 0.5) delta[i] = unit(rng);
      }
    }
    for (Vertex i : m.members) delta[i] = normal(rng);

    auto norm_of = [&] {
      double s2 = 0.0;
      for (double d : delta) s2 += d * d;
      return std::sqrt(s2);
    };
    const double raw_norm = norm_of();

    // Restore sum_i v_i delta_i = 0 using the support coordinates only.
    double tilt = 0.0;
    for (std::size_t i = 0; i < n; ++i) tilt += v[i] * delta[i];
    for (Vertex i : m.members) delta[i] -= tilt / support_norm2 * v[i];

    // A direction the projection (nearly) annihilated is rounding noise,
    // not a tangent direction; rescaling it would leave the simplex.
    const double norm = norm_of();
    if (!(norm > 1e-8 * raw_norm)) continue;
    const double scale = kTangentMagnitude * (0.01 + 0.99 * unit(rng)) / norm;

    bool admissible = true;
    for (std::size_t i = 0; i < n; ++i) {
      moved[i] = r[i] + scale * delta[i];
      if (moved[i] < 0.0) admissible = false;
    }
    if (!admissible) continue;

    double q = 0.0;
    for (Vertex i = 0; i < n; ++i) {
      double nb = 0.0;
      for (Vertex j : g.neighbors(i)) nb += moved[j];
      q += moved[i] * (moved[i] + gamma * nb);
    }
    if (q < q0 - 1e-12) return false;
  }
  return true;
}

OracleReport correspondence_check(const WeightedGraph& g, double gamma,
                                  std::size_t perturbations,
                                  std::uint64_t seed) {
  if (g.size() > kCorrespondenceLimit) {
    throw InputError("correspondence_check supports n <= 16");
  }
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw InputError("correspondence_check needs gamma > 1");
  }
  OracleReport report;
  report.gamma = gamma;
  report.optimum = brute_force_mwis(g);

  std::mt19937_64 rng(seed);
  for (auto& mis : enumerate_mises(g)) {
    MisCorrespondence c;
    c.stability = mis_stability(g, mis, gamma);
    c.gamma_stable = c.stability > 1.0;
    c.q_value = tilted_simplex_q(g, tilted_simplex_point(g, mis), gamma);
    const double expected = 1.0 / mis.weight;
    c.q_matches = std::abs(c.q_value - expected) <= 1e-12 * std::max(1.0, expected);
    c.local_min_verified = tilted_local_min_test(g, mis, gamma, perturbations, rng);
    c.marginal = std::abs(c.stability - 1.0) < kMarginalBand;
    c.violation = !c.q_matches ||
                  (!c.marginal && c.local_min_verified != c.gamma_stable);
    if (c.violation) ++report.violations;
    c.mis = std::move(mis);
    report.entries.push_back(std::move(c));
  }
  return report;
}

}  // namespace gnmwis
