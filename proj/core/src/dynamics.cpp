#include "gnmwis/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "gnmwis/errors.hpp"

namespace gnmwis {

StateVector StateVector::indicator(std::size_t n,
                                   std::span<const Vertex> members) {
  StateVector x(n, 0.0);
  for (Vertex i : members) {
    if (i >= n) throw InputError("indicator member out of range");
    x[i] = 1.0;
  }
  return x;
}

namespace {

void check_gamma(double gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw InputError("gamma must be finite and >= 0");
  }
}

void check_size(const WeightedGraph& g, std::size_t n) {
  if (n != g.size()) {
    throw InputError("vector length " + std::to_string(n) +
                     " does not match graph order " + std::to_string(g.size()));
  }
}

double neighbor_sum(const WeightedGraph& g, std::span<const double> y,
                    Vertex i) {
  double s = 0.0;
  for (Vertex j : g.neighbors(i)) s += y[j];
  return s;
}

}  // namespace

GammaSchedule GammaSchedule::constant(double gamma, std::size_t iterations) {
  check_gamma(gamma);
  if (iterations < 1) throw InputError("schedule needs at least 1 iteration");
  return {gamma, gamma, iterations, ScheduleMode::constant};
}

GammaSchedule GammaSchedule::linear(double gamma0, double gamma1,
                                    std::size_t iterations) {
  check_gamma(gamma0);
  check_gamma(gamma1);
  if (iterations < 2) {
    throw InputError("linear schedule needs at least 2 iterations");
  }
  return {gamma0, gamma1, iterations, ScheduleMode::linear};
}

double GammaSchedule::at(std::size_t k) const noexcept {
  if (mode_ == ScheduleMode::constant) return gamma0_;
  // Same blend as the reference module, so both endpoints are exact.
  const double p =
      static_cast<double>(k) / static_cast<double>(iterations_ - 1);
  return p * gamma1_ + (1.0 - p) * gamma0_;
}

std::size_t gn_step(const WeightedGraph& g, std::span<const double> x,
                    double gamma, std::span<double> out) {
  check_size(g, x.size());
  check_size(g, out.size());
  const auto v = g.sqrt_weights();
  const std::size_t n = g.size();

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = v[i] * x[i];

  std::size_t fallbacks = 0;
  for (Vertex i = 0; i < n; ++i) {
    const double denom = gamma * neighbor_sum(g, y, i) + y[i];
    if (denom > kSafeDivisionThreshold) {
      out[i] = y[i] / denom;
    } else {
      out[i] = kFallbackValue;
      ++fallbacks;
    }
  }
  return fallbacks;
}

StateVector gn_step(const WeightedGraph& g, const StateVector& x,
                    double gamma) {
  check_gamma(gamma);
  StateVector out(x.size(), 0.0);
  gn_step(g, x.span(), gamma, out.span());
  return out;
}

bool is_normalizable(const WeightedGraph& g, std::span<const double> x) {
  check_size(g, x.size());
  for (double xi : x) {
    if (!(xi >= 0.0)) return false;
  }
  for (Vertex i = 0; i < g.size(); ++i) {
    if (!(x[i] + neighbor_sum(g, x, i) > 0.0)) return false;
  }
  return true;
}

RunOutcome run_wrgn(const WeightedGraph& g, StateVector x0,
                    const GammaSchedule& schedule, RunOptions options) {
  check_size(g, x0.size());
  for (double xi : x0) {
    if (!std::isfinite(xi) || xi < 0.0) {
      throw InputError("initial state must be finite and nonnegative");
    }
  }
  if (!is_normalizable(g, x0.span())) {
    throw InputError(
        "initial state is not normalizable (a closed neighborhood sums to 0)");
  }

  RunOutcome result;
  StateVector x = std::move(x0);
  StateVector next(x.size(), 0.0);
  if (options.record_trace) result.trace.steps.reserve(schedule.iterations());

  for (std::size_t k = 0; k < schedule.iterations(); ++k) {
    const double gamma = schedule.at(k);
    const std::size_t fb = gn_step(g, x.span(), gamma, next.span());
    result.fallbacks += fb;

    double step = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!std::isfinite(next[i])) {
        throw NumericalError("non-finite state at iteration " +
                             std::to_string(k) + ", vertex " +
                             std::to_string(i));
      }
      step = std::max(step, std::abs(next[i] - x[i]));
    }

    if (options.record_trace) {
      StepRecord r;
      r.gamma = gamma;
      r.energy_before = energy(g, x.span(), gamma);
      r.energy = energy(g, next.span(), gamma);
      r.mass_before = weighted_mass(g, x.span());
      r.mass = weighted_mass(g, next.span());
      r.step_norm = step;
      r.fallbacks = fb;
      result.trace.steps.push_back(r);
    }

    std::swap(x, next);
    result.iterations = k + 1;
    if (options.early_exit && gamma == schedule.gamma1() &&
        step < kEarlyExitTolerance) {
      break;
    }
  }

  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], 0.0, 1.0);
  result.state = std::move(x);
  return result;
}

StateVector init_random(std::size_t n, std::uint64_t seed,
                        std::uint64_t stream) {
  if (n < 1) throw InputError("init_random needs n >= 1");
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);

  std::vector<double> x(n);
  for (auto& xi : x) {
    // u in [0, 1) with 53 random bits; 1 - u lies in (0, 1].
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    xi = -std::log1p(-u);
  }
  const double top = *std::max_element(x.begin(), x.end());
  for (auto& xi : x) {
    xi = top > 0.0 ? xi / top : 1.0;
    xi = std::clamp(xi, kInitFloor, 1.0);
  }
  return StateVector(std::move(x));
}

StateVector init_warm(std::span<const double> fractional, std::size_t n) {
  if (fractional.size() != n) {
    throw InputError("warm start has " + std::to_string(fractional.size()) +
                     " entries, expected " + std::to_string(n));
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(fractional[i])) {
      throw InputError("warm start entry " + std::to_string(i) +
                       " is not finite");
    }
    x[i] = std::clamp(fractional[i], kInitFloor, 1.0);
  }
  return StateVector(std::move(x));
}

double energy(const WeightedGraph& g, std::span<const double> x,
              double gamma) {
  check_size(g, x.size());
  const auto v = g.sqrt_weights();
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = v[i] * x[i];

  double quad = 0.0, linear = 0.0;
  for (Vertex i = 0; i < g.size(); ++i) {
    quad += y[i] * (y[i] + gamma * neighbor_sum(g, y, i));
    linear += v[i] * y[i];
  }
  return 0.5 * quad - linear;
}

double weighted_mass(const WeightedGraph& g, std::span<const double> x) {
  check_size(g, x.size());
  const auto w = g.weights();
  return std::inner_product(w.begin(), w.end(), x.begin(), 0.0);
}

std::vector<double> simplex_state(const WeightedGraph& g,
                                  std::span<const double> x) {
  const double mass = weighted_mass(g, x);
  if (!(mass > 0.0)) throw InputError("simplex state of a zero-mass vector");
  std::vector<double> p(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) p[i] = g.weight(i) * x[i] / mass;
  return p;
}

Fitness fitness(const WeightedGraph& g, std::span<const double> p,
                double gamma) {
  check_size(g, p.size());
  const auto v = g.sqrt_weights();
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[i] / v[i];

  Fitness out;
  out.f.resize(p.size());
  for (Vertex i = 0; i < g.size(); ++i) {
    const double demand = q[i] + gamma * neighbor_sum(g, q, i);
    if (!(demand > 0.0)) {
      throw InputError("fitness denominator vanishes at vertex " +
                       std::to_string(i));
    }
    out.f[i] = v[i] / demand;
    out.mean += p[i] * out.f[i];
  }
  return out;
}

MisSolution round_to_mis(const WeightedGraph& g, std::span<const double> x) {
  check_size(g, x.size());
  const std::size_t n = g.size();
  // Priority order: lighter first; equal weights, smaller index first.
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return g.weight(a) != g.weight(b) ? g.weight(a) < g.weight(b) : a < b;
  });

  std::vector<char> in(n, 0);
  for (Vertex i = 0; i < n; ++i) in[i] = x[i] > 0.5;

  auto has_member_neighbor = [&](Vertex i) {
    auto nb = g.neighbors(i);
    return std::any_of(nb.begin(), nb.end(), [&](Vertex j) { return in[j]; });
  };

  // Visiting in ascending priority drops, at each point, the lowest-priority
  // vertex that still has a conflict: the lighter endpoint of its edge.
  for (Vertex i : order) {
    if (in[i] && has_member_neighbor(i)) in[i] = 0;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (!in[*it] && !has_member_neighbor(*it)) in[*it] = 1;
  }

  VertexSet members;
  for (Vertex i = 0; i < n; ++i) {
    if (in[i]) members.push_back(i);
  }
  return MisSolution::evaluate(g, std::move(members));
}

std::vector<StartOutcome> run_multistart(const WeightedGraph& g,
                                         std::span<const StateVector> starts,
                                         const GammaSchedule& schedule,
                                         RunOptions options,
                                         std::size_t threads) {
  std::vector<StartOutcome> results(starts.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t s = next++; s < starts.size(); s = next++) {
      StartOutcome& r = results[s];
      r.index = s;
      try {
        const auto t0 = std::chrono::steady_clock::now();
        r.run = run_wrgn(g, starts[s], schedule, options);
        const auto t1 = std::chrono::steady_clock::now();
        r.wall_time_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        r.solution = round_to_mis(g, r.run.state.span());
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };

  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, starts.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return results;
}

}  // namespace gnmwis
