#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gnmwis/dynamics.hpp"
#include "gnmwis/errors.hpp"
#include "support/corpus.hpp"

using namespace gnmwis;
using namespace gnmwis::testing;

namespace {

StateVector sv(std::vector<double> v) { return StateVector(std::move(v)); }

}  // namespace

TEST(GnStep, Examples) {
  auto a = gn_step(k2(), sv({1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(a[0], 0.5);
  EXPECT_DOUBLE_EQ(a[1], 0.5);

  auto b = gn_step(path(3), sv({1, 0, 1}), 1.0);
  EXPECT_EQ(b, sv({1, 0, 1}));

  auto c = gn_step(k2(4, 1), sv({1, 1}), 1.0);
  EXPECT_NEAR(c[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(c[1], 1.0 / 3.0, 1e-15);
}

TEST(GnStep, FallbackOnZeroNeighborhood) {
  auto g = k2();
  std::vector<double> x{0, 0}, out(2);
  EXPECT_EQ(gn_step(g, x, 1.0, out), 2u);
  EXPECT_EQ(out[0], kFallbackValue);
  EXPECT_EQ(out[1], kFallbackValue);
}

TEST(GnStep, BoundedSupportPreservingScaleInvariant) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    auto g = random_graph(rng, 2 + t % 30, 0.3);
    std::vector<double> x(g.size());
    for (auto& xi : x) xi = u(rng) < 0.2 ? 0.0 : u(rng);
    x[0] = 0.5;  // keep some mass
    if (!is_normalizable(g, x)) continue;
    std::vector<double> out(g.size()), scaled(g.size()), out_scaled(g.size());
    const double gamma = 0.5 + 1.5 * u(rng);
    ASSERT_EQ(gn_step(g, x, gamma, out), 0u);
    const double alpha = 0.01 + 100 * u(rng);
    for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = alpha * x[i];
    gn_step(g, scaled, gamma, out_scaled);
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_GE(out[i], 0.0);
      EXPECT_LE(out[i], 1.0);
      EXPECT_EQ(out[i] > 0.0, x[i] > 0.0);
      EXPECT_NEAR(out[i], out_scaled[i], 1e-12);
    }
  }
}

TEST(GnStep, MisIndicatorIsExactFixedPoint) {
  auto g = path(5, {1, 2, 3, 4, 5});
  for (VertexSet m : {VertexSet{0, 2, 4}, VertexSet{1, 3}, VertexSet{0, 3}}) {
    auto x = StateVector::indicator(5, m);
    for (double gamma : {0.3, 1.0, 1.5, 7.0}) EXPECT_EQ(gn_step(g, x, gamma), x);
  }
}

TEST(GnStep, ComponentsEvolveIndependently) {
  std::mt19937_64 rng(11);
  auto g1 = random_graph(rng, 9, 0.4);
  auto g2 = random_graph(rng, 7, 0.4);
  std::vector<Edge> edges = g1.edges();
  for (auto e : g2.edges()) edges.push_back({e.u + 9, e.v + 9});
  std::vector<double> w(g1.weights().begin(), g1.weights().end());
  w.insert(w.end(), g2.weights().begin(), g2.weights().end());
  auto joint = build_graph(16, edges, w);

  auto x0 = init_random(16, 5);
  std::vector<double> a(x0.begin(), x0.begin() + 9), b(x0.begin() + 9, x0.end());
  auto sched = GammaSchedule::linear(0.9, 1.5, 200);
  auto rj = run_wrgn(joint, x0, sched);
  auto r1 = run_wrgn(g1, sv(a), sched);
  auto r2 = run_wrgn(g2, sv(b), sched);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(rj.state[i], r1.state[i]);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(rj.state[9 + i], r2.state[i]);
}

TEST(Schedule, LinearAndConstant) {
  auto s = GammaSchedule::linear(0.9, 1.5, 1000);
  EXPECT_EQ(s.at(0), 0.9);
  EXPECT_DOUBLE_EQ(s.at(999), 1.5);
  EXPECT_NEAR(s.at(333), 0.9 + 333.0 / 999.0 * 0.6, 1e-15);
  auto c = GammaSchedule::constant(1.2, 5);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(c.at(k), 1.2);
  EXPECT_THROW(GammaSchedule::linear(0.9, 1.5, 1), InputError);
  EXPECT_THROW(GammaSchedule::constant(1.0, 0), InputError);
  EXPECT_THROW(GammaSchedule::constant(-1.0, 3), InputError);
}

TEST(RunWrgn, K2UniformReachesVertexZero) {
  auto r = run_wrgn(k2(), sv({0.6, 0.4}), GammaSchedule::constant(1.5, 1000));
  EXPECT_NEAR(r.state[0], 1.0, 1e-6);
  EXPECT_NEAR(r.state[1], 0.0, 1e-6);
}

TEST(RunWrgn, K2HeavyVertexAttractsBetweenThresholds) {
  auto r = run_wrgn(k2(2, 1), sv({0.1, 0.9}), GammaSchedule::constant(1.0, 5000));
  EXPECT_NEAR(r.state[0], 1.0, 1e-6);
  EXPECT_NEAR(r.state[1], 0.0, 1e-6);
}

TEST(RunWrgn, K2FractionalBelowFirstThreshold) {
  const double gamma = 0.25;
  auto g = k2(2, 1);
  auto r = run_wrgn(g, sv({0.5, 0.5}), GammaSchedule::constant(gamma, 2000));
  auto p = simplex_state(g, r.state.span());
  const double apex = (1 - gamma * std::sqrt(2.0)) / (3 - 2 * gamma * std::sqrt(2.0));
  EXPECT_NEAR(apex, 0.2819, 1e-4);
  EXPECT_NEAR(p[1], apex, 1e-9);
}

TEST(RunWrgn, RejectsBadStarts) {
  auto sched = GammaSchedule::constant(1.0, 3);
  EXPECT_THROW(run_wrgn(k2(), sv({0, 0}), sched), InputError);
  EXPECT_THROW(run_wrgn(k2(), sv({1}), sched), InputError);
  EXPECT_THROW(run_wrgn(k2(), sv({-0.1, 1}), sched), InputError);
  EXPECT_THROW(run_wrgn(k2(), sv({std::nan(""), 1}), sched), InputError);
}

TEST(RunWrgn, TraceAndEarlyExit) {
  auto g = path(4, {1, 2, 3, 4});
  RunOptions opt{true, false};
  auto r = run_wrgn(g, init_random(4, 1), GammaSchedule::linear(0.9, 1.5, 300), opt);
  ASSERT_EQ(r.trace.steps.size(), 300u);
  EXPECT_EQ(r.iterations, 300u);
  EXPECT_EQ(r.trace.steps.front().gamma, 0.9);

  opt.early_exit = true;
  auto e = run_wrgn(g, init_random(4, 1), GammaSchedule::linear(0.9, 1.5, 300), opt);
  EXPECT_EQ(e.iterations, 300u);  // gamma1 is reached only at the last step
  auto c = run_wrgn(g, init_random(4, 1), GammaSchedule::constant(1.5, 100000), opt);
  EXPECT_LT(c.iterations, 100000u);
  EXPECT_LT(c.trace.steps.back().step_norm, kEarlyExitTolerance);
}

TEST(RunWrgn, ConstantGammaMonotoneMonitors) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    auto g = random_graph(rng, 5 + t, 0.3);
    RunOptions opt{true, false};
    auto r = run_wrgn(g, init_random(g.size(), t), GammaSchedule::constant(1.2, 200), opt);
    for (std::size_t k = 0; k < r.trace.steps.size(); ++k) {
      const auto& s = r.trace.steps[k];
      if (s.step_norm <= 1e-10) continue;
      EXPECT_LT(s.energy, s.energy_before + 1e-10);
      if (k > 0) {
        EXPECT_GT(s.mass, s.mass_before - 1e-10);
      }
    }
  }
}

TEST(Init, Random) {
  EXPECT_EQ(init_random(1, 42), sv({1.0}));
  EXPECT_EQ(init_random(5, 7), init_random(5, 7));
  EXPECT_NE(init_random(5, 7, 0), init_random(5, 7, 1));
  auto x = init_random(1000, 3);
  double mx = 0;
  for (double xi : x) {
    EXPECT_GE(xi, kInitFloor);
    EXPECT_LE(xi, 1.0);
    mx = std::max(mx, xi);
  }
  EXPECT_EQ(mx, 1.0);
}

TEST(Init, Warm) {
  std::vector<double> a{0.0, 1.0}, b{0.5, 0.5}, c{2.0, 0.3};
  EXPECT_EQ(init_warm(a, 2), sv({0.001, 1.0}));
  EXPECT_EQ(init_warm(b, 2), sv({0.5, 0.5}));
  EXPECT_EQ(init_warm(c, 2), sv({1.0, 0.3}));
  EXPECT_THROW(init_warm(a, 3), InputError);
  std::vector<double> bad{std::numeric_limits<double>::infinity(), 0.5};
  EXPECT_THROW(init_warm(bad, 2), InputError);
}

TEST(Monitors, Energy) {
  std::vector<double> zero{0, 0}, e0{1, 0}, ones{1, 1};
  EXPECT_EQ(energy(k2(), zero, 1.3), 0.0);
  EXPECT_DOUBLE_EQ(energy(k2(), e0, 2.7), -0.5);
  EXPECT_DOUBLE_EQ(energy(k2(), ones, 1.0), 0.0);
}

TEST(Monitors, EnergyMatchesDenseQuadraticForm) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 30; ++t) {
    auto g = random_graph(rng, 3 + t % 12, 0.4);
    const std::size_t n = g.size();
    std::vector<double> x(n);
    for (auto& xi : x) xi = u(rng);
    const double gamma = 2 * u(rng);
    double quad = 0, lin = 0;
    for (Vertex i = 0; i < n; ++i) {
      const double yi = g.sqrt_weight(i) * x[i];
      quad += yi * yi;
      for (Vertex j = 0; j < n; ++j)
        if (g.adjacent(i, j)) quad += gamma * yi * g.sqrt_weight(j) * x[j];
      lin += g.weight(i) * x[i];
    }
    EXPECT_NEAR(energy(g, x, gamma), 0.5 * quad - lin, 1e-10);
  }
}

TEST(Monitors, MassAndSimplex) {
  std::vector<double> zero{0, 0}, half{0.5, 0.5}, ones{1, 1};
  EXPECT_EQ(weighted_mass(k2(4, 1), zero), 0.0);
  EXPECT_EQ(weighted_mass(k2(4, 1), half), 2.5);
  auto p3 = path(3, {1, 3, 1});
  auto ind = StateVector::indicator(3, VertexSet{0, 2});
  EXPECT_EQ(weighted_mass(p3, ind.span()), 2.0);

  auto p = simplex_state(k2(), ones);
  EXPECT_EQ(p, (std::vector<double>{0.5, 0.5}));
  auto q = simplex_state(k2(4, 1), ones);
  EXPECT_DOUBLE_EQ(q[0], 0.8);
  EXPECT_DOUBLE_EQ(q[1], 0.2);
  std::vector<double> one_hot{0, 0.3, 0};
  EXPECT_EQ(simplex_state(p3, one_hot), (std::vector<double>{0, 1, 0}));
  EXPECT_THROW(simplex_state(k2(), zero), InputError);
}

TEST(Monitors, Fitness) {
  auto k4 = complete(4);
  std::vector<double> uni(4, 0.25);
  auto f = fitness(k4, uni, 1.0);
  for (double fi : f.f) EXPECT_NEAR(fi, 1.0, 1e-15);
  EXPECT_NEAR(f.mean, 1.0, 1e-15);

  std::vector<double> p{0.75, 0.25};
  auto g = fitness(k2(), p, 1.0);
  EXPECT_NEAR(g.f[0], 1.0, 1e-15);
  EXPECT_NEAR(g.f[1], 1.0, 1e-15);
  EXPECT_NEAR(g.mean, 1.0, 1e-15);

  auto single = make_graph(1, {}, {5.0});
  std::vector<double> one{1.0};
  auto h = fitness(single, one, 1.0);
  EXPECT_NEAR(h.f[0], 5.0, 1e-14);
  EXPECT_NEAR(h.mean, 5.0, 1e-14);
}

TEST(Round, Examples) {
  std::vector<double> a{0.99, 0.01}, b{0.6, 0.7}, c{0.2, 0.1, 0.3};
  EXPECT_EQ(round_to_mis(k2(), a).members, (VertexSet{0}));
  EXPECT_EQ(round_to_mis(k2(), b).members, (VertexSet{1}));
  auto r = round_to_mis(make_graph(3, {}), c);
  EXPECT_EQ(r.members, (VertexSet{0, 1, 2}));
  EXPECT_TRUE(r.independent && r.maximal);
}

TEST(Round, RepairKeepsHeavierEndpoint) {
  std::vector<double> x{0.9, 0.9};
  EXPECT_EQ(round_to_mis(k2(1, 3), x).members, (VertexSet{1}));
  EXPECT_EQ(round_to_mis(k2(3, 1), x).members, (VertexSet{0}));
}

TEST(Round, AlwaysMaximalIndependent) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 200; ++t) {
    auto g = random_graph(rng, 1 + t % 40, 0.35);
    std::vector<double> x(g.size());
    for (auto& xi : x) xi = u(rng);
    auto m = round_to_mis(g, x);
    EXPECT_TRUE(m.independent);
    EXPECT_TRUE(m.maximal);
    EXPECT_TRUE(is_maximal_independent(g, m.members));
  }
}

TEST(Multistart, DeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(2);
  auto g = random_graph(rng, 40, 0.2);
  std::vector<StateVector> starts;
  for (std::size_t i = 0; i < 9; ++i) starts.push_back(init_random(g.size(), 17, i));
  auto sched = GammaSchedule::pursuit_default();
  auto one = run_multistart(g, starts, sched, {}, 1);
  auto four = run_multistart(g, starts, sched, {}, 4);
  ASSERT_EQ(one.size(), 9u);
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_EQ(one[i].index, i);
    EXPECT_EQ(four[i].index, i);
    EXPECT_EQ(one[i].run.state, four[i].run.state);
    EXPECT_EQ(one[i].solution.members, four[i].solution.members);
  }
}

TEST(Multistart, WarmStartAtOptimumStays) {
  auto g = k2(4, 1);
  std::vector<double> warm{1.0, 0.0};
  std::vector<StateVector> starts{init_warm(warm, 2)};
  auto out = run_multistart(g, starts, GammaSchedule::pursuit_default(), {}, 1);
  EXPECT_EQ(out[0].solution.weight, 4.0);
}

TEST(RunWrgn, K2LightBasinBoundaryIsTheSaddle) {
  // The ratio rho = y1 / y0 evolves monotonically; the interior fixed point
  // rho* = (gamma - v1/v0) / (gamma v1/v0 - 1) separates the two basins.
  auto g = k2(4, 1);
  const double c = 0.5;  // v1 / v0
  for (double gamma : {2.01, 2.03, 2.06, 2.2}) {
    const double rho_star = (gamma - c) / (gamma * c - 1);
    for (double factor : {0.98, 1.02}) {
      const double rho = rho_star * factor;
      // y0 = 2 x0, y1 = x1; pick x1 = 0.99.
      auto r = run_wrgn(g, StateVector(std::vector<double>{0.99 / (2 * rho), 0.99}),
                        GammaSchedule::constant(gamma, 200000));
      if (factor > 1) {
        EXPECT_GT(r.state[1], 1 - 1e-6) << gamma;
      } else {
        EXPECT_GT(r.state[0], 1 - 1e-6) << gamma;
      }
    }
  }
  // The start (0.01, 0.99) has rho = 49.5, inside the heavy basin until
  // rho* drops below it at gamma = 49 / 23.75.
  EXPECT_NEAR((49 / 23.75 - c) / (49 / 23.75 * c - 1), 49.5, 1e-9);
}
