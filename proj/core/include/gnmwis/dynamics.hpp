#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnmwis/graph.hpp"

namespace gnmwis {

/// Closed-neighborhood sums at or below this value are not divided by.
inline constexpr double kSafeDivisionThreshold = 1e-9;
/// State value written where the safe division is skipped.
inline constexpr double kFallbackValue = 0.5;
/// Lower clamp for random and warm initializations (keeps full support).
inline constexpr double kInitFloor = 1e-3;
/// Step norm below which an early exit may fire once gamma reached gamma1.
inline constexpr double kEarlyExitTolerance = 1e-12;

/// Dense iterate of the dynamics; entries live in [0, 1] after any step.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<double> values)
      : values_(std::move(values)) {}
  StateVector(std::size_t n, double fill) : values_(n, fill) {}

  static StateVector indicator(std::size_t n, std::span<const Vertex> members);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  std::span<const double> span() const noexcept { return values_; }
  std::span<double> span() noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<double> values_;
};

enum class ScheduleMode { constant, linear };

/// Interpolation plan for the regularization parameter over iterations.
class GammaSchedule {
 public:
  static GammaSchedule constant(double gamma, std::size_t iterations);
  static GammaSchedule linear(double gamma0, double gamma1,
                              std::size_t iterations);
  /// Linear 0.9 -> 1.5 over 1000 iterations.
  static GammaSchedule pursuit_default() { return linear(0.9, 1.5, 1000); }

  double at(std::size_t k) const noexcept;

  double gamma0() const noexcept { return gamma0_; }
  double gamma1() const noexcept { return gamma1_; }
  std::size_t iterations() const noexcept { return iterations_; }
  ScheduleMode mode() const noexcept { return mode_; }

 private:
  GammaSchedule(double g0, double g1, std::size_t it, ScheduleMode m)
      : gamma0_(g0), gamma1_(g1), iterations_(it), mode_(m) {}

  double gamma0_;
  double gamma1_;
  std::size_t iterations_;
  ScheduleMode mode_;
};

/// One iteration x -> x'. Energies and masses on both sides are evaluated
/// at the gamma used for the step.
struct StepRecord {
  double gamma = 0.0;
  double energy_before = 0.0;
  double energy = 0.0;
  double mass_before = 0.0;
  double mass = 0.0;
  double step_norm = 0.0;  // max_i |x'_i - x_i|
  std::size_t fallbacks = 0;
};

struct SolveTrace {
  std::vector<StepRecord> steps;
};

struct RunOptions {
  bool record_trace = false;
  bool early_exit = false;
};

struct RunOutcome {
  StateVector state;
  SolveTrace trace;
  std::size_t iterations = 0;
  std::size_t fallbacks = 0;
};

/// Writes the WRGN image of `x` into `out`:
///   out_i = x_i / (x_i + gamma * sum_{j in N(i)} (v_j / v_i) x_j),
/// computed as y_i / (y_i + gamma * (A y)_i) with y = v .* x. Where that
/// denominator is <= kSafeDivisionThreshold the entry becomes
/// kFallbackValue. Returns the number of such fallbacks. `out` must not
/// alias `x`.
std::size_t gn_step(const WeightedGraph& g, std::span<const double> x,
                    double gamma, std::span<double> out);

StateVector gn_step(const WeightedGraph& g, const StateVector& x,
                    double gamma);

/// Nonnegative with every closed neighborhood sum x_i + sum_{N(i)} x_j > 0.
bool is_normalizable(const WeightedGraph& g, std::span<const double> x);

/// Iterates gn_step along `schedule`. Throws InputError if `x0` has the
/// wrong size, a negative or non-finite entry, or is not normalizable, and
/// NumericalError if the state ever turns non-finite. The final state is
/// clamped to [0, 1].
RunOutcome run_wrgn(const WeightedGraph& g, StateVector x0,
                    const GammaSchedule& schedule, RunOptions options = {});

/// -log(u) samples scaled by their maximum and clamped to [1e-3, 1].
/// The stream index selects an independent generator for multi-start runs.
StateVector init_random(std::size_t n, std::uint64_t seed,
                        std::uint64_t stream = 0);

/// Clamps a fractional warm start to [1e-3, 1].
StateVector init_warm(std::span<const double> fractional, std::size_t n);

/// Lyapunov energy in the weighted state y = v .* x:
///   1/2 y^T (I + gamma A) y - sum_i w_i x_i.
/// Evaluated in O(n + |E|).
double energy(const WeightedGraph& g, std::span<const double> x, double gamma);

/// Relaxed MWIS objective sum_i w_i x_i.
double weighted_mass(const WeightedGraph& g, std::span<const double> x);

/// p_i = w_i x_i / sum_j w_j x_j. Throws InputError on zero mass.
std::vector<double> simplex_state(const WeightedGraph& g,
                                  std::span<const double> x);

struct Fitness {
  std::vector<double> f;
  double mean = 0.0;
};

/// Replicator fitness f_i = v_i / ((I + gamma A)(p / v))_i and its
/// p-weighted mean.
Fitness fitness(const WeightedGraph& g, std::span<const double> p,
                double gamma);

/// Threshold at 0.5, repair conflicts by dropping the lighter endpoint
/// (equal weights: the smaller index goes), then complete greedily by
/// descending weight (equal weights: smaller index first). The result is
/// always a maximal independent set.
MisSolution round_to_mis(const WeightedGraph& g, std::span<const double> x);

/// One trajectory of a multi-start run.
struct StartOutcome {
  std::size_t index = 0;
  MisSolution solution;
  RunOutcome run;
  double wall_time_ms = 0.0;   // iteration loop only
  std::optional<std::string> error;
};

/// Runs every initial state along `schedule` on up to `threads` workers and
/// rounds each final state. Results come back in start order and do not
/// depend on the thread count.
std::vector<StartOutcome> run_multistart(const WeightedGraph& g,
                                         std::span<const StateVector> starts,
                                         const GammaSchedule& schedule,
                                         RunOptions options,
                                         std::size_t threads);

}  // namespace gnmwis
