#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gnmwis/dynamics.hpp"
#include "gnmwis/graph.hpp"
#include "gnmwis/simple_graph.hpp"

namespace gnmwis {

using Rational = boost::multiprecision::cpp_rational;

/// Stability score of M = V (no outside vertex to destabilize it).
inline constexpr double kUnconditionallyStable =
    std::numeric_limits<double>::infinity();

/// gamma * min_{i not in M} sum_{j in N(i) cap M} sqrt(w_j / w_i).
/// A binary fixed point is asymptotically stable iff this exceeds 1.
/// Throws InputError unless `m` is a maximal independent set and gamma > 0.
double mis_stability(const WeightedGraph& g, const MisSolution& m,
                     double gamma);

/// max_i |x_i - gn_step(x, gamma)_i|. Throws InputError when x is not
/// normalizable.
double fixed_point_residual(const WeightedGraph& g, std::span<const double> x,
                            double gamma);

/// Row-major n x n Jacobian of the WRGN map at a fixed point:
///   J_ij = (delta_ij - x_i B_ij) / (B x)_i,  B = I + gamma diag(v)^-1 A diag(v).
std::vector<double> jacobian_at_fixed_point(const WeightedGraph& g,
                                            std::span<const double> x,
                                            double gamma);

struct SpectralRadius {
  double value = 0.0;
  /// True for the dense eigensolve. False when `value` is the largest
  /// singular value from power iteration on J^T J, an upper bound.
  bool exact = true;
  std::size_t iterations = 0;
};

inline constexpr std::size_t kDenseEigenLimit = 512;

/// Spectral radius of the Jacobian at a fixed point. Exact (dense
/// eigensolve) up to 512 vertices; above that, the singular-value bound.
/// Throws InputError when the fixed-point residual is >= 1e-8 and
/// NumericalError when power iteration does not converge.
SpectralRadius jacobian_spectral_radius(const WeightedGraph& g,
                                        std::span<const double> x,
                                        double gamma);

enum class SpectrumKind { empty, discrete, continuous };

/// Classification of the strictly positive solutions of (A + I) x = 1.
struct SpectrumClassification {
  SpectrumKind kind = SpectrumKind::empty;
  std::vector<Rational> witness;  // empty when kind == empty
  std::size_t nullity = 0;        // dim ker(A + I)
  bool regular = false;
  /// The floating-point positivity LP fell inside the +-1e-9 band and the
  /// outcome was settled by re-solving it in exact arithmetic.
  bool borderline = false;
  /// max over solutions of min_i x_i (singular case; from the float LP).
  double positivity_margin = 0.0;
};

inline constexpr double kPositivityBand = 1e-9;

/// Exact classification for a connected graph. Throws InputError when the
/// graph is empty or disconnected.
SpectrumClassification atom_spectrum(const SimpleGraph& a);

/// r^T (I + gamma A) r on the weight-tilted simplex
/// { r >= 0 : sum_i sqrt(w_i) r_i = 1 }. Throws InputError when r leaves it
/// by more than 1e-9.
double tilted_simplex_q(const WeightedGraph& g, std::span<const double> r,
                        double gamma);

/// r_i = sqrt(w_i) / W(M) on M, 0 elsewhere; Q there equals 1 / W(M).
std::vector<double> tilted_simplex_point(const WeightedGraph& g,
                                         const MisSolution& m);

}  // namespace gnmwis
