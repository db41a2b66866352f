#include "gnmwis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "gnmwis/errors.hpp"
#include "linear_program.hpp"

namespace gnmwis {

namespace {

constexpr double kFixedPointTolerance = 1e-8;
constexpr double kPowerTolerance = 1e-10;
constexpr std::size_t kPowerMaxIterations = 100000;

void check_size(const WeightedGraph& g, std::size_t n) {
  if (n != g.size()) throw InputError("vector length does not match graph");
}

// (B x)_i with B = I + gamma diag(v)^-1 A diag(v).
double closed_sum(const WeightedGraph& g, std::span<const double> x,
                  double gamma, Vertex i) {
  const auto v = g.sqrt_weights();
  double s = 0.0;
  for (Vertex j : g.neighbors(i)) s += v[j] * x[j];
  return x[i] + gamma * s / v[i];
}

}  // namespace

double mis_stability(const WeightedGraph& g, const MisSolution& m,
                     double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InputError("stability needs gamma > 0");
  }
  if (!is_maximal_independent(g, m.members)) {
    throw InputError("stability is defined for maximal independent sets only");
  }
  std::vector<char> in(g.size(), 0);
  for (Vertex i : m.members) in[i] = 1;

  double best = kUnconditionallyStable;
  for (Vertex i = 0; i < g.size(); ++i) {
    if (in[i]) continue;
    double s = 0.0;
    for (Vertex j : g.neighbors(i)) {
      if (in[j]) s += std::sqrt(g.weight(j) / g.weight(i));
    }
    best = std::min(best, s);
  }
  return best == kUnconditionallyStable ? best : gamma * best;
}

double fixed_point_residual(const WeightedGraph& g, std::span<const double> x,
                            double gamma) {
  if (!is_normalizable(g, x)) throw InputError("state is not normalizable");
  std::vector<double> image(x.size());
  gn_step(g, x, gamma, image);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r = std::max(r, std::abs(x[i] - image[i]));
  }
  return r;
}

std::vector<double> jacobian_at_fixed_point(const WeightedGraph& g,
                                            std::span<const double> x,
                                            double gamma) {
  check_size(g, x.size());
  const std::size_t n = g.size();
  const auto v = g.sqrt_weights();
  std::vector<double> j(n * n, 0.0);
  for (Vertex i = 0; i < n; ++i) {
    const double d = closed_sum(g, x, gamma, i);
    j[i * n + i] = (1.0 - x[i]) / d;
    for (Vertex k : g.neighbors(i)) {
      j[i * n + k] = -x[i] * gamma * v[k] / v[i] / d;
    }
  }
  return j;
}

SpectralRadius jacobian_spectral_radius(const WeightedGraph& g,
                                        std::span<const double> x,
                                        double gamma) {
  const double res = fixed_point_residual(g, x, gamma);
  if (!(res < kFixedPointTolerance)) {
    throw InputError("not a fixed point (residual " + std::to_string(res) +
                     ")");
  }
  const std::size_t n = g.size();
  SpectralRadius out;

  if (n <= kDenseEigenLimit) {
    const auto dense = jacobian_at_fixed_point(g, x, gamma);
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        jm(dense.data(), static_cast<Eigen::Index>(n),
           static_cast<Eigen::Index>(n));
    Eigen::EigenSolver<Eigen::MatrixXd> es(jm, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
      throw NumericalError("dense eigensolve failed");
    }
    for (const auto& lambda : es.eigenvalues()) {
      out.value = std::max(out.value, std::abs(lambda));
    }
    out.exact = true;
    return out;
  }

  // Sparse J u and J^T u, J_ik = (delta_ik - x_i B_ik) / d_i.
  const auto v = g.sqrt_weights();
  std::vector<double> d(n);
  for (Vertex i = 0; i < n; ++i) d[i] = closed_sum(g, x, gamma, i);
  auto apply = [&](const std::vector<double>& u) {
    std::vector<double> r(n);
    for (Vertex i = 0; i < n; ++i) {
      double s = 0.0;
      for (Vertex k : g.neighbors(i)) s += v[k] * u[k];
      r[i] = ((1.0 - x[i]) * u[i] - x[i] * gamma * s / v[i]) / d[i];
    }
    return r;
  };
  auto apply_t = [&](const std::vector<double>& u) {
    std::vector<double> r(n, 0.0);
    for (Vertex i = 0; i < n; ++i) {
      r[i] += (1.0 - x[i]) * u[i] / d[i];
      for (Vertex k : g.neighbors(i)) {
        r[k] -= x[i] * gamma * v[k] / v[i] / d[i] * u[i];
      }
    }
    return r;
  };

  std::vector<double> u(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double lambda = 0.0;
  for (std::size_t it = 1; it <= kPowerMaxIterations; ++it) {
    auto w = apply_t(apply(u));
    double norm = 0.0;
    for (double wi : w) norm += wi * wi;
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      out.value = 0.0;
      out.exact = false;
      out.iterations = it;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) u[i] = w[i] / norm;
    if (std::abs(norm - lambda) <= kPowerTolerance * norm) {
      out.value = std::sqrt(norm);
      out.exact = false;
      out.iterations = it;
      return out;
    }
    lambda = norm;
  }
  throw NumericalError("power iteration on J^T J did not converge");
}

namespace {

struct EchelonForm {
  std::vector<std::vector<Rational>> rows;  // reduced, augmented with rhs
  std::vector<std::size_t> pivot_cols;
  bool consistent = true;
};

EchelonForm reduce(std::vector<std::vector<Rational>> m, std::size_t ncols) {
  EchelonForm e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    const Rational pivot = m[r][c];
    for (auto& x : m[r]) x /= pivot;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t k = c; k <= ncols; ++k) m[i][k] -= f * m[r][k];
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i) {
    if (m[i][ncols] != 0) e.consistent = false;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

bool all_positive(const std::vector<Rational>& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v > 0; });
}

bool solves_atom_equation(const SimpleGraph& a, const std::vector<Rational>& x) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational s = x[i];
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a.has_edge(i, j)) s += x[j];
    }
    if (s != 1) return false;
  }
  return true;
}

// LP for  max t  s.t.  t <= (x0 + N z)_i  for all i, with z and t free.
// Shifting t = t' + min_i x0_i makes the origin feasible; free variables are
// split as u = u+ - u-. Returns (t, z).
template <typename T>
std::pair<T, std::vector<T>> max_min_coordinate(
    const std::vector<T>& x0, const std::vector<std::vector<T>>& kernel,
    const T& eps) {
  const std::size_t n = x0.size();
  const std::size_t k = kernel.size();
  const T shift = *std::min_element(x0.begin(), x0.end());
  // Variables: t'+, t'-, z1+, z1-, ..., zk+, zk-.
  std::vector<std::vector<T>> rows(n, std::vector<T>(2 + 2 * k, T(0)));
  std::vector<T> rhs(n), cost(2 + 2 * k, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][0] = T(1);
    rows[i][1] = T(-1);
    for (std::size_t l = 0; l < k; ++l) {
      rows[i][2 + 2 * l] = -kernel[l][i];
      rows[i][3 + 2 * l] = kernel[l][i];
    }
    rhs[i] = x0[i] - shift;
  }
  cost[0] = T(1);
  cost[1] = T(-1);
  auto lp = detail::maximize(rows, rhs, cost, eps);
  if (lp.status != detail::LpStatus::optimal) {
    throw NumericalError("positivity LP is unbounded");
  }
  std::vector<T> z(k);
  for (std::size_t l = 0; l < k; ++l) {
    z[l] = lp.solution[2 + 2 * l] - lp.solution[3 + 2 * l];
  }
  return {lp.value + shift, std::move(z)};
}

}  // namespace

SpectrumClassification atom_spectrum(const SimpleGraph& a) {
  const std::size_t n = a.size();
  if (n == 0) throw InputError("atom spectrum of an empty graph");
  if (!a.is_connected()) throw InputError("atom spectrum needs a connected graph");

  SpectrumClassification out;
  out.regular = a.is_regular();

  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = (i == j || a.has_edge(i, j)) ? 1 : 0;
    }
    m[i][n] = 1;
  }
  const auto e = reduce(std::move(m), n);
  out.nullity = n - e.pivot_cols.size();
  if (!e.consistent) {
    out.kind = SpectrumKind::empty;
    return out;
  }

  // Particular solution with free variables at zero, and a kernel basis.
  std::vector<Rational> x0(n, Rational(0));
  std::vector<char> is_pivot(n, 0);
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    x0[e.pivot_cols[r]] = e.rows[r][n];
    is_pivot[e.pivot_cols[r]] = 1;
  }

  if (out.nullity == 0) {
    out.kind = all_positive(x0) ? SpectrumKind::discrete : SpectrumKind::empty;
    if (out.kind == SpectrumKind::discrete) out.witness = std::move(x0);
    return out;
  }

  std::vector<std::vector<Rational>> kernel;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> k(n, Rational(0));
    k[f] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
      k[e.pivot_cols[r]] = -e.rows[r][f];
    }
    kernel.push_back(std::move(k));
  }

  std::vector<double> x0f(n);
  std::vector<std::vector<double>> kf(kernel.size(), std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    x0f[i] = static_cast<double>(x0[i]);
    for (std::size_t l = 0; l < kernel.size(); ++l) {
      kf[l][i] = static_cast<double>(kernel[l][i]);
    }
  }
  auto [margin, zf] = max_min_coordinate<double>(x0f, kf, 1e-12);
  out.positivity_margin = margin;

  auto combine = [&](const std::vector<Rational>& z) {
    std::vector<Rational> x = x0;
    for (std::size_t l = 0; l < kernel.size(); ++l) {
      if (z[l] == 0) continue;
      for (std::size_t i = 0; i < n; ++i) x[i] += z[l] * kernel[l][i];
    }
    return x;
  };

  bool positive = margin > kPositivityBand;
  std::vector<Rational> witness;
  if (positive) {
    std::vector<Rational> z(zf.size());
    for (std::size_t l = 0; l < zf.size(); ++l) z[l] = Rational(zf[l]);
    witness = combine(z);
  }
  if (!positive && margin >= -kPositivityBand) {
    out.borderline = true;
    auto [exact_margin, zq] = max_min_coordinate<Rational>(x0, kernel, Rational(0));
    positive = exact_margin > 0;
    if (positive) witness = combine(zq);
  }
  if (!positive) {
    out.kind = SpectrumKind::empty;
    return out;
  }

  if (out.regular) {
    // The uniform vector 1/(d+1) is always a solution on a regular graph.
    witness.assign(n, Rational(1) / Rational(a.degree(0) + 1));
  }
  if (!all_positive(witness) || !solves_atom_equation(a, witness)) {
    // Rounding of the float LP point lost positivity; settle exactly.
    auto [exact_margin, zq] = max_min_coordinate<Rational>(x0, kernel, Rational(0));
    if (!(exact_margin > 0)) {
      out.kind = SpectrumKind::empty;
      out.witness.clear();
      return out;
    }
    witness = combine(zq);
  }
  out.kind = SpectrumKind::continuous;
  out.witness = std::move(witness);
  return out;
}

double tilted_simplex_q(const WeightedGraph& g, std::span<const double> r,
                        double gamma) {
  check_size(g, r.size());
  const auto v = g.sqrt_weights();
  double tilt = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] >= 0.0)) throw InputError("tilted simplex point has r_i < 0");
    tilt += v[i] * r[i];
  }
  if (!(std::abs(tilt - 1.0) <= 1e-9)) {
    throw InputError("point is off the weight-tilted simplex (sum v_i r_i = " +
                     std::to_string(tilt) + ")");
  }
  double q = 0.0;
  for (Vertex i = 0; i < g.size(); ++i) {
    double s = 0.0;
    for (Vertex j : g.neighbors(i)) s += r[j];
    q += r[i] * (r[i] + gamma * s);
  }
  return q;
}

std::vector<double> tilted_simplex_point(const WeightedGraph& g,
                                         const MisSolution& m) {
  const double total = set_weight(g, m.members);
  if (!(total > 0.0)) throw InputError("tilted simplex point of an empty set");
  std::vector<double> r(g.size(), 0.0);
  for (Vertex i : m.members) r[i] = g.sqrt_weight(i) / total;
  return r;
}

}  // namespace gnmwis
