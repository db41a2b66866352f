#include "linear_program.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "gnmwis/errors.hpp"

namespace gnmwis::detail {

template <typename T>
LpResult<T> maximize(const std::vector<std::vector<T>>& a,
                     const std::vector<T>& b, const std::vector<T>& c,
                     const T& eps) {
  const std::size_t m = a.size();
  const std::size_t nv = c.size();
  const std::size_t cols = nv + m + 1;  // variables, slacks, rhs

  // Rows 0..m-1 are constraints; row m holds reduced costs (-c).
  std::vector<std::vector<T>> t(m + 1, std::vector<T>(cols, T(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != nv) throw InputError("LP row has wrong width");
    if (b[i] < T(0)) throw InputError("LP needs a nonnegative right-hand side");
    for (std::size_t j = 0; j < nv; ++j) t[i][j] = a[i][j];
    t[i][nv + i] = T(1);
    t[i][cols - 1] = b[i];
    basis[i] = nv + i;
  }
  for (std::size_t j = 0; j < nv; ++j) t[m][j] = -c[j];

  LpResult<T> res;
  for (;;) {
    // Bland: lowest-index column with a negative reduced cost.
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (t[m][j] < -eps) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    T best{};
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > eps) {
        T ratio = t[i][cols - 1] / t[i][enter];
        if (leave == m || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave == m) {
      res.status = LpStatus::unbounded;
      return res;
    }

    const T pivot = t[leave][enter];
    for (auto& x : t[leave]) x /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == T(0)) continue;
      const T factor = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  res.solution.assign(nv, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < nv) res.solution[basis[i]] = t[i][cols - 1];
  }
  res.value = t[m][cols - 1];
  return res;
}

template LpResult<double> maximize(const std::vector<std::vector<double>>&,
                                   const std::vector<double>&,
                                   const std::vector<double>&, const double&);

using Rational = boost::multiprecision::cpp_rational;
template LpResult<Rational> maximize(const std::vector<std::vector<Rational>>&,
                                     const std::vector<Rational>&,
                                     const std::vector<Rational>&,
                                     const Rational&);

}  // namespace gnmwis::detail
