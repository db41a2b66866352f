#pragma once

// Dense tableau simplex for   maximize c^T u  s.t.  A u <= b, u >= 0,
// with b >= 0 so the slack basis is feasible from the start. Bland's rule
// keeps it finite; with an exact scalar type the result is exact.

#include <cstddef>
#include <vector>

namespace gnmwis::detail {

enum class LpStatus { optimal, unbounded };

template <typename T>
struct LpResult {
  LpStatus status = LpStatus::optimal;
  T value{};
  std::vector<T> solution;
};

template <typename T>
LpResult<T> maximize(const std::vector<std::vector<T>>& a,
                     const std::vector<T>& b, const std::vector<T>& c,
                     const T& eps);

}  // namespace gnmwis::detail
