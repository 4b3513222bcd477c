#pragma once

#include <cmath>

namespace apspectra::detail {

// Where the confirmation window sits between T_m and T_{m+1}: the golden
// fraction keeps its leakage phase away from that of the grid windows.
inline constexpr double kProbeFraction = 0.3819660112501051;

// A windowed mean behaves like E(T) = M + g(T)/T with |g| <= G. Two windows
// give G >= |E(s) - E(t)|·st/(s+t), so the error at t is at least the
// returned fraction of |E(s) - E(t)| in the worst case.
template <class V>
double leakage_share(double t, const V& at_t, double s, const V& at_s) {
  return std::abs(at_s - at_t) * s / (s + t);
}

}  // namespace apspectra::detail
