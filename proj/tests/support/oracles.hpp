#pragma once

// Reference computations that share no code with the library: they work on
// raw (frequency, coefficient) lists and use closed forms or plain
// fine-grid rules.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Terms = std::vector<std::pair<double, Complex>>;

inline Complex eval(const Terms& terms, double x) {
  Complex s{0.0, 0.0};
  for (const auto& [l, a] : terms) s += a * std::exp(Complex{0.0, l * x});
  return s;
}

inline Complex eval_derivative(const Terms& terms, double x) {
  Complex s{0.0, 0.0};
  for (const auto& [l, a] : terms) s += a * Complex{0.0, l} * std::exp(Complex{0.0, l * x});
  return s;
}

/// (1/T)∫_a^{a+T} Σ A e^{iλx} dx in closed form.
inline Complex window_mean(const Terms& terms, double a, double T) {
  Complex s{0.0, 0.0};
  for (const auto& [l, c] : terms) {
    if (l == 0.0) {
      s += c;
    } else {
      s += c * (std::exp(Complex{0.0, l * (a + T)}) - std::exp(Complex{0.0, l * a})) / Complex{0.0, l * T};
    }
  }
  return s;
}

/// Composite Simpson on |f'| with n (even) panels. Kinks of |f'| cost
/// O(h^2) each, so n is chosen large by callers.
inline double variation_simpson(const Terms& terms, double a, double b, long n) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double s = std::abs(eval_derivative(terms, a)) + std::abs(eval_derivative(terms, b));
  for (long i = 1; i < n; ++i) {
    s += (i % 2 == 1 ? 4.0 : 2.0) * std::abs(eval_derivative(terms, a + static_cast<double>(i) * h));
  }
  return s * h / 3.0;
}

/// max over x = 0, step, ..., window of |f(x+τ) - f(x)|, evaluated directly.
inline double discrepancy(const Terms& terms, double tau, double window, double step) {
  const auto count = static_cast<long>(std::floor(window / step));
  double worst = 0.0;
  for (long i = 0; i <= count; ++i) {
    const double x = static_cast<double>(i) * step;
    worst = std::max(worst, std::abs(eval(terms, x + tau) - eval(terms, x)));
  }
  return worst;
}

// Frozen with mpmath at 30 digits.
inline constexpr double kInvSqrt2Log2 = 0.490129071734274;  // 2^{-1/2} log 2
inline constexpr double kTwoOverPi = 0.636619772367581;     // 2/π

/// zeta_variation_lower_bound(1/2, N, J) for the featured experiment grid.
struct ZetaBound {
  int terms;
  int order;
  double value;
};
inline constexpr ZetaBound kZetaBounds[] = {
    {1, 0, 0.0},
    {2, 0, 0.490129071734274},
    {3, 0, 0.634284100597564},
    {5, 0, 0.719762515553600},
    {10, 0, 0.735484904010998},
    {20, 0, 0.735484904010998},
    {2, 1, 0.339731584183075},
    {3, 1, 0.696832307423283},
    {5, 1, 1.158413080480903},
    {10, 1, 1.676607395125478},
    {20, 1, 2.006739496544176},
    {2, 2, 0.235483989723662},
    {3, 2, 0.765548536076173},
    {5, 2, 1.864393929985541},
    {10, 2, 3.860531194819503},
    {20, 2, 6.011654274412876},
};

}  // namespace oracle
