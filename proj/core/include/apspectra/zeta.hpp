#pragma once

#include "apspectra/trig_polynomial.hpp"

namespace apspectra {

/// The J-th derivative (in y) of the Dirichlet partial sum
///   ζ_{x,N}(y) = Σ_{n=1}^{N} n^{-x} e^{-iy log n}.
class ZetaTruncation {
 public:
  /// Throws InvalidArgument unless N >= 1, J >= 0 and x is finite.
  ZetaTruncation(double x, int terms, int derivative_order = 0);

  double abscissa() const noexcept { return x_; }
  int terms() const noexcept { return n_; }
  int derivative_order() const noexcept { return j_; }

  /// Direct summation of Σ n^{-x} (-i log n)^J e^{-iy log n}.
  Complex operator()(double y) const noexcept;

  friend bool operator==(const ZetaTruncation&, const ZetaTruncation&) = default;

 private:
  double x_;
  int n_;
  int j_;
};

/// Frequencies -log n with coefficients n^{-x}(-i log n)^J, canonicalised.
TrigPolynomial zeta_to_trig(const ZetaTruncation& z);

/// max over n in 1..N of n^{-x} (log n)^{J+1}; the n = 1 candidate is 0.
double zeta_variation_lower_bound(double x, int terms, int derivative_order);

}  // namespace apspectra
