#pragma once

#include <string>
#include <variant>

#include "apspectra/trig_polynomial.hpp"
#include "apspectra/zeta.hpp"

namespace apspectra {

/// An evaluable almost periodic signal R -> C. Every representation has an
/// exact trigonometric form, which the numerical kernels consume.
class Signal {
 public:
  Signal(TrigPolynomial p) : repr_(std::move(p)), poly_(std::get<TrigPolynomial>(repr_)) {}  // NOLINT
  Signal(const ZetaTruncation& z) : repr_(z), poly_(zeta_to_trig(z)) {}                      // NOLINT

  Complex operator()(double x) const noexcept;

  const TrigPolynomial& polynomial() const noexcept { return poly_; }
  bool is_zeta() const noexcept { return std::holds_alternative<ZetaTruncation>(repr_); }
  const std::variant<TrigPolynomial, ZetaTruncation>& representation() const noexcept { return repr_; }

  /// Exact derivative of the given order, as a trigonometric polynomial.
  TrigPolynomial derivative(int order = 1) const;

  double max_abs_frequency() const noexcept { return poly_.max_abs_frequency(); }

 private:
  std::variant<TrigPolynomial, ZetaTruncation> repr_;
  TrigPolynomial poly_;
};

}  // namespace apspectra
