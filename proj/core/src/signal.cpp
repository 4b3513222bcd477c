#include "apspectra/signal.hpp"

namespace apspectra {

Complex Signal::operator()(double x) const noexcept {
  return std::visit([x](const auto& s) { return s(x); }, repr_);
}

TrigPolynomial Signal::derivative(int order) const { return differentiate(poly_, order); }

}  // namespace apspectra
