#include "apspectra/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "apspectra/errors.hpp"

namespace apspectra {

ZetaTruncation::ZetaTruncation(double x, int terms, int derivative_order)
    : x_(x), n_(terms), j_(derivative_order) {
  if (!std::isfinite(x)) throw InvalidArgument("zeta abscissa x must be finite");
  if (terms < 1) throw InvalidArgument("zeta truncation length N must be >= 1");
  if (derivative_order < 0) throw InvalidArgument("zeta derivative order J must be >= 0");
}

Complex ZetaTruncation::operator()(double y) const noexcept {
  Complex sum{0.0, 0.0};
  for (int n = 1; n <= n_; ++n) {
    const double log_n = std::log(static_cast<double>(n));
    Complex c = std::pow(static_cast<double>(n), -x_);
    for (int k = 0; k < j_; ++k) c *= Complex{0.0, -log_n};
    sum += c * std::polar(1.0, -y * log_n);
  }
  return sum;
}

TrigPolynomial zeta_to_trig(const ZetaTruncation& z) {
  std::vector<TrigTerm> terms;
  terms.reserve(static_cast<std::size_t>(z.terms()));
  for (int n = 1; n <= z.terms(); ++n) {
    terms.push_back({-std::log(static_cast<double>(n)), std::pow(static_cast<double>(n), -z.abscissa())});
  }
  // Derivatives go through differentiate() so both routes agree bit for bit.
  return differentiate(TrigPolynomial(std::move(terms)), z.derivative_order());
}

double zeta_variation_lower_bound(double x, int terms, int derivative_order) {
  if (terms < 1) throw InvalidArgument("zeta truncation length N must be >= 1");
  if (derivative_order < 0) throw InvalidArgument("zeta derivative order J must be >= 0");
  double best = 0.0;
  for (int n = 2; n <= terms; ++n) {
    const double nd = static_cast<double>(n);
    best = std::max(best, std::pow(nd, -x) * std::pow(std::log(nd), derivative_order + 1));
  }
  return best;
}

}  // namespace apspectra
