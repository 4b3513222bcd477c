#include "apspectra/trig_polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "apspectra/errors.hpp"

namespace apspectra {
namespace {

bool finite(const TrigTerm& t) {
  return std::isfinite(t.frequency) && std::isfinite(t.coefficient.real()) &&
         std::isfinite(t.coefficient.imag());
}

// iλA computed component-wise so that integrate() inverts it to the ulp.
Complex times_i_lambda(Complex a, double lambda) {
  return {-lambda * a.imag(), lambda * a.real()};
}

Complex over_i_lambda(Complex a, double lambda) {
  return {a.imag() / lambda, -a.real() / lambda};
}

}  // namespace

bool same_frequency(double a, double b) noexcept {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= kFrequencyMergeTolerance * scale;
}

std::vector<TrigTerm> canonicalize(std::vector<TrigTerm> terms) {
  for (const auto& t : terms) {
    if (!finite(t)) throw InvalidArgument("trigonometric term has a non-finite frequency or coefficient");
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const TrigTerm& l, const TrigTerm& r) { return l.frequency < r.frequency; });

  std::vector<TrigTerm> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    // The group representative is its smallest frequency, so a second pass
    // can never merge two groups produced by the first.
    if (!merged.empty() && same_frequency(merged.back().frequency, t.frequency)) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const TrigTerm& t) { return t.coefficient == Complex{0.0, 0.0}; });
  for (auto& t : merged) {
    if (t.frequency == 0.0) t.frequency = 0.0;  // normalise -0
  }
  return merged;
}

TrigPolynomial::TrigPolynomial(std::vector<TrigTerm> terms) : terms_(canonicalize(std::move(terms))) {}

TrigPolynomial TrigPolynomial::constant(Complex value) { return TrigPolynomial({{0.0, value}}); }

TrigPolynomial TrigPolynomial::exponential(double frequency, Complex coefficient) {
  return TrigPolynomial({{frequency, coefficient}});
}

double TrigPolynomial::max_abs_frequency() const noexcept {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.frequency));
  return m;
}

double TrigPolynomial::coefficient_l1() const noexcept {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

bool TrigPolynomial::has_zero_frequency() const noexcept {
  return std::any_of(terms_.begin(), terms_.end(), [](const TrigTerm& t) { return t.frequency == 0.0; });
}

Complex TrigPolynomial::operator()(double x) const noexcept {
  Complex sum{0.0, 0.0};
  for (const auto& t : terms_) {
    const double phase = t.frequency * x;
    sum += t.coefficient * Complex{std::cos(phase), std::sin(phase)};
  }
  return sum;
}

Complex evaluate(const TrigPolynomial& p, double x) noexcept { return p(x); }

TrigPolynomial add(const TrigPolynomial& p, const TrigPolynomial& q) {
  std::vector<TrigTerm> terms(p.terms().begin(), p.terms().end());
  terms.insert(terms.end(), q.terms().begin(), q.terms().end());
  return TrigPolynomial(std::move(terms));
}

TrigPolynomial multiply(const TrigPolynomial& p, const TrigPolynomial& q) {
  std::vector<TrigTerm> terms;
  terms.reserve(p.size() * q.size());
  for (const auto& a : p.terms()) {
    for (const auto& b : q.terms()) {
      terms.push_back({a.frequency + b.frequency, a.coefficient * b.coefficient});
    }
  }
  return TrigPolynomial(std::move(terms));
}

TrigPolynomial conjugate(const TrigPolynomial& p) {
  std::vector<TrigTerm> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({-t.frequency, std::conj(t.coefficient)});
  return TrigPolynomial(std::move(terms));
}

TrigPolynomial scale(const TrigPolynomial& p, Complex factor) {
  std::vector<TrigTerm> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.frequency, factor * t.coefficient});
  return TrigPolynomial(std::move(terms));
}

TrigPolynomial differentiate(const TrigPolynomial& p) {
  std::vector<TrigTerm> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.frequency, times_i_lambda(t.coefficient, t.frequency)});
  return TrigPolynomial(std::move(terms));
}

TrigPolynomial differentiate(const TrigPolynomial& p, int order) {
  if (order < 0) throw InvalidArgument("derivative order must be >= 0");
  TrigPolynomial result = p;
  for (int k = 0; k < order; ++k) result = differentiate(result);
  return result;
}

TrigPolynomial integrate(const TrigPolynomial& p) {
  if (p.has_zero_frequency()) {
    throw ZeroFrequencyTerm("primitive of a polynomial with a constant term grows linearly and is not almost periodic");
  }
  std::vector<TrigTerm> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.frequency, over_i_lambda(t.coefficient, t.frequency)});
  return TrigPolynomial(std::move(terms));
}

TrigPolynomial shift_frequency(const TrigPolynomial& p, double shift) {
  std::vector<TrigTerm> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.frequency + shift, t.coefficient});
  return TrigPolynomial(std::move(terms));
}

}  // namespace apspectra
