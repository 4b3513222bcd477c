#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace apspectra {

using Complex = std::complex<double>;

/// One term A·e^{iλx}: frequency λ in radians per unit of x, complex amplitude A.
struct TrigTerm {
  double frequency = 0.0;
  Complex coefficient{0.0, 0.0};

  friend bool operator==(const TrigTerm&, const TrigTerm&) = default;
};

/// Relative tolerance under which two frequencies are treated as one term.
inline constexpr double kFrequencyMergeTolerance = 1e-12;

/// True iff |a - b| <= 1e-12 * max(1, |a|, |b|).
bool same_frequency(double a, double b) noexcept;

/// Sorts by frequency, merges equal frequencies by summing their
/// coefficients, and drops terms whose coefficient is exactly zero.
/// Throws InvalidArgument on non-finite input.
std::vector<TrigTerm> canonicalize(std::vector<TrigTerm> terms);

/// A finite sum Σ A_k e^{iλ_k x} with arbitrary real frequencies, always
/// held in canonical form. Immutable after construction.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(std::vector<TrigTerm> terms);

  static TrigPolynomial constant(Complex value);
  static TrigPolynomial exponential(double frequency, Complex coefficient = 1.0);

  std::span<const TrigTerm> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Largest |λ| present; 0 for the zero polynomial.
  double max_abs_frequency() const noexcept;
  /// Σ|A_k|, an upper bound on sup|p|.
  double coefficient_l1() const noexcept;
  bool has_zero_frequency() const noexcept;

  Complex operator()(double x) const noexcept;

  friend bool operator==(const TrigPolynomial&, const TrigPolynomial&) = default;

 private:
  std::vector<TrigTerm> terms_;
};

Complex evaluate(const TrigPolynomial& p, double x) noexcept;

TrigPolynomial add(const TrigPolynomial& p, const TrigPolynomial& q);
TrigPolynomial multiply(const TrigPolynomial& p, const TrigPolynomial& q);
/// (λ, A) -> (-λ, conj A).
TrigPolynomial conjugate(const TrigPolynomial& p);
TrigPolynomial scale(const TrigPolynomial& p, Complex factor);

/// Term-wise A -> iλA. Constant terms vanish.
TrigPolynomial differentiate(const TrigPolynomial& p);
TrigPolynomial differentiate(const TrigPolynomial& p, int order);

/// Term-wise A -> A/(iλ) with zero integration constant. Throws
/// ZeroFrequencyTerm if p has a constant term.
TrigPolynomial integrate(const TrigPolynomial& p);

/// Multiplies by e^{i·shift·x}: every frequency moves by `shift`.
TrigPolynomial shift_frequency(const TrigPolynomial& p, double shift);

}  // namespace apspectra
