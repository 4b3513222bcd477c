#pragma once

#include <optional>
#include <vector>

#include "apspectra/signal.hpp"

namespace apspectra {

/// A shift τ accepted as an ε-translation number on the probe window.
struct TranslationNumber {
  double tau = 0.0;
  /// max over the probe grid of |f(x+τ) - f(x)|.
  double discrepancy = 0.0;
  /// discrepancy plus the Lipschitz allowance for the gaps between probe
  /// points; bounds |f(x+τ) - f(x)| everywhere on the probe window.
  double sup_bound = 0.0;
  double epsilon = 0.0;
};

struct TranslationSearch {
  double epsilon = 0.0;
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  double tau_step = 0.01;
  double probe_window = 100.0;
  /// Empty selects π/(10·max|λ|), the coarsest step allowed.
  std::optional<double> probe_step;
};

/// π/(10·max|λ|), or the whole probe window for a constant signal.
double default_probe_step(const Signal& f, double probe_window);

/// |f(x+τ) - f(x)| maximised over the probe grid x = 0, s, 2s, ..., probe_window.
double translation_discrepancy(const Signal& f, double tau, double probe_window, double probe_step);

/// Every grid τ = tau_lo + k·tau_step in [tau_lo, tau_hi] whose discrepancy is
/// below ε, sorted by τ. Throws InvalidRange, StepTooCoarse, InvalidArgument.
std::vector<TranslationNumber> find_translation_numbers(const Signal& f, const TranslationSearch& search);

struct InclusionLengthEstimate {
  double epsilon = 0.0;
  double l_estimate = 0.0;
  double range_lo = 0.0;
  double range_hi = 0.0;
};

/// Largest gap between consecutive τ, counting the gaps to both range ends.
/// Throws EmptyList when no translation numbers are given.
InclusionLengthEstimate estimate_inclusion_length(const std::vector<TranslationNumber>& numbers, double range_lo,
                                                  double range_hi);

}  // namespace apspectra
