#pragma once

#include <vector>

#include "apspectra/bohr.hpp"
#include "apspectra/signal.hpp"
#include "apspectra/variation.hpp"

namespace apspectra {

struct BoundEntry {
  double lambda = 0.0;
  double coeff_magnitude = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - coeff_magnitude
  bool satisfied = false;
};

/// Per-exponent comparison of |A_j| against V/|λ_j|^{n+1}, where V is the
/// (average) variation of the n-th derivative.
struct BoundReport {
  std::vector<BoundEntry> entries;
  int derivative_order = 0;
  double variation_value = 0.0;
  double report_tolerance = 1e-3;

  bool all_satisfied() const noexcept;
};

struct BoundOptions {
  MeanOptions mean;
  AverageVariationOptions variation;
  double report_tolerance = 1e-3;
};

/// Checks |A_j| <= V̄(f^{(n)}) / |λ_j|^{n+1} for every requested exponent.
/// Throws ZeroExponent for λ = 0, InvalidArgument for n < 0, and propagates
/// NotConverged from the coefficient and variation estimates.
BoundReport check_decay_bound(const Signal& f, const std::vector<double>& exponents, int order,
                              const BoundOptions& options = {});

struct TaiblesonOptions {
  MeanOptions mean;
  VariationOptions variation;
  double report_tolerance = 1e-3;
  /// Maximum |f(x+1) - f(x)| accepted on the periodicity probe.
  double periodicity_tolerance = 1e-9;
};

/// Classical periodic case: for 1-periodic f, checks |c_j| <= V_[0,1](f)/(2π|j|)
/// for 1 <= |j| <= j_max, with c_j = a(2πj). Throws NotPeriodic.
BoundReport check_taibleson(const Signal& f, int j_max, const TaiblesonOptions& options = {});

}  // namespace apspectra
