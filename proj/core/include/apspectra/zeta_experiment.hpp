#pragma once

#include "apspectra/variation.hpp"
#include "apspectra/zeta.hpp"

namespace apspectra {

/// Estimated average variation of ζ^{(J)}_{x,N} against its analytic lower bound.
struct ZetaBoundReport {
  double x = 0.0;
  int terms = 0;
  int derivative_order = 0;
  AverageVariationEstimate variation;
  double lower_bound = 0.0;
  double margin = 0.0;  // variation.value - lower_bound
  double report_tolerance = 1e-2;
  bool satisfied = false;  // variation.value >= lower_bound·(1 - report_tolerance)
};

ZetaBoundReport zeta_bound_experiment(const ZetaTruncation& z, const AverageVariationOptions& options = {},
                                      double report_tolerance = 1e-2);

}  // namespace apspectra
