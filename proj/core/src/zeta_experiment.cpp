#include "apspectra/zeta_experiment.hpp"

#include "apspectra/errors.hpp"
#include "apspectra/signal.hpp"

namespace apspectra {

ZetaBoundReport zeta_bound_experiment(const ZetaTruncation& z, const AverageVariationOptions& options,
                                      double report_tolerance) {
  if (!(report_tolerance >= 0.0)) throw InvalidArgument("report tolerance must be >= 0");
  ZetaBoundReport report;
  report.x = z.abscissa();
  report.terms = z.terms();
  report.derivative_order = z.derivative_order();
  report.report_tolerance = report_tolerance;
  report.lower_bound = zeta_variation_lower_bound(z.abscissa(), z.terms(), z.derivative_order());
  report.variation = average_variation(Signal(z), options);
  report.margin = report.variation.value - report.lower_bound;
  report.satisfied = report.variation.value >= report.lower_bound * (1.0 - report_tolerance);
  return report;
}

}  // namespace apspectra
