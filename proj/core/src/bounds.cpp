#include "apspectra/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "apspectra/errors.hpp"

namespace apspectra {
namespace {

BoundEntry make_entry(double lambda, double coeff, double bound, double tolerance) {
  return {lambda, coeff, bound, bound - coeff, coeff <= bound * (1.0 + tolerance)};
}

// Below this level a coefficient is quadrature round-off, and a constant
// signal (bound 0) must still report c_j = 0.
double coefficient_magnitude(const Signal& f, double lambda, const MeanOptions& options) {
  const double magnitude = std::abs(bohr_coefficient(f, lambda, options).value);
  return magnitude <= 1e-13 * f.polynomial().coefficient_l1() ? 0.0 : magnitude;
}

}  // namespace

bool BoundReport::all_satisfied() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const BoundEntry& e) { return e.satisfied; });
}

BoundReport check_decay_bound(const Signal& f, const std::vector<double>& exponents, int order,
                              const BoundOptions& options) {
  if (order < 0) throw InvalidArgument("derivative order n must be >= 0");
  if (!(options.report_tolerance >= 0.0)) throw InvalidArgument("report tolerance must be >= 0");
  for (double lambda : exponents) {
    if (lambda == 0.0) throw ZeroExponent("the decay bound is undefined at exponent 0");
    if (!std::isfinite(lambda)) throw InvalidArgument("exponents must be finite");
  }

  BoundReport report;
  report.derivative_order = order;
  report.report_tolerance = options.report_tolerance;
  report.variation_value = average_variation(Signal(f.derivative(order)), options.variation).value;

  for (double lambda : exponents) {
    const double coeff = coefficient_magnitude(f, lambda, options.mean);
    // |λ| rather than λ: the integration-by-parts estimate only involves 1/|λ|.
    const double bound = report.variation_value / std::pow(std::abs(lambda), order + 1);
    report.entries.push_back(make_entry(lambda, coeff, bound, options.report_tolerance));
  }
  return report;
}

BoundReport check_taibleson(const Signal& f, int j_max, const TaiblesonOptions& options) {
  if (j_max < 1) throw InvalidArgument("j-max must be >= 1");
  constexpr int kProbePoints = 1000;
  constexpr double kProbeSpan = 10.0;
  for (int i = 0; i <= kProbePoints; ++i) {
    const double x = kProbeSpan * i / kProbePoints;
    const double gap = std::abs(f(x + 1.0) - f(x));
    if (gap > options.periodicity_tolerance) {
      throw NotPeriodic("signal is not 1-periodic: |f(x+1) - f(x)| = " + std::to_string(gap) +
                        " at x = " + std::to_string(x));
    }
  }

  BoundReport report;
  report.derivative_order = 0;
  report.report_tolerance = options.report_tolerance;
  report.variation_value = total_variation(f, 0.0, 1.0, options.variation).value;

  for (int j = -j_max; j <= j_max; ++j) {
    if (j == 0) continue;
    const double lambda = 2.0 * std::numbers::pi * j;
    const double coeff = coefficient_magnitude(f, lambda, options.mean);
    const double bound = report.variation_value / std::abs(lambda);
    report.entries.push_back(make_entry(lambda, coeff, bound, options.report_tolerance));
  }
  return report;
}

}  // namespace apspectra
