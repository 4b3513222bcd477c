#include "apspectra/almost_periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "apspectra/errors.hpp"
#include "parallel.hpp"

namespace apspectra {
namespace {

struct ProbeGrid {
  std::size_t intervals = 0;
  double step = 0.0;
};

ProbeGrid make_probe_grid(double window, double max_step) {
  const double n = std::max(1.0, std::ceil(window / max_step * (1.0 - 1e-12)));
  return {static_cast<std::size_t>(n), window / n};
}

// A_k e^{iλ_k x_j} for every term k and probe point j, row-major by point.
struct ProbeTable {
  std::size_t terms = 0;
  std::size_t points = 0;
  double step = 0.0;
  std::vector<Complex> phasors;
};

ProbeTable make_table(const TrigPolynomial& p, const ProbeGrid& grid) {
  ProbeTable t;
  t.terms = p.size();
  t.points = grid.intervals + 1;
  t.step = grid.step;
  t.phasors.resize(t.terms * t.points);
  for (std::size_t j = 0; j < t.points; ++j) {
    const double x = static_cast<double>(j) * grid.step;
    for (std::size_t k = 0; k < t.terms; ++k) {
      const auto& term = p.terms()[k];
      t.phasors[j * t.terms + k] = term.coefficient * std::polar(1.0, term.frequency * x);
    }
  }
  return t;
}

struct Measured {
  double discrepancy = 0.0;
  double sup_bound = 0.0;
};

// f(x+τ) - f(x) = Σ A_k (e^{iλ_k τ} - 1) e^{iλ_k x}, so the difference is
// formed term-wise without cancellation between two large values.
Measured measure(const TrigPolynomial& p, const ProbeTable& table, double tau) {
  std::vector<Complex> shift(table.terms);
  double lipschitz = 0.0;
  for (std::size_t k = 0; k < table.terms; ++k) {
    const auto& term = p.terms()[k];
    const double phase = term.frequency * tau;
    // e^{iθ} - 1 = 2i sin(θ/2) e^{iθ/2}, accurate for small θ.
    shift[k] = Complex{0.0, 2.0 * std::sin(0.5 * phase)} * std::polar(1.0, 0.5 * phase);
    lipschitz += std::abs(term.coefficient) * std::abs(shift[k]) * std::abs(term.frequency);
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < table.points; ++j) {
    Complex g{0.0, 0.0};
    const Complex* row = table.phasors.data() + j * table.terms;
    for (std::size_t k = 0; k < table.terms; ++k) g += row[k] * shift[k];
    worst = std::max(worst, std::abs(g));
  }
  return {worst, worst + 0.5 * lipschitz * table.step};
}

double resolve_probe_step(const Signal& f, const TranslationSearch& s) {
  const double limit = default_probe_step(f, s.probe_window);
  if (!s.probe_step) return limit;
  const double step = *s.probe_step;
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("probe step must be > 0");
  if (f.max_abs_frequency() > 0.0 && step > limit * (1.0 + 1e-12)) {
    throw StepTooCoarse("probe step exceeds pi/(10*max|lambda|) = " + std::to_string(limit));
  }
  return step;
}

}  // namespace

double default_probe_step(const Signal& f, double probe_window) {
  const double omega = f.max_abs_frequency();
  if (omega == 0.0) return probe_window;
  return std::numbers::pi / (10.0 * omega);
}

double translation_discrepancy(const Signal& f, double tau, double probe_window, double probe_step) {
  if (!(probe_window > 0.0) || !(probe_step > 0.0)) throw InvalidArgument("probe window and step must be > 0");
  const ProbeTable table = make_table(f.polynomial(), make_probe_grid(probe_window, probe_step));
  return measure(f.polynomial(), table, tau).discrepancy;
}

std::vector<TranslationNumber> find_translation_numbers(const Signal& f, const TranslationSearch& s) {
  if (!(s.epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (!std::isfinite(s.tau_lo) || !std::isfinite(s.tau_hi) || s.tau_lo > s.tau_hi)
    throw InvalidRange("tau range must be finite with lo <= hi");
  if (!(s.tau_step > 0.0) || !std::isfinite(s.tau_step)) throw InvalidArgument("tau step must be > 0");
  if (!(s.probe_window > 0.0) || !std::isfinite(s.probe_window)) throw InvalidArgument("probe window must be > 0");
  const double probe_step = resolve_probe_step(f, s);

  const TrigPolynomial& p = f.polynomial();
  const ProbeTable table = make_table(p, make_probe_grid(s.probe_window, probe_step));
  const std::size_t count =
      static_cast<std::size_t>(std::floor((s.tau_hi - s.tau_lo) / s.tau_step * (1.0 + 1e-12))) + 1;

  std::vector<Measured> measured(count);
  detail::parallel_for(count, [&](std::size_t k) {
    measured[k] = measure(p, table, s.tau_lo + static_cast<double>(k) * s.tau_step);
  }, 256);

  std::vector<TranslationNumber> found;
  for (std::size_t k = 0; k < count; ++k) {
    if (measured[k].discrepancy < s.epsilon) {
      found.push_back({s.tau_lo + static_cast<double>(k) * s.tau_step, measured[k].discrepancy,
                       measured[k].sup_bound, s.epsilon});
    }
  }
  return found;
}

InclusionLengthEstimate estimate_inclusion_length(const std::vector<TranslationNumber>& numbers, double range_lo,
                                                  double range_hi) {
  if (numbers.empty()) throw EmptyList("no translation numbers in range; epsilon too small for the searched range");
  if (!(range_lo <= range_hi)) throw InvalidRange("search range must satisfy lo <= hi");
  InclusionLengthEstimate est;
  est.epsilon = numbers.front().epsilon;
  est.range_lo = range_lo;
  est.range_hi = range_hi;
  double gap = numbers.front().tau - range_lo;
  for (std::size_t i = 1; i < numbers.size(); ++i) gap = std::max(gap, numbers[i].tau - numbers[i - 1].tau);
  gap = std::max(gap, range_hi - numbers.back().tau);
  est.l_estimate = gap;
  return est;
}

}  // namespace apspectra
