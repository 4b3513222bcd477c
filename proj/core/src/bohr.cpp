#include "apspectra/bohr.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "apspectra/errors.hpp"
#include "apspectra/golden.hpp"
#include "apspectra/quadrature.hpp"
#include "parallel.hpp"
#include "windows.hpp"

namespace apspectra {
namespace {

MeanValueEstimate windowed_mean(const TrigPolynomial& p, double bandwidth, const MeanOptions& options) {
  validate(options);
  const double width = quadrature::panel_width_limit(bandwidth);
  MeanValueEstimate est;
  est.tolerance = options.tolerance;
  est.offset = options.offset;

  Complex integral{0.0, 0.0};
  double covered = 0.0;
  for (int m = 0; m <= options.max_doublings; ++m) {
    const double length = options.t_initial * std::pow(options.growth, m);
    integral += quadrature::integrate(p, options.offset + covered, options.offset + length, width);
    covered = length;
    const Complex value = integral / length;
    est.windows.push_back({length, value});
    est.value = value;
    if (m == 0) continue;
    const double scale = options.tolerance * (1.0 + std::abs(value));
    if (std::abs(value - est.windows[est.windows.size() - 2].estimate) > scale) continue;
    // Two grid windows can agree while sharing the same leakage bias (doubling
    // T doubles the leakage phase too), so the whole trace plus one off-grid
    // window must bound the leakage below tolerance. On failure the off-grid
    // stretch is kept for the next window.
    const double probe = length * (1.0 + detail::kProbeFraction * (options.growth - 1.0));
    integral += quadrature::integrate(p, options.offset + length, options.offset + probe, width);
    covered = probe;
    const Complex at_probe = integral / probe;
    double envelope = detail::leakage_share(length, value, probe, at_probe);
    for (std::size_t k = 0; k + 1 < est.windows.size(); ++k) {
      envelope = std::max(envelope, detail::leakage_share(length, value, est.windows[k].length, est.windows[k].estimate));
    }
    if (std::abs(at_probe - value) <= scale && envelope <= scale) {
      est.converged = true;
      return est;
    }
  }
  throw NotConverged<MeanValueEstimate>(
      "mean value did not converge within " + std::to_string(options.max_doublings) + " window doublings", est);
}

}  // namespace

void validate(const MeanOptions& options) {
  if (!std::isfinite(options.offset)) throw InvalidArgument("offset must be finite");
  if (!(options.t_initial > 0.0) || !std::isfinite(options.t_initial))
    throw InvalidArgument("t-initial must be > 0");
  if (!(options.growth > 1.0) || !std::isfinite(options.growth)) throw InvalidArgument("growth must be > 1");
  if (!(options.tolerance > 0.0)) throw InvalidArgument("tol must be > 0");
  if (options.max_doublings < 1) throw InvalidArgument("max-doublings must be >= 1");
}

MeanValueEstimate bohr_mean(const Signal& f, const MeanOptions& options) {
  return windowed_mean(f.polynomial(), f.max_abs_frequency(), options);
}

MeanValueEstimate bohr_coefficient(const Signal& f, double lambda, const MeanOptions& options) {
  if (!std::isfinite(lambda)) throw InvalidArgument("lambda must be finite");
  // f(x)e^{-iλx} is again a trigonometric polynomial with shifted frequencies.
  const TrigPolynomial modulated = shift_frequency(f.polynomial(), -lambda);
  return windowed_mean(modulated, f.max_abs_frequency() + std::abs(lambda), options);
}

namespace {

// Quadrature nodes of [0, window] with the taper and weights folded into the
// samples, stored panel-major.
struct TaperedSamples {
  quadrature::PanelGrid grid;
  std::array<double, quadrature::kNodesPerPanel> fractions{};
  std::vector<Complex> weighted;  // weight · taper · f(x) / window
};

TaperedSamples tapered_samples(const TrigPolynomial& p, double window, double max_demodulation) {
  const double taper_bandwidth = 2.0 * std::numbers::pi / window;
  const double bandwidth = p.max_abs_frequency() + max_demodulation + taper_bandwidth;
  auto nodes = quadrature::sample_nodes(p, 0.0, window, quadrature::panel_width_limit(bandwidth));
  TaperedSamples s;
  s.grid = quadrature::make_panels(0.0, window, quadrature::panel_width_limit(bandwidth));
  s.fractions = quadrature::node_fractions();
  s.weighted.resize(nodes.x.size());
  for (std::size_t n = 0; n < nodes.x.size(); ++n) {
    const double taper = 1.0 - std::cos(taper_bandwidth * nodes.x[n]);
    s.weighted[n] = nodes.value[n] * (nodes.weight[n] * taper / window);
  }
  return s;
}

// Σ weighted·e^{-iλx}. Within a panel e^{-iλx} factors into a panel phasor,
// advanced by one rotation per panel, and eight fixed node offsets.
Complex demodulate(const TaperedSamples& s, double lambda) {
  constexpr std::size_t nodes = quadrature::kNodesPerPanel;
  std::array<Complex, nodes> offset{};
  for (std::size_t j = 0; j < nodes; ++j) offset[j] = std::polar(1.0, -lambda * s.fractions[j] * s.grid.width);
  const Complex rotation = std::polar(1.0, -lambda * s.grid.width);

  double re = 0.0;
  double im = 0.0;
  Complex z;
  for (std::size_t p = 0; p < s.grid.count; ++p) {
    if (p % quadrature::kBlockPanels == 0) z = std::polar(1.0, -lambda * s.grid.panel_start(p));
    double pr = 0.0;
    double pi = 0.0;
    const Complex* c = s.weighted.data() + p * nodes;
    for (std::size_t j = 0; j < nodes; ++j) {
      pr += c[j].real() * offset[j].real() - c[j].imag() * offset[j].imag();
      pi += c[j].real() * offset[j].imag() + c[j].imag() * offset[j].real();
    }
    re += z.real() * pr - z.imag() * pi;
    im += z.real() * pi + z.imag() * pr;
    z = {z.real() * rotation.real() - z.imag() * rotation.imag(), z.real() * rotation.imag() + z.imag() * rotation.real()};
  }
  return {re, im};
}

void validate(const ScanOptions& o) {
  if (!std::isfinite(o.range_lo) || !std::isfinite(o.range_hi) || !(o.range_lo < o.range_hi))
    throw InvalidRange("scan range must be finite with lo < hi");
  if (!(o.step > 0.0) || !std::isfinite(o.step)) throw InvalidArgument("step must be > 0");
  if (!(o.threshold > 0.0)) throw InvalidArgument("threshold must be > 0");
  if (o.window < 0.0 || !std::isfinite(o.window)) throw InvalidArgument("scan window must be >= 0");
  if (o.golden_iterations < 0) throw InvalidArgument("golden iterations must be >= 0");
}

// Seeds are local maxima of the sampled magnitude; a plateau of equal values
// contributes its leftmost point. Grid ends count as maxima when they beat
// their single neighbour.
std::vector<std::size_t> peak_seeds(const std::vector<double>& mag, double threshold) {
  std::vector<std::size_t> seeds;
  const std::size_t n = mag.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && mag[j + 1] == mag[i]) ++j;
    const bool left_ok = i == 0 || mag[i - 1] < mag[i];
    const bool right_ok = j + 1 == n || mag[j + 1] < mag[i];
    if (left_ok && right_ok && mag[i] >= threshold && n > 1) seeds.push_back(i);
    i = j + 1;
  }
  return seeds;
}

}  // namespace

Complex tapered_coefficient(const Signal& f, double lambda, double window) {
  if (!(window > 0.0)) throw InvalidArgument("window must be > 0");
  return demodulate(tapered_samples(f.polynomial(), window, std::abs(lambda)), lambda);
}

SpectrumEstimate scan_spectrum(const Signal& f, const ScanOptions& options) {
  validate(options);
  SpectrumEstimate est;
  est.range_lo = options.range_lo;
  est.range_hi = options.range_hi;
  est.step = options.step;
  est.threshold = options.threshold;
  est.window = options.window > 0.0 ? options.window : 2.0 * std::numbers::pi / options.step;

  const std::size_t points =
      static_cast<std::size_t>(std::floor((options.range_hi - options.range_lo) / options.step * (1.0 + 1e-12))) + 1;
  const double max_demod = std::max(std::abs(options.range_lo), std::abs(options.range_hi)) + options.step;
  const TaperedSamples samples = tapered_samples(f.polynomial(), est.window, max_demod);

  est.grid.resize(points);
  detail::parallel_for(points, [&](std::size_t i) {
    const double lambda = options.range_lo + static_cast<double>(i) * options.step;
    est.grid[i] = {lambda, demodulate(samples, lambda)};
  });

  std::vector<double> magnitude(points);
  for (std::size_t i = 0; i < points; ++i) magnitude[i] = std::abs(est.grid[i].value);
  const auto seeds = peak_seeds(magnitude, options.threshold);

  std::vector<SpectralLine> refined(seeds.size());
  detail::parallel_for(
      seeds.size(),
      [&](std::size_t s) {
        const double centre = est.grid[seeds[s]].lambda;
        const auto objective = [&](double lambda) { return std::abs(demodulate(samples, lambda)); };
        const double lambda = golden_section_maximize(objective, centre - options.step, centre + options.step,
                                                      options.golden_iterations);
        const Complex a = demodulate(samples, lambda);
        refined[s] = {lambda, a, std::abs(a)};
      },
      1);

  for (const auto& line : refined) {
    if (line.magnitude < options.threshold) continue;
    // Two seeds that climb to the same peak collapse into the stronger one.
    if (!est.exponents.empty() && std::abs(est.exponents.back().lambda - line.lambda) < options.step) {
      if (line.magnitude > est.exponents.back().magnitude) est.exponents.back() = line;
      continue;
    }
    est.exponents.push_back(line);
  }
  std::sort(est.exponents.begin(), est.exponents.end(),
            [](const SpectralLine& l, const SpectralLine& r) { return l.lambda < r.lambda; });
  return est;
}

}  // namespace apspectra
