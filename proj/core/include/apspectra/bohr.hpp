#pragma once

#include <vector>

#include "apspectra/signal.hpp"

namespace apspectra {

/// Geometric averaging windows T_m = t_initial · growth^m, m = 0..max_doublings,
/// all starting at `offset`.
struct MeanOptions {
  double offset = 0.0;
  double t_initial = 64.0;
  double growth = 2.0;
  double tolerance = 1e-5;
  int max_doublings = 16;
};

/// Throws InvalidArgument naming the first violated precondition.
void validate(const MeanOptions& options);

struct MeanWindow {
  double length = 0.0;
  Complex estimate{0.0, 0.0};
};

/// Bohr mean (1/T)∫_a^{a+T} f over growing windows. `converged` is set when
/// the last two estimates agree within tolerance·(1 + |last|).
struct MeanValueEstimate {
  Complex value{0.0, 0.0};
  std::vector<MeanWindow> windows;
  bool converged = false;
  double tolerance = 0.0;
  double offset = 0.0;
};

/// Windowed mean value M{f}. Throws NotConverged<MeanValueEstimate> with the
/// full trace when no two successive windows agree.
MeanValueEstimate bohr_mean(const Signal& f, const MeanOptions& options = {});

/// a(λ) = M{f(x) e^{-iλx}}.
MeanValueEstimate bohr_coefficient(const Signal& f, double lambda, const MeanOptions& options = {});

struct ScanOptions {
  double range_lo = 0.0;
  double range_hi = 0.0;
  double step = 0.01;
  double threshold = 0.0;
  /// Averaging window for the scan; 0 selects 2π/step, which puts two grid
  /// steps inside the main lobe of every peak.
  double window = 0.0;
  int golden_iterations = 40;
};

struct SpectralLine {
  double lambda = 0.0;
  Complex coefficient{0.0, 0.0};
  double magnitude = 0.0;
};

struct ScanSample {
  double lambda = 0.0;
  Complex value{0.0, 0.0};
};

struct SpectrumEstimate {
  std::vector<SpectralLine> exponents;  // sorted by lambda, magnitude >= threshold
  double range_lo = 0.0;
  double range_hi = 0.0;
  double step = 0.0;
  double threshold = 0.0;
  double window = 0.0;
  std::vector<ScanSample> grid;
};

/// Tapered estimate of a(λ) over [0, window]: the mean of f(x)e^{-iλx}
/// weighted by the Hann taper 1 - cos(2πx/window), which has unit mean.
/// Converges to a(λ) as the window grows but leaks like 1/Δ³ instead of 1/Δ.
Complex tapered_coefficient(const Signal& f, double lambda, double window);

/// Detects Fourier exponents on a uniform λ grid: local maxima of the
/// tapered |a(λ)| above threshold, each refined by golden-section search
/// within ±step. Throws InvalidRange / InvalidArgument.
SpectrumEstimate scan_spectrum(const Signal& f, const ScanOptions& options);

}  // namespace apspectra
