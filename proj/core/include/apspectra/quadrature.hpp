#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "apspectra/trig_polynomial.hpp"

namespace apspectra::quadrature {

inline constexpr std::size_t kNodesPerPanel = 8;

/// Panels are sampled and summed in fixed blocks of this many panels. The
/// phasor recurrence is reseeded at every block start, which makes results
/// independent of how blocks are distributed over threads.
inline constexpr std::size_t kBlockPanels = 64;

struct Rule {
  std::array<double, kNodesPerPanel> nodes;    // on [-1, 1], ascending
  std::array<double, kNodesPerPanel> weights;  // sum to 2
};

/// 8-point Gauss–Legendre rule, computed once by Newton iteration on P_8.
const Rule& gauss_legendre8();

/// π / (4·bandwidth); +inf for a zero bandwidth.
double panel_width_limit(double bandwidth) noexcept;

/// Uniform partition of [start, start + count·width].
struct PanelGrid {
  double start = 0.0;
  double width = 0.0;
  std::size_t count = 0;

  double panel_start(std::size_t i) const noexcept { return start + static_cast<double>(i) * width; }
};

/// Smallest uniform partition of [a, b] whose panels are no wider than
/// max_width. Requires a < b.
PanelGrid make_panels(double a, double b, double max_width);

/// Evaluates a trigonometric polynomial at fixed fractional offsets inside
/// consecutive panels, advancing each term by one complex rotation per panel
/// instead of recomputing sines and cosines.
class PhasorSampler {
 public:
  PhasorSampler(const TrigPolynomial& p, const PanelGrid& grid, std::span<const double> fractions);

  /// Positions the sampler at `panel`, reseeding every phasor exactly.
  void seek(std::size_t panel);
  /// Writes the values at the current panel's offsets into `out` and moves
  /// to the next panel.
  void next(std::span<Complex> out);

  std::size_t fraction_count() const noexcept { return fractions_; }

 private:
  PanelGrid grid_;
  std::size_t terms_;
  std::size_t fractions_;
  std::vector<double> frequencies_;
  std::vector<Complex> offsets_;   // terms_ x fractions_, A_k e^{iλ_k f h}
  std::vector<Complex> rotation_;  // e^{iλ_k h}
  std::vector<Complex> phasor_;    // e^{iλ_k x_panel}
  std::size_t panel_ = 0;
};

/// Fractions (1 + t_j)/2 of the Gauss–Legendre nodes within a panel.
std::array<double, kNodesPerPanel> node_fractions();

/// Composite Gauss–Legendre integral of p over [a, b] with panels no wider
/// than max_width. Returns 0 when a == b.
Complex integrate(const TrigPolynomial& p, double a, double b, double max_width);

/// Composite Gauss–Legendre integral of a real function over `panels`
/// equal panels of [a, b], by direct evaluation.
template <class F>
double integrate_direct(F&& f, double a, double b, std::size_t panels = 1) {
  const auto& rule = gauss_legendre8();
  const double width = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + static_cast<double>(p) * width;
    const double mid = lo + 0.5 * width;
    double s = 0.0;
    for (std::size_t j = 0; j < kNodesPerPanel; ++j) s += rule.weights[j] * f(mid + 0.5 * width * rule.nodes[j]);
    total += 0.5 * width * s;
  }
  return total;
}

/// All quadrature nodes over [a, b] with their weights and the values of p
/// there: Σ weight·value approximates ∫_a^b p.
struct NodeSamples {
  std::vector<double> x;
  std::vector<double> weight;
  std::vector<Complex> value;
};

NodeSamples sample_nodes(const TrigPolynomial& p, double a, double b, double max_width);

}  // namespace apspectra::quadrature
