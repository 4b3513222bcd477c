#include "apspectra/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "apspectra/errors.hpp"
#include "parallel.hpp"

namespace apspectra::quadrature {
namespace {

Rule build_rule() {
  Rule rule{};
  constexpr int n = static_cast<int>(kNodesPerPanel);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton on the Legendre recurrence.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Newton converged at z; recompute the derivative there for the weight.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

}  // namespace

const Rule& gauss_legendre8() {
  static const Rule rule = build_rule();
  return rule;
}

std::array<double, kNodesPerPanel> node_fractions() {
  const auto& rule = gauss_legendre8();
  std::array<double, kNodesPerPanel> f{};
  for (std::size_t j = 0; j < kNodesPerPanel; ++j) f[j] = 0.5 * (1.0 + rule.nodes[j]);
  return f;
}

double panel_width_limit(double bandwidth) noexcept {
  if (bandwidth <= 0.0) return std::numeric_limits<double>::infinity();
  return std::numbers::pi / (4.0 * bandwidth);
}

PanelGrid make_panels(double a, double b, double max_width) {
  if (!(a < b)) throw InvalidRange("quadrature interval must satisfy a < b");
  if (!(max_width > 0.0)) throw InvalidArgument("panel width limit must be positive");
  const double extent = b - a;
  double count = std::isfinite(max_width) ? std::ceil(extent / max_width) : 1.0;
  if (count < 1.0) count = 1.0;
  return {a, extent / count, static_cast<std::size_t>(count)};
}

PhasorSampler::PhasorSampler(const TrigPolynomial& p, const PanelGrid& grid, std::span<const double> fractions)
    : grid_(grid), terms_(p.size()), fractions_(fractions.size()) {
  frequencies_.reserve(terms_);
  offsets_.reserve(terms_ * fractions_);
  rotation_.reserve(terms_);
  for (const auto& t : p.terms()) {
    frequencies_.push_back(t.frequency);
    rotation_.push_back(std::polar(1.0, t.frequency * grid.width));
    for (double f : fractions) offsets_.push_back(t.coefficient * std::polar(1.0, t.frequency * f * grid.width));
  }
  phasor_.resize(terms_);
  seek(0);
}

void PhasorSampler::seek(std::size_t panel) {
  panel_ = panel;
  const double x = grid_.panel_start(panel);
  for (std::size_t k = 0; k < terms_; ++k) phasor_[k] = std::polar(1.0, frequencies_[k] * x);
}

void PhasorSampler::next(std::span<Complex> out) {
  // Plain real arithmetic: std::complex multiplication carries NaN recovery
  // that costs more than the products themselves here.
  for (std::size_t f = 0; f < fractions_; ++f) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < terms_; ++k) {
      const Complex z = phasor_[k];
      const Complex o = offsets_[k * fractions_ + f];
      re += z.real() * o.real() - z.imag() * o.imag();
      im += z.real() * o.imag() + z.imag() * o.real();
    }
    out[f] = {re, im};
  }
  ++panel_;
  if (panel_ % kBlockPanels == 0) {
    seek(panel_);
  } else {
    for (std::size_t k = 0; k < terms_; ++k) {
      const Complex z = phasor_[k];
      const Complex r = rotation_[k];
      phasor_[k] = {z.real() * r.real() - z.imag() * r.imag(), z.real() * r.imag() + z.imag() * r.real()};
    }
  }
}

Complex integrate(const TrigPolynomial& p, double a, double b, double max_width) {
  if (a == b || p.empty()) return {0.0, 0.0};
  if (b < a) return -integrate(p, b, a, max_width);
  const PanelGrid grid = make_panels(a, b, max_width);
  const auto& rule = gauss_legendre8();
  const auto fractions = node_fractions();
  const std::size_t terms = p.size();

  // The panel rule applied to A e^{iλx} is A e^{iλ x_panel} times a constant
  // per term, so each panel costs one multiply-add per term.
  std::vector<double> frequency(terms);
  std::vector<Complex> panel_weight(terms);
  std::vector<Complex> rotation(terms);
  for (std::size_t k = 0; k < terms; ++k) {
    const auto& t = p.terms()[k];
    frequency[k] = t.frequency;
    Complex w{0.0, 0.0};
    for (std::size_t j = 0; j < kNodesPerPanel; ++j) {
      w += rule.weights[j] * std::polar(1.0, t.frequency * fractions[j] * grid.width);
    }
    panel_weight[k] = t.coefficient * w * (0.5 * grid.width);
    rotation[k] = std::polar(1.0, t.frequency * grid.width);
  }

  const std::size_t blocks = (grid.count + kBlockPanels - 1) / kBlockPanels;
  std::vector<Complex> partial(blocks);
  detail::parallel_for(blocks, [&](std::size_t block) {
    const std::size_t first = block * kBlockPanels;
    const std::size_t last = std::min(grid.count, first + kBlockPanels);
    const double x0 = grid.panel_start(first);
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < terms; ++k) {
      Complex z = std::polar(1.0, frequency[k] * x0);
      Complex acc{0.0, 0.0};
      for (std::size_t i = first; i < last; ++i) {
        acc += z;
        z *= rotation[k];
      }
      sum += panel_weight[k] * acc;
    }
    partial[block] = sum;
  });

  Complex total{0.0, 0.0};
  for (const auto& s : partial) total += s;
  return total;
}

NodeSamples sample_nodes(const TrigPolynomial& p, double a, double b, double max_width) {
  const PanelGrid grid = make_panels(a, b, max_width);
  const auto& rule = gauss_legendre8();
  const auto fractions = node_fractions();
  const std::size_t total = grid.count * kNodesPerPanel;
  NodeSamples s;
  s.x.resize(total);
  s.weight.resize(total);
  s.value.resize(total);
  const std::size_t blocks = (grid.count + kBlockPanels - 1) / kBlockPanels;

  const PhasorSampler prototype(p, grid, fractions);

  detail::parallel_for(blocks, [&](std::size_t block) {
    PhasorSampler sampler = prototype;
    sampler.seek(block * kBlockPanels);
    const std::size_t last = std::min(grid.count, (block + 1) * kBlockPanels);
    for (std::size_t i = block * kBlockPanels; i < last; ++i) {
      const std::size_t base = i * kNodesPerPanel;
      sampler.next(std::span<Complex>(s.value.data() + base, kNodesPerPanel));
      const double lo = grid.panel_start(i);
      for (std::size_t j = 0; j < kNodesPerPanel; ++j) {
        s.x[base + j] = lo + fractions[j] * grid.width;
        s.weight[base + j] = 0.5 * grid.width * rule.weights[j];
      }
    }
  });
  return s;
}

}  // namespace apspectra::quadrature
