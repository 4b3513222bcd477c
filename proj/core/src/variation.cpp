#include "apspectra/variation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "apspectra/errors.hpp"
#include "apspectra/quadrature.hpp"
#include "parallel.hpp"
#include "windows.hpp"

namespace apspectra {
namespace {

constexpr double kNoiseFloor = 1e-13;

void validate(const VariationOptions& o) {
  if (o.initial_grid < 2) throw InvalidArgument("initial grid must have at least 2 intervals");
  if (!(o.tolerance > 0.0)) throw InvalidArgument("tol must be > 0");
  if (o.max_refinements < 0) throw InvalidArgument("max refinements must be >= 0");
}

void validate(const AverageVariationOptions& o) {
  if (!(o.t_initial > 0.0) || !std::isfinite(o.t_initial)) throw InvalidArgument("t-initial must be > 0");
  if (!(o.growth > 1.0) || !std::isfinite(o.growth)) throw InvalidArgument("growth must be > 1");
  if (!(o.tolerance > 0.0)) throw InvalidArgument("tol must be > 0");
  if (o.max_doublings < 1) throw InvalidArgument("max-doublings must be >= 1");
}

void check_interval(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) throw InvalidRange("variation interval must satisfy a <= b");
}

double component(Complex z, int which) { return which == 0 ? z.real() : z.imag(); }

// |z| without hypot's overflow guards; the values here are far from overflow.
double modulus(Complex z) { return std::sqrt(z.real() * z.real() + z.imag() * z.imag()); }

bool brackets_root(double l, double r, double noise) {
  return ((l < 0.0 && r > 0.0) || (l > 0.0 && r < 0.0)) && std::max(std::abs(l), std::abs(r)) > noise;
}

// Integrates |g| over one pre-scan cell, splitting at the zeros of Re g and
// Im g that the endpoint values bracket.
double split_cell(const TrigPolynomial& g, double lo, double hi, Complex left, Complex right, double noise) {
  std::array<double, 4> cuts{};
  std::size_t ncuts = 0;
  for (int which = 0; which < 2; ++which) {
    if (!brackets_root(component(left, which), component(right, which), noise)) continue;
    const auto fn = [&](double x) { return component(g(x), which); };
    const double flo = fn(lo);
    const double fhi = fn(hi);
    if (!((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0))) continue;
    boost::uintmax_t iterations = 60;
    const auto root = boost::math::tools::toms748_solve(fn, lo, hi, flo, fhi,
                                                        boost::math::tools::eps_tolerance<double>(52), iterations);
    cuts[ncuts++] = 0.5 * (root.first + root.second);
  }
  std::sort(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(ncuts));
  const auto abs_g = [&](double x) { return modulus(g(x)); };
  double total = 0.0;
  double from = lo;
  for (std::size_t c = 0; c < ncuts; ++c) {
    if (cuts[c] > from && cuts[c] < hi) {
      total += quadrature::integrate_direct(abs_g, from, cuts[c]);
      from = cuts[c];
    }
  }
  return total + quadrature::integrate_direct(abs_g, from, hi);
}

// A sign change of one component is only a kink of |g| when g itself comes
// close to zero. If min|g| over the cell samples exceeds the path length
// Σ|g_{i+1} - g_i|, |g| stays analytic in a strip at least a panel wide and
// the unsplit rule is already accurate.
template <std::size_t N>
bool near_kink(const std::array<Complex, N>& samples, Complex right) {
  double path = 0.0;
  double smallest = modulus(right);
  for (std::size_t i = 0; i < N; ++i) {
    smallest = std::min(smallest, modulus(samples[i]));
    path += modulus((i + 1 < N ? samples[i + 1] : right) - samples[i]);
  }
  return smallest < path;
}

}  // namespace

const char* to_string(VariationMethod method) noexcept {
  switch (method) {
    case VariationMethod::partition_refinement:
      return "partition_refinement";
    case VariationMethod::derivative_quadrature:
      return "derivative_quadrature";
  }
  return "unknown";
}

double integrate_modulus(const TrigPolynomial& g, double a, double b) {
  check_interval(a, b);
  if (a == b || g.empty()) return 0.0;
  const double omega = g.max_abs_frequency();
  if (omega == 0.0) return std::abs(g(a)) * (b - a);

  // Cells of the pre-scan grid are narrower than the π/(4ω) panel limit, so
  // each unsplit cell is integrated as a single panel.
  const auto cells = quadrature::make_panels(a, b, std::numbers::pi / (10.0 * omega));
  const auto& rule = quadrature::gauss_legendre8();
  const auto nodes = quadrature::node_fractions();
  std::array<double, quadrature::kNodesPerPanel + 1> fractions{};
  fractions[0] = 0.0;
  std::copy(nodes.begin(), nodes.end(), fractions.begin() + 1);
  const double noise = kNoiseFloor * g.coefficient_l1();

  const std::size_t blocks = (cells.count + quadrature::kBlockPanels - 1) / quadrature::kBlockPanels;
  std::vector<double> partial(blocks, 0.0);
  const quadrature::PhasorSampler prototype(g, cells, fractions);

  detail::parallel_for(blocks, [&](std::size_t block) {
    quadrature::PhasorSampler sampler = prototype;
    const std::size_t first = block * quadrature::kBlockPanels;
    const std::size_t last = std::min(cells.count, first + quadrature::kBlockPanels);
    sampler.seek(first);
    std::array<Complex, quadrature::kNodesPerPanel + 1> current{};
    std::array<Complex, quadrature::kNodesPerPanel + 1> upcoming{};
    sampler.next(current);
    double sum = 0.0;
    for (std::size_t i = first; i < last; ++i) {
      Complex right;
      if (i + 1 < last) {
        sampler.next(upcoming);
        right = upcoming[0];
      } else {
        right = g(i + 1 == cells.count ? b : cells.panel_start(i + 1));
      }
      const double lo = cells.panel_start(i);
      const double hi = i + 1 == cells.count ? b : cells.panel_start(i + 1);
      const Complex left = current[0];
      const bool sign_change =
          brackets_root(left.real(), right.real(), noise) || brackets_root(left.imag(), right.imag(), noise);
      if (sign_change && near_kink(current, right)) {
        sum += split_cell(g, lo, hi, left, right, noise);
      } else {
        double panel = 0.0;
        for (std::size_t j = 0; j < quadrature::kNodesPerPanel; ++j) panel += rule.weights[j] * modulus(current[j + 1]);
        sum += 0.5 * cells.width * panel;
      }
      current = upcoming;
    }
    partial[block] = sum;
  });

  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

VariationEstimate partition_variation(const Signal& f, double a, double b, const VariationOptions& options) {
  validate(options);
  check_interval(a, b);
  VariationEstimate est;
  est.a = a;
  est.b = b;
  est.method = VariationMethod::partition_refinement;
  if (a == b) {
    est.refinement_trace.push_back({0, 0.0});
    est.partition_converged = true;
    return est;
  }

  std::size_t n = options.initial_grid;
  double h = (b - a) / static_cast<double>(n);
  std::vector<Complex> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(i == n ? b : a + static_cast<double>(i) * h);
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) sum += std::abs(values[i] - values[i - 1]);
  est.refinement_trace.push_back({n, sum});

  for (int r = 0; r < options.max_refinements; ++r) {
    // Halving h keeps every old node bit-for-bit (scaling by 2 is exact), so
    // the new sum is the old one plus the triangle-inequality excess at each
    // midpoint. Clamping that excess at zero keeps the trace monotone under
    // rounding.
    const double half = 0.5 * h;
    std::vector<Complex> refined(2 * n + 1);
    double excess = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex mid = f(a + static_cast<double>(2 * i + 1) * half);
      refined[2 * i] = values[i];
      refined[2 * i + 1] = mid;
      const double gain = std::abs(mid - values[i]) + std::abs(values[i + 1] - mid) - std::abs(values[i + 1] - values[i]);
      excess += std::max(0.0, gain);
    }
    refined[2 * n] = values[n];
    const double previous = sum;
    sum += excess;
    n *= 2;
    h = half;
    values = std::move(refined);
    est.refinement_trace.push_back({n, sum});
    if (sum - previous <= options.tolerance * (1.0 + sum)) {
      est.partition_converged = true;
      break;
    }
  }
  est.value = sum;
  if (!est.partition_converged) {
    throw NotConverged<VariationEstimate>(
        "partition refinement did not converge within " + std::to_string(options.max_refinements) + " refinements",
        est);
  }
  return est;
}

VariationEstimate total_variation(const Signal& f, double a, double b, const VariationOptions& options) {
  validate(options);
  check_interval(a, b);
  VariationEstimate est;
  if (options.cross_check) {
    try {
      est = partition_variation(f, a, b, options);
    } catch (const NotConverged<VariationEstimate>& e) {
      est = e.partial();
    }
  }
  est.a = a;
  est.b = b;
  est.method = VariationMethod::derivative_quadrature;
  est.value = a == b ? 0.0 : integrate_modulus(f.derivative(1), a, b);
  return est;
}

AverageVariationEstimate average_variation(const Signal& f, const AverageVariationOptions& options) {
  validate(options);
  const TrigPolynomial derivative = f.derivative(1);
  AverageVariationEstimate est;
  est.tolerance = options.tolerance;
  double variation = 0.0;
  double covered = 0.0;
  for (int m = 0; m <= options.max_doublings; ++m) {
    const double length = options.t_initial * std::pow(options.growth, m);
    // V_[0,T] is additive over [0, T_{m-1}] and [T_{m-1}, T_m].
    variation += integrate_modulus(derivative, covered, length);
    covered = length;
    const double value = variation / length;
    est.windows.push_back({length, value});
    est.value = value;
    if (m == 0) continue;
    const double scale = options.tolerance * (1.0 + value);
    if (std::abs(value - est.windows[est.windows.size() - 2].v_over_t) > scale) continue;
    // Off-grid confirmation, as for the Bohr mean.
    const double probe = length * (1.0 + detail::kProbeFraction * (options.growth - 1.0));
    variation += integrate_modulus(derivative, length, probe);
    covered = probe;
    if (std::abs(variation / probe - value) <= scale) {
      est.converged = true;
      return est;
    }
  }
  throw NotConverged<AverageVariationEstimate>(
      "average variation did not converge within " + std::to_string(options.max_doublings) + " window doublings", est);
}

}  // namespace apspectra
