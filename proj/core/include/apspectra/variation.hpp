#pragma once

#include <cstddef>
#include <vector>

#include "apspectra/signal.hpp"

namespace apspectra {

enum class VariationMethod { partition_refinement, derivative_quadrature };

const char* to_string(VariationMethod method) noexcept;

struct VariationOptions {
  std::size_t initial_grid = 64;
  double tolerance = 1e-6;
  int max_refinements = 16;
  /// Run partition refinement alongside the derivative quadrature.
  bool cross_check = true;
};

struct RefinementStep {
  std::size_t grid_size = 0;  // number of partition intervals
  double estimate = 0.0;

  bool operator==(const RefinementStep&) const = default;
};

/// Variation of f on [a, b], with |·| taken on complex differences.
struct VariationEstimate {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  VariationMethod method = VariationMethod::partition_refinement;
  /// Partition sums S_Γ on successively doubled uniform grids; nondecreasing.
  std::vector<RefinementStep> refinement_trace;
  bool partition_converged = false;
};

/// Uniform-partition sums S_Γ, doubling the grid until successive sums agree
/// within tolerance·(1 + S). Throws NotConverged<VariationEstimate>.
VariationEstimate partition_variation(const Signal& f, double a, double b, const VariationOptions& options = {});

/// ∫_a^b |g(x)| dx by composite Gauss–Legendre, with panels split at sign
/// changes of Re g and Im g found on a pre-scan grid of step π/(10·max|λ|).
double integrate_modulus(const TrigPolynomial& g, double a, double b);

/// Total variation on [a, b]. The value is ∫|f'| by quadrature on the exact
/// derivative; the partition trace is kept as an independent cross-check.
/// Returns 0 when a == b; throws InvalidRange when a > b.
VariationEstimate total_variation(const Signal& f, double a, double b, const VariationOptions& options = {});

struct AverageVariationOptions {
  double t_initial = 64.0;
  double growth = 2.0;
  double tolerance = 1e-5;
  int max_doublings = 16;
};

struct VariationWindow {
  double length = 0.0;
  double v_over_t = 0.0;
};

struct AverageVariationEstimate {
  std::vector<VariationWindow> windows;
  double value = 0.0;
  bool converged = false;
  double tolerance = 0.0;
};

/// (1/T)·V_[0,T](f) over geometric windows until two successive values agree
/// within tolerance·(1 + value). Throws NotConverged<AverageVariationEstimate>.
AverageVariationEstimate average_variation(const Signal& f, const AverageVariationOptions& options = {});

}  // namespace apspectra
