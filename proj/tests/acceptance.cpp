// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "apspectra/almost_periodicity.hpp"
#include "apspectra/bohr.hpp"
#include "apspectra/bounds.hpp"
#include "apspectra/variation.hpp"
#include "apspectra/zeta.hpp"
#include "apspectra/zeta_experiment.hpp"
#include "support/cli_cases.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace apspectra;
using testing_support::planted_terms;
using testing_support::to_polynomial;

namespace {

const double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

std::vector<oracle::Terms> planted_set(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<oracle::Terms> out;
  for (int i = 0; i < count; ++i) out.push_back(planted_terms(rng));
  return out;
}

double min_amplitude(const oracle::Terms& terms) {
  double m = INFINITY;
  for (const auto& [l, a] : terms) m = std::min(m, std::abs(a));
  return m;
}

// 1. Every planted exponent found within 1e-3 in frequency and 1e-2 relative
// in coefficient, and nothing else above threshold.
void planted_recovery(Outcome& o) {
  int lines = 0;
  double worst_freq = 0.0;
  double worst_coeff = 0.0;
  for (const auto& terms : planted_set(1001, 50)) {
    ScanOptions s;
    s.range_lo = -5.5;
    s.range_hi = 5.5;
    s.step = 0.01;
    s.threshold = 0.25 * min_amplitude(terms);
    const auto est = scan_spectrum(to_polynomial(terms), s);
    if (est.exponents.size() != terms.size()) {
      o.fail("found " + std::to_string(est.exponents.size()) + " exponents, planted " +
             std::to_string(terms.size()));
      continue;
    }
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const double df = std::abs(est.exponents[k].lambda - terms[k].first);
      const double dc = std::abs(est.exponents[k].coefficient - terms[k].second) / std::abs(terms[k].second);
      worst_freq = std::max(worst_freq, df);
      worst_coeff = std::max(worst_coeff, dc);
      ++lines;
    }
  }
  if (worst_freq > 1e-3) o.fail("frequency error " + std::to_string(worst_freq));
  if (worst_coeff > 1e-2) o.fail("coefficient error " + std::to_string(worst_coeff));
  o.detail << " lines=" << lines << " max_freq_err=" << worst_freq << " max_coeff_rel_err=" << worst_coeff;
}

// 2. |A_j| <= V(f^(n)) / |lambda_j|^(n+1) for n = 0, 1, 2.
void decay_bound(Outcome& o) {
  int entries = 0;
  double worst_ratio = 0.0;
  for (const auto& terms : planted_set(1001, 50)) {
    std::vector<double> exponents;
    for (const auto& [l, a] : terms) {
      if (std::abs(l) >= 0.1) exponents.push_back(l);
    }
    if (exponents.empty()) continue;
    const TrigPolynomial p = to_polynomial(terms);
    for (int n = 0; n <= 2; ++n) {
      const auto report = check_decay_bound(p, exponents, n);
      for (const auto& e : report.entries) {
        ++entries;
        worst_ratio = std::max(worst_ratio, e.coeff_magnitude / e.bound);
        if (!e.satisfied) o.fail("violated at lambda=" + std::to_string(e.lambda) + " n=" + std::to_string(n));
      }
    }
  }
  o.detail << " entries=" << entries << " max_coeff_over_bound=" << worst_ratio;
}

// 3. A single exponential attains the n = 0 bound.
void tightness(Outcome& o) {
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> freq(0.1, 5.0);
  std::uniform_real_distribution<double> amp(0.5, 3.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double lambda = i % 2 == 0 ? freq(rng) : -freq(rng);
    const auto report = check_decay_bound(TrigPolynomial::exponential(lambda, std::polar(amp(rng), phase(rng))),
                                          {lambda}, 0);
    const auto& e = report.entries.front();
    worst = std::max(worst, std::abs(e.margin));
    if (!e.satisfied) o.fail("unsatisfied at lambda=" + std::to_string(lambda));
  }
  if (worst > 1e-3) o.fail("margin " + std::to_string(worst));
  o.detail << " signals=10 max_abs_margin=" << worst;
}

// 4. a_{f'}(lambda) = i lambda a_f(lambda) within 5 tol.
void derivative_relation(Outcome& o) {
  MeanOptions m;
  const double tol = m.tolerance;
  double worst = 0.0;
  int checks = 0;
  for (const auto& terms : planted_set(1004, 20)) {
    const TrigPolynomial p = to_polynomial(terms);
    const TrigPolynomial dp = differentiate(p);
    for (const auto& [lambda, a] : terms) {
      const Complex expected = Complex{0.0, lambda} * bohr_coefficient(p, lambda, m).value;
      const Complex got = bohr_coefficient(dp, lambda, m).value;
      const double ratio = std::abs(got - expected) / (tol * (1.0 + std::abs(expected)));
      worst = std::max(worst, ratio);
      ++checks;
    }
  }
  if (worst > 5.0) o.fail("error " + std::to_string(worst) + " x tol");
  o.detail << " checks=" << checks << " max_err_over_tol=" << worst;
}

// 5. Variation oracles and method agreement.
void variation_oracles(Outcome& o) {
  const TrigPolynomial sine({{1.0, Complex{0.0, -0.5}}, {-1.0, Complex{0.0, 0.5}}});
  const double tv = total_variation(sine, 0.0, 2.0 * kPi).value;
  const double av = average_variation(sine).value;
  if (std::abs(tv - 4.0) > 1e-6) o.fail("tv(sin) = " + std::to_string(tv));
  if (std::abs(av - oracle::kTwoOverPi) > 1e-4) o.fail("av(sin) = " + std::to_string(av));

  VariationOptions v;
  v.tolerance = 1e-6;
  double worst = 0.0;
  for (const auto& terms : planted_set(1005, 20)) {
    const auto est = total_variation(to_polynomial(terms), 0.0, 20.0, v);
    if (!est.partition_converged) o.fail("partition refinement did not converge");
    const double partition = est.refinement_trace.back().estimate;
    worst = std::max(worst, std::abs(est.value - partition) / (v.tolerance * (1.0 + est.value)));
  }
  if (worst > 10.0) o.fail("method gap " + std::to_string(worst) + " x tol");
  o.detail << " tv_err=" << std::abs(tv - 4.0) << " av_err=" << std::abs(av - oracle::kTwoOverPi)
           << " max_method_gap_over_tol=" << worst;
}

// 6. Classical periodic bound for 1 <= |j| <= 10.
void taibleson(Outcome& o) {
  std::mt19937_64 rng(1006);
  int entries = 0;
  for (int i = 0; i < 10; ++i) {
    const auto report = check_taibleson(to_polynomial(testing_support::periodic_real_terms(rng, 8)), 10);
    entries += static_cast<int>(report.entries.size());
    if (report.entries.size() != 20) o.fail("expected 20 entries");
    for (const auto& e : report.entries) {
      if (!e.satisfied) o.fail("violated at lambda=" + std::to_string(e.lambda));
    }
  }
  o.detail << " signals=10 entries=" << entries;
}

// 7. Average variation of zeta truncations against the analytic lower bound.
void zeta_bounds(Outcome& o) {
  double slowest = 0.0;
  double tight_gap = 0.0;
  double worst = INFINITY;
  for (int terms : {2, 3, 5, 10, 20}) {
    for (int j = 0; j <= 2; ++j) {
      const auto start = std::chrono::steady_clock::now();
      const auto r = zeta_bound_experiment(ZetaTruncation(0.5, terms, j));
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      slowest = std::max(slowest, secs);
      const double expected = zeta_variation_lower_bound(0.5, terms, j);
      worst = std::min(worst, r.variation.value / expected);
      if (r.variation.value < expected * (1.0 - 1e-2))
        o.fail("N=" + std::to_string(terms) + " J=" + std::to_string(j) + " below bound");
      if (secs > 60.0) o.fail("N=" + std::to_string(terms) + " J=" + std::to_string(j) + " too slow");
      if (terms == 2 && j == 0) {
        tight_gap = std::abs(r.variation.value - expected) / expected;
        if (tight_gap > 1e-2) o.fail("tight case off by " + std::to_string(tight_gap));
      }
    }
  }
  o.detail << " runs=15 min_variation_over_bound=" << worst << " tight_rel_gap=" << tight_gap
           << " slowest_s=" << slowest;
}

// 8. Converged means do not depend on the window offset.
void offset_independence(Outcome& o) {
  std::mt19937_64 rng(1008);
  std::uniform_real_distribution<double> offsets(-1000.0, 1000.0);
  double worst = 0.0;
  for (const auto& terms : planted_set(1009, 10)) {
    const TrigPolynomial p = to_polynomial(terms);
    std::vector<Complex> values;
    MeanOptions m;
    // Near-resonant planted terms need windows past the default cap.
    m.max_doublings = 20;
    for (int i = 0; i < 10; ++i) {
      m.offset = offsets(rng);
      values.push_back(bohr_mean(p, m).value);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t k = i + 1; k < values.size(); ++k) {
        const double scale = m.tolerance * (1.0 + std::max(std::abs(values[i]), std::abs(values[k])));
        worst = std::max(worst, std::abs(values[i] - values[k]) / scale);
      }
    }
  }
  if (worst > 2.0) o.fail("pairwise gap " + std::to_string(worst) + " x tol");
  o.detail << " pairs=450 max_gap_over_tol=" << worst;
}

// 9. Translation numbers of e^{ix} + e^{i sqrt2 x}.
void translation_numbers(Outcome& o) {
  const oracle::Terms terms{{1.0, 1.0}, {std::numbers::sqrt2, 1.0}};
  const TrigPolynomial p = to_polynomial(terms);
  TranslationSearch s;
  s.epsilon = 0.2;
  s.tau_lo = 0.0;
  s.tau_hi = 300.0;
  const auto found = find_translation_numbers(p, s);
  if (found.empty()) {
    o.fail("no translation numbers");
    return;
  }
  const double fine = default_probe_step(p, s.probe_window) / 10.0;
  double worst = 0.0;
  for (const auto& t : found) worst = std::max(worst, oracle::discrepancy(terms, t.tau, s.probe_window, fine));
  if (worst >= s.epsilon) o.fail("oracle discrepancy " + std::to_string(worst));
  const double gap = estimate_inclusion_length(found, s.tau_lo, s.tau_hi).l_estimate;
  if (gap >= 100.0) o.fail("inclusion length " + std::to_string(gap));
  o.detail << " found=" << found.size() << " max_fine_discrepancy=" << worst << " l_estimate=" << gap;
}

// 10. Every subcommand reproduces its golden report byte for byte, twice.
void cli_determinism(Outcome& o) {
  int cases = 0;
  for (const auto& c : testing_support::cli_cases(APSPECTRA_FIXTURE_DIR)) {
    const auto first = testing_support::run_cli(c.args);
    const auto second = testing_support::run_cli(c.args);
    const std::string golden = testing_support::read_file(testing_support::golden_path(APSPECTRA_GOLDEN_DIR, c));
    ++cases;
    if (first.code != 0) o.fail(c.name + " exited " + std::to_string(first.code));
    if (first.out != second.out) o.fail(c.name + " differs between runs");
    if (golden.empty() || first.out != golden) o.fail(c.name + "." + c.extension + " differs from golden");
  }
  o.detail << " cases=" << cases;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number.
  std::vector<bool> selected(11, argc == 1);
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k >= 1 && k <= 10) selected[static_cast<std::size_t>(k)] = true;
  }
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"planted spectrum recovery", planted_recovery},
      {"coefficient decay bound, orders 0-2", decay_bound},
      {"single-exponential tightness", tightness},
      {"derivative relation", derivative_relation},
      {"variation oracles and method agreement", variation_oracles},
      {"periodic coefficient bound", taibleson},
      {"zeta truncation lower bound", zeta_bounds},
      {"mean offset independence", offset_independence},
      {"translation numbers and inclusion length", translation_numbers},
      {"cli golden determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i + 1]) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu %s:%s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.str().c_str(),
                secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
