#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include <CLI11.hpp>

#include "apspectra/apspectra.hpp"
#include "report.hpp"

namespace apspectra::cli {
namespace {

constexpr int kMaxZetaTerms = 10000;
constexpr std::size_t kMaxSamples = 10'000'000;

/// Bad input; the message starts with the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string key_of(const std::string& flag) {
  std::string key = flag.substr(2);
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

template <class T>
void assign(T& target, const nlohmann::json& v, const std::string& key) {
  const auto bad = [&key](const char* what) {
    return UsageError("--config: field \"" + key + "\" must be " + what);
  };
  if constexpr (std::is_same_v<T, double> || std::is_same_v<T, std::optional<double>>) {
    if (!v.is_number()) throw bad("a number");
    target = v.get<double>();
  } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::optional<int>>) {
    if (!v.is_number_integer()) throw bad("an integer");
    target = v.get<int>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw bad("a string");
    target = v.get<std::string>();
  } else if constexpr (std::is_same_v<T, std::vector<double>>) {
    if (v.is_number()) {
      target = {v.get<double>()};
      return;
    }
    if (!v.is_array()) throw bad("a number or an array of numbers");
    target.clear();
    for (const auto& item : v) {
      if (!item.is_number()) throw bad("a number or an array of numbers");
      target.push_back(item.get<double>());
    }
  } else {
    static_assert(sizeof(T) == 0, "unsupported flag type");
  }
}

template <class T>
Json to_json(const T& v) {
  if constexpr (std::is_same_v<T, std::optional<double>> || std::is_same_v<T, std::optional<int>>) {
    return v ? Json(*v) : Json(nullptr);
  } else if constexpr (std::is_same_v<T, std::vector<double>>) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
  } else {
    return Json(v);
  }
}

/// Settings for every subcommand. Each subcommand binds the subset it uses.
struct Settings {
  std::string config;
  std::string signal;
  std::optional<double> zeta_x;
  std::optional<int> zeta_n;
  int zeta_j = 0;

  double tol = 1e-5;
  double t_initial = 64.0;
  double growth = 2.0;
  int max_doublings = 16;
  double offset = 0.0;

  std::optional<double> lambda;
  std::vector<double> lambdas;
  std::vector<double> range;
  double step = 0.01;
  std::optional<double> threshold;
  double window = 0.0;
  std::optional<double> epsilon;
  double probe_window = 100.0;
  std::optional<double> probe_step;
  int n = 0;
  int initial_grid = 64;
  int max_refinements = 16;
  int j_max = 10;

  std::optional<double> x;
  std::optional<int> terms;
  std::string mode = "bound";

  std::string out;
  std::string format = "json";
};

/// Flag registry for one subcommand: CLI11 parses the flags, then values not
/// given on the command line are taken from the --config file.
class Flags {
 public:
  explicit Flags(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& flag, T& target, const std::string& help, const std::string& default_text = {},
                   bool echo = true) {
    CLI::Option* opt = app_->add_option(flag, target, help);
    if (default_text.empty()) {
      opt->capture_default_str();
    } else {
      opt->default_str(default_text);
    }
    const std::string key = key_of(flag);
    bindings_.push_back({opt, key, echo, [&target, key](const nlohmann::json& v) { assign(target, v, key); },
                         [&target] { return to_json(target); }});
    return opt;
  }

  void apply(const nlohmann::json& config) {
    for (auto& b : bindings_) {
      if (b.option->count() == 0 && config.contains(b.key)) b.assign(config.at(b.key));
    }
  }

  Json params() const {
    Json p = Json::object();
    for (const auto& b : bindings_) {
      if (b.echo) p[b.key] = b.value();
    }
    return p;
  }

  void collect_keys(std::set<std::string>& keys) const {
    for (const auto& b : bindings_) keys.insert(b.key);
  }

  CLI::App* app() const noexcept { return app_; }

 private:
  struct Binding {
    CLI::Option* option;
    std::string key;
    bool echo;
    std::function<void(const nlohmann::json&)> assign;
    std::function<Json()> value;
  };
  CLI::App* app_;
  std::vector<Binding> bindings_;
};

struct Report {
  Json params = Json::object();
  Json result = Json::object();
  Json trace = Json::array();
  Json warnings = Json::array();
  CsvTable table;
};

Json complex_json(Complex z) {
  Json j = Json::object();
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

std::string num(double v) { return format_number(v); }

// ---- validation ----

void check_finite(double v, const char* flag) {
  if (!std::isfinite(v)) throw UsageError(std::string(flag) + ": must be finite");
}

void check_positive(double v, const char* flag) {
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(std::string(flag) + ": must be a finite number > 0");
}

void check_at_least(int v, int lo, const char* flag) {
  if (v < lo) throw UsageError(std::string(flag) + ": must be >= " + std::to_string(lo));
}

template <class T>
T required(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string(flag) + ": required");
  return *v;
}

std::pair<double, double> range_of(const std::vector<double>& range, bool allow_empty_interval = false) {
  if (range.size() != 2) throw UsageError("--range: expects two numbers");
  check_finite(range[0], "--range");
  check_finite(range[1], "--range");
  const bool ordered = allow_empty_interval ? range[0] <= range[1] : range[0] < range[1];
  if (!ordered) throw UsageError(std::string("--range: lower end must be ") + (allow_empty_interval ? "<=" : "<") +
                                 " upper end");
  return {range[0], range[1]};
}

MeanOptions mean_options(const Settings& s) {
  check_finite(s.offset, "--offset");
  check_positive(s.tol, "--tol");
  check_positive(s.t_initial, "--t-initial");
  if (!(s.growth > 1.0) || !std::isfinite(s.growth)) throw UsageError("--growth: must be a finite number > 1");
  check_at_least(s.max_doublings, 1, "--max-doublings");
  return {s.offset, s.t_initial, s.growth, s.tol, s.max_doublings};
}

AverageVariationOptions average_options(const Settings& s) {
  const MeanOptions m = mean_options(s);
  return {m.t_initial, m.growth, m.tolerance, m.max_doublings};
}

void check_zeta_terms(int terms, const char* flag) {
  if (terms < 1 || terms > kMaxZetaTerms)
    throw UsageError(std::string(flag) + ": must be between 1 and " + std::to_string(kMaxZetaTerms));
}

Signal load_source(const Settings& s, Report& r) {
  const bool from_file = !s.signal.empty();
  const bool from_zeta = s.zeta_x.has_value() || s.zeta_n.has_value();
  if (from_file && from_zeta) throw UsageError("--signal: cannot be combined with --zeta-x/--zeta-N");
  if (from_file) {
    try {
      TrigPolynomial p = load_signal(s.signal);
      r.params["signal"] = Json::parse(format_signal(p));
      return p;
    } catch (const SignalFormatError& e) {
      throw UsageError(std::string("--signal: ") + e.what());
    }
  }
  if (from_zeta) {
    const double x = required(s.zeta_x, "--zeta-x");
    const int terms = required(s.zeta_n, "--zeta-N");
    check_finite(x, "--zeta-x");
    check_zeta_terms(terms, "--zeta-N");
    check_at_least(s.zeta_j, 0, "--J");
    return ZetaTruncation(x, terms, s.zeta_j);
  }
  throw UsageError("--signal: a signal is required (--signal PATH or --zeta-x F --zeta-N I)");
}

// ---- shared report pieces ----

void mean_trace(const MeanValueEstimate& est, Report& r) {
  r.table = CsvTable({"T", "re", "im"});
  for (const auto& w : est.windows) {
    Json row = Json::object();
    row["T"] = w.length;
    row["re"] = w.estimate.real();
    row["im"] = w.estimate.imag();
    r.trace.push_back(row);
    r.table.add_row({num(w.length), num(w.estimate.real()), num(w.estimate.imag())});
  }
}

void variation_trace(const AverageVariationEstimate& est, Report& r) {
  r.table = CsvTable({"T", "v_over_t"});
  for (const auto& w : est.windows) {
    Json row = Json::object();
    row["T"] = w.length;
    row["v_over_t"] = w.v_over_t;
    r.trace.push_back(row);
    r.table.add_row({num(w.length), num(w.v_over_t)});
  }
}

void spectrum_report(const SpectrumEstimate& est, Report& r) {
  r.result["window"] = est.window;
  r.result["grid_points"] = est.grid.size();
  Json lines = Json::array();
  for (const auto& line : est.exponents) {
    Json j = Json::object();
    j["lambda"] = line.lambda;
    j["re"] = line.coefficient.real();
    j["im"] = line.coefficient.imag();
    j["magnitude"] = line.magnitude;
    lines.push_back(j);
  }
  r.result["exponents"] = lines;
  r.table = CsvTable({"lambda", "re", "im", "magnitude"});
  for (const auto& g : est.grid) {
    const double m = std::abs(g.value);
    Json row = Json::object();
    row["lambda"] = g.lambda;
    row["re"] = g.value.real();
    row["im"] = g.value.imag();
    row["magnitude"] = m;
    r.trace.push_back(row);
    r.table.add_row({num(g.lambda), num(g.value.real()), num(g.value.imag()), num(m)});
  }
}

void bound_report(const BoundReport& report, Report& r) {
  r.result["derivative_order"] = report.derivative_order;
  r.result["variation_value"] = report.variation_value;
  r.result["report_tolerance"] = report.report_tolerance;
  r.result["all_satisfied"] = report.all_satisfied();
  Json entries = Json::array();
  r.table = CsvTable({"lambda", "coeff", "bound", "margin", "satisfied"});
  for (const auto& e : report.entries) {
    Json j = Json::object();
    j["lambda"] = e.lambda;
    j["coeff"] = e.coeff_magnitude;
    j["bound"] = e.bound;
    j["margin"] = e.margin;
    j["satisfied"] = e.satisfied;
    entries.push_back(j);
    r.table.add_row({num(e.lambda), num(e.coeff_magnitude), num(e.bound), num(e.margin), csv_bool(e.satisfied)});
    if (!e.satisfied) r.warnings.push_back("bound violated at lambda = " + num(e.lambda));
  }
  r.result["entries"] = entries;
}

/// Runs `body`, turning a non-convergence inside it into exit status 3 with
/// the partial trace in the report.
int guarded(Report& r, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const NotConverged<MeanValueEstimate>& e) {
    r.trace = Json::array();
    mean_trace(e.partial(), r);
    r.warnings.push_back(e.what());
  } catch (const NotConverged<AverageVariationEstimate>& e) {
    r.trace = Json::array();
    variation_trace(e.partial(), r);
    r.warnings.push_back(e.what());
  }
  r.result["converged"] = false;
  return kExitNotConverged;
}

// ---- subcommands ----

int cmd_mean(const Settings& s, Report& r) {
  const Signal f = load_source(s, r);
  const MeanOptions opts = mean_options(s);
  MeanValueEstimate est;
  int code = kExitOk;
  try {
    est = bohr_mean(f, opts);
  } catch (const NotConverged<MeanValueEstimate>& e) {
    est = e.partial();
    r.warnings.push_back(e.what());
    code = kExitNotConverged;
  }
  r.result["value"] = complex_json(est.value);
  r.result["magnitude"] = std::abs(est.value);
  r.result["converged"] = est.converged;
  mean_trace(est, r);
  return code;
}

int cmd_coeff(const Settings& s, Report& r) {
  const Signal f = load_source(s, r);
  const double lambda = required(s.lambda, "--lambda");
  check_finite(lambda, "--lambda");
  const MeanOptions opts = mean_options(s);
  MeanValueEstimate est;
  int code = kExitOk;
  try {
    est = bohr_coefficient(f, lambda, opts);
  } catch (const NotConverged<MeanValueEstimate>& e) {
    est = e.partial();
    r.warnings.push_back(e.what());
    code = kExitNotConverged;
  }
  r.result["lambda"] = lambda;
  r.result["value"] = complex_json(est.value);
  r.result["magnitude"] = std::abs(est.value);
  r.result["converged"] = est.converged;
  mean_trace(est, r);
  return code;
}

SpectrumEstimate checked_scan(const Signal& f, std::pair<double, double> range, double step, double threshold,
                              double window) {
  check_positive(step, "--step");
  check_positive(threshold, "--threshold");
  if (!(window >= 0.0) || !std::isfinite(window)) throw UsageError("--window: must be a finite number >= 0");
  if ((range.second - range.first) / step > static_cast<double>(kMaxSamples))
    throw UsageError("--step: too many grid points for --range");
  return scan_spectrum(f, {range.first, range.second, step, threshold, window});
}

int cmd_scan(const Settings& s, Report& r) {
  const Signal f = load_source(s, r);
  const auto range = range_of(s.range);
  const double threshold = required(s.threshold, "--threshold");
  spectrum_report(checked_scan(f, range, s.step, threshold, s.window), r);
  return kExitOk;
}

int cmd_periods(const Settings& s, Report& r) {
  const Signal f = load_source(s, r);
  const double epsilon = required(s.epsilon, "--epsilon");
  check_positive(epsilon, "--epsilon");
  const auto range = range_of(s.range, true);
  check_positive(s.step, "--step");
  check_positive(s.probe_window, "--probe-window");
  if (s.probe_step) check_positive(*s.probe_step, "--probe-step");
  if ((range.second - range.first) / s.step > static_cast<double>(kMaxSamples))
    throw UsageError("--step: too many grid points for --range");

  const double probe_step = s.probe_step.value_or(default_probe_step(f, s.probe_window));
  std::vector<TranslationNumber> found;
  try {
    found = find_translation_numbers(f, {epsilon, range.first, range.second, s.step, s.probe_window, probe_step});
  } catch (const StepTooCoarse& e) {
    throw UsageError(std::string("--probe-step: ") + e.what());
  }

  r.result["epsilon"] = epsilon;
  r.result["probe_step"] = probe_step;
  r.result["count"] = found.size();
  if (found.empty()) {
    r.result["inclusion_length"] = nullptr;
    r.warnings.push_back("no translation numbers found; epsilon may be too small for the searched range");
  } else {
    r.result["inclusion_length"] = estimate_inclusion_length(found, range.first, range.second).l_estimate;
  }
  Json list = Json::array();
  r.table = CsvTable({"tau", "discrepancy"});
  for (const auto& t : found) {
    Json j = Json::object();
    j["tau"] = t.tau;
    j["discrepancy"] = t.discrepancy;
    j["sup_bound"] = t.sup_bound;
    list.push_back(j);
    r.table.add_row({num(t.tau), num(t.discrepancy)});
  }
  r.result["translation_numbers"] = list;
  return kExitOk;
}

int cmd_variation(const Settings& s, Report& r) {
  const Signal source = load_source(s, r);
  check_at_least(s.n, 0, "--n");
  const Signal f = s.n == 0 ? source : Signal(source.derivative(s.n));

  if (!s.range.empty()) {
    const auto range = range_of(s.range, true);
    check_positive(s.tol, "--tol");
    check_at_least(s.initial_grid, 2, "--initial-grid");
    check_at_least(s.max_refinements, 0, "--max-refinements");
    VariationOptions opts;
    opts.initial_grid = static_cast<std::size_t>(s.initial_grid);
    opts.tolerance = s.tol;
    opts.max_refinements = s.max_refinements;
    const VariationEstimate est = total_variation(f, range.first, range.second, opts);
    r.result["mode"] = "interval";
    r.result["method"] = to_string(est.method);
    r.result["value"] = est.value;
    r.result["partition_value"] = est.refinement_trace.empty() ? 0.0 : est.refinement_trace.back().estimate;
    r.result["partition_converged"] = est.partition_converged;
    if (!est.partition_converged) r.warnings.push_back("partition refinement cross-check did not converge");
    r.table = CsvTable({"grid_size", "estimate"});
    for (const auto& step : est.refinement_trace) {
      Json row = Json::object();
      row["grid_size"] = step.grid_size;
      row["estimate"] = step.estimate;
      r.trace.push_back(row);
      r.table.add_row({std::to_string(step.grid_size), num(step.estimate)});
    }
    return kExitOk;
  }

  const AverageVariationOptions opts = average_options(s);
  AverageVariationEstimate est;
  int code = kExitOk;
  try {
    est = average_variation(f, opts);
  } catch (const NotConverged<AverageVariationEstimate>& e) {
    est = e.partial();
    r.warnings.push_back(e.what());
    code = kExitNotConverged;
  }
  r.result["mode"] = "average";
  r.result["method"] = to_string(VariationMethod::derivative_quadrature);
  r.result["value"] = est.value;
  r.result["converged"] = est.converged;
  variation_trace(est, r);
  return code;
}

int cmd_bound_check(const Settings& s, Report& r) {
  const Signal f = load_source(s, r);
  check_at_least(s.n, 0, "--n");
  std::vector<double> exponents = s.lambdas;
  if (exponents.empty()) {
    for (const auto& t : f.polynomial().terms()) {
      if (t.frequency != 0.0) exponents.push_back(t.frequency);
    }
  }
  for (double l : exponents) {
    check_finite(l, "--lambda");
    if (l == 0.0) throw UsageError("--lambda: the decay bound is undefined at exponent 0");
  }
  const BoundOptions opts{mean_options(s), average_options(s)};
  return guarded(r, [&] {
    bound_report(check_decay_bound(f, exponents, s.n, opts), r);
    r.result["converged"] = true;
  });
}

int cmd_taibleson(const Settings& s, Report& r) {
  const Signal f = load_source(s, r);
  check_at_least(s.j_max, 1, "--j-max");
  TaiblesonOptions opts;
  opts.mean = mean_options(s);
  return guarded(r, [&] {
    try {
      BoundReport report = check_taibleson(f, s.j_max, opts);
      r.result["j_max"] = s.j_max;
      bound_report(report, r);
      r.result["converged"] = true;
    } catch (const NotPeriodic& e) {
      throw UsageError(std::string("--signal: ") + e.what());
    }
  });
}

int cmd_zeta(const Settings& s, Report& r) {
  const double x = required(s.x, "--x");
  check_finite(x, "--x");
  const int terms = required(s.terms, "--N");
  check_zeta_terms(terms, "--N");
  check_at_least(s.zeta_j, 0, "--J");
  const ZetaTruncation z(x, terms, s.zeta_j);
  r.result["x"] = x;
  r.result["N"] = terms;
  r.result["J"] = s.zeta_j;

  if (s.mode == "eval") {
    const auto range = s.range.empty() ? std::pair{0.0, 10.0} : range_of(s.range, true);
    check_positive(s.step, "--step");
    const double span = (range.second - range.first) / s.step;
    if (span > static_cast<double>(kMaxSamples)) throw UsageError("--step: too many samples for --range");
    const auto count = static_cast<std::size_t>(std::floor(span * (1.0 + 1e-12))) + 1;
    r.result["samples"] = count;
    r.table = CsvTable({"y", "re", "im"});
    for (std::size_t i = 0; i < count; ++i) {
      const double y = range.first + static_cast<double>(i) * s.step;
      const Complex v = z(y);
      Json row = Json::object();
      row["y"] = y;
      row["re"] = v.real();
      row["im"] = v.imag();
      r.trace.push_back(row);
      r.table.add_row({num(y), num(v.real()), num(v.imag())});
    }
    return kExitOk;
  }

  if (s.mode == "spectrum") {
    const TrigPolynomial p = zeta_to_trig(z);
    const auto range = s.range.empty() ? std::pair{-std::log(static_cast<double>(terms)) - 0.5, 0.5}
                                       : range_of(s.range);
    double smallest = 0.0;
    for (const auto& t : p.terms()) {
      const double m = std::abs(t.coefficient);
      smallest = smallest == 0.0 ? m : std::min(smallest, m);
    }
    const double threshold = s.threshold.value_or(smallest > 0.0 ? 0.5 * smallest : 0.5);
    r.result["threshold"] = threshold;
    spectrum_report(checked_scan(z, range, s.step, threshold, s.window), r);
    return kExitOk;
  }

  const AverageVariationOptions opts = average_options(s);
  return guarded(r, [&] {
    const ZetaBoundReport report = zeta_bound_experiment(z, opts);
    r.result["variation"] = report.variation.value;
    r.result["lower_bound"] = report.lower_bound;
    r.result["margin"] = report.margin;
    r.result["report_tolerance"] = report.report_tolerance;
    r.result["satisfied"] = report.satisfied;
    r.result["converged"] = report.variation.converged;
    if (!report.satisfied) r.warnings.push_back("estimated average variation is below the lower bound");
    variation_trace(report.variation, r);
  });
}

// ---- wiring ----

void add_source(Flags& f, Settings& s) {
  f.add("--signal", s.signal, "Signal specification file (JSON)", "none", false);
  f.add("--zeta-x", s.zeta_x, "Use the zeta truncation with this abscissa as the signal", "none");
  f.add("--zeta-N", s.zeta_n, "Number of terms of the zeta truncation signal (1..10000)", "none");
  f.add("--J", s.zeta_j, "Derivative order of the zeta truncation");
}

void add_mean(Flags& f, Settings& s, const std::string& tol_help) {
  f.add("--tol", s.tol, tol_help);
  f.add("--t-initial", s.t_initial, "First averaging window length");
  f.add("--growth", s.growth, "Window growth factor (> 1)");
  f.add("--max-doublings", s.max_doublings, "Number of window enlargements before giving up");
}

void add_output(Flags& f, Settings& s) {
  f.add("--out", s.out, "Write the report here instead of stdout; with --format csv the JSON goes to PATH.json",
        "stdout", false);
  f.add("--format", s.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  f.app()->add_option("--config", s.config, "JSON file of defaults (flag names in snake_case); flags take precedence");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw UsageError("--out: cannot write " + path);
}

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("--config: malformed JSON: ") + e.what());
  }
  if (!config.is_object()) throw UsageError("--config: expected a JSON object");
  return config;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Numerical toolkit for almost periodic functions", "apspectra"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  using Handler = int (*)(const Settings&, Report&);
  std::map<std::string, std::pair<std::unique_ptr<Flags>, Handler>> commands;
  const auto add_command = [&](const std::string& name, const std::string& description, Handler handler) -> Flags& {
    auto flags = std::make_unique<Flags>(app.add_subcommand(name, description));
    Flags& ref = *flags;
    commands.emplace(name, std::pair{std::move(flags), handler});
    return ref;
  };

  {
    Flags& f = add_command("mean", "Bohr mean value M{f}", cmd_mean);
    add_source(f, s);
    add_mean(f, s, "Convergence tolerance between successive windows");
    f.add("--offset", s.offset, "Start of every averaging window");
    add_output(f, s);
  }
  {
    Flags& f = add_command("coeff", "Bohr-Fourier coefficient a(lambda)", cmd_coeff);
    add_source(f, s);
    f.add("--lambda", s.lambda, "Frequency to demodulate at", "required");
    add_mean(f, s, "Convergence tolerance between successive windows");
    f.add("--offset", s.offset, "Start of every averaging window");
    add_output(f, s);
  }
  {
    Flags& f = add_command("scan", "Detect Fourier exponents on a frequency grid", cmd_scan);
    add_source(f, s);
    f.add("--range", s.range, "Frequency range LO HI", "required")->expected(2);
    f.add("--step", s.step, "Grid step");
    f.add("--threshold", s.threshold, "Smallest reported coefficient magnitude", "required");
    f.add("--window", s.window, "Averaging window; 0 selects 2*pi/step");
    add_output(f, s);
  }
  {
    Flags& f = add_command("periods", "Search for epsilon-translation numbers", cmd_periods);
    add_source(f, s);
    f.add("--epsilon", s.epsilon, "Translation tolerance", "required");
    f.add("--range", s.range, "Shift range LO HI", "required")->expected(2);
    f.add("--step", s.step, "Shift grid step");
    f.add("--probe-window", s.probe_window, "Length of the probe window [0, W]");
    f.add("--probe-step", s.probe_step, "Probe grid step", "pi/(10*max|lambda|)");
    add_output(f, s);
  }
  {
    Flags& f = add_command("variation", "Total variation on [a, b] or average variation", cmd_variation);
    add_source(f, s);
    f.add("--n", s.n, "Derivative order of the signal to measure");
    f.add("--range", s.range, "Interval A B; omitted selects the average variation", "none")->expected(2);
    add_mean(f, s, "Convergence tolerance (windows, or partition refinement with --range)");
    f.add("--initial-grid", s.initial_grid, "Partition intervals before the first refinement (with --range)");
    f.add("--max-refinements", s.max_refinements, "Partition doublings (with --range)");
    add_output(f, s);
  }
  {
    Flags& f = add_command("bound-check", "Coefficient decay bound |A| <= V(f^(n))/|lambda|^(n+1)", cmd_bound_check);
    add_source(f, s);
    f.add("--lambda", s.lambdas, "Exponent to check (repeatable)", "every nonzero signal frequency");
    f.add("--n", s.n, "Derivative order");
    add_mean(f, s, "Convergence tolerance for coefficients and average variation");
    add_output(f, s);
  }
  {
    Flags& f = add_command("taibleson", "Periodic bound |c_j| <= V_[0,1](f)/(2*pi*|j|)", cmd_taibleson);
    add_source(f, s);
    f.add("--j-max", s.j_max, "Largest |j| checked");
    add_mean(f, s, "Convergence tolerance for the coefficients");
    add_output(f, s);
  }
  {
    Flags& f = add_command("zeta", "Truncated zeta partial sums", cmd_zeta);
    f.add("--x", s.x, "Abscissa (real part)", "required");
    f.add("--N", s.terms, "Number of terms (1..10000)", "required");
    f.add("--J", s.zeta_j, "Derivative order");
    f.add("--mode", s.mode, "eval: samples; spectrum: exponent scan; bound: variation lower bound")
        ->check(CLI::IsMember({"eval", "spectrum", "bound"}));
    f.add("--range", s.range, "Sample range (eval) or frequency range (spectrum)",
          "eval: 0 10; spectrum: -log(N)-0.5 0.5")
        ->expected(2);
    f.add("--step", s.step, "Sample or frequency grid step");
    f.add("--threshold", s.threshold, "Spectrum threshold", "half the smallest coefficient magnitude");
    f.add("--window", s.window, "Spectrum averaging window; 0 selects 2*pi/step");
    add_mean(f, s, "Convergence tolerance for the average variation (bound)");
    add_output(f, s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    err << "apspectra: error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string command = active->get_name();
  auto& [flags, handler] = commands.at(command);

  Report r;
  int code = kExitOk;
  try {
    if (!s.config.empty()) {
      const nlohmann::json config = load_config(s.config);
      std::set<std::string> known;
      for (const auto& [name, entry] : commands) entry.first->collect_keys(known);
      for (const auto& [key, value] : config.items()) {
        if (!known.contains(key)) throw UsageError("--config: unknown field \"" + key + "\"");
      }
      flags->apply(config);
    }
    r.params = flags->params();
    code = handler(s, r);
  } catch (const UsageError& e) {
    err << "apspectra: error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "apspectra: error: " << e.what() << '\n';
    return kExitUsage;
  }

  Json doc = Json::object();
  doc["command"] = command;
  doc["params"] = r.params;
  doc["result"] = r.result;
  doc["trace"] = r.trace;
  doc["warnings"] = r.warnings;
  const std::string json_text = to_text(doc);
  try {
    if (s.format == "csv") {
      const std::string csv = r.table.text();
      if (s.out.empty()) {
        out << csv;
      } else {
        write_file(s.out, csv);
        write_file(s.out + ".json", json_text);
      }
    } else if (s.out.empty()) {
      out << json_text;
    } else {
      write_file(s.out, json_text);
    }
  } catch (const UsageError& e) {
    err << "apspectra: error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (const auto& w : r.warnings) err << "apspectra: warning: " << w.get<std::string>() << '\n';
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace apspectra::cli
