#include "apspectra/signal_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace apspectra {
namespace {

using nlohmann::json;

void reject_unknown(const json& object, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (auto name : allowed) known = known || key == name;
    if (!known) throw SignalFormatError(where + ": unknown field \"" + key + "\"");
  }
}

double number_field(const json& object, const char* name, const std::string& where) {
  const auto it = object.find(name);
  if (it == object.end()) throw SignalFormatError(where + "." + name + ": missing field");
  if (!it->is_number()) throw SignalFormatError(where + "." + name + ": expected a number");
  return it->get<double>();
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TrigPolynomial parse_signal(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SignalFormatError(std::string("malformed signal JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SignalFormatError("signal: expected a JSON object");
  reject_unknown(doc, {"type", "terms"}, "signal");
  const auto type = doc.find("type");
  if (type == doc.end() || !type->is_string()) throw SignalFormatError("signal.type: missing or not a string");
  if (type->get<std::string>() != "trig") {
    throw SignalFormatError("signal.type: unsupported value \"" + type->get<std::string>() + "\"");
  }
  const auto terms = doc.find("terms");
  if (terms == doc.end() || !terms->is_array()) throw SignalFormatError("signal.terms: missing or not an array");

  std::vector<TrigTerm> parsed;
  parsed.reserve(terms->size());
  for (std::size_t i = 0; i < terms->size(); ++i) {
    const std::string where = "signal.terms[" + std::to_string(i) + "]";
    const json& t = (*terms)[i];
    if (!t.is_object()) throw SignalFormatError(where + ": expected an object");
    reject_unknown(t, {"freq", "re", "im"}, where);
    parsed.push_back({number_field(t, "freq", where), {number_field(t, "re", where), number_field(t, "im", where)}});
  }
  try {
    return TrigPolynomial(std::move(parsed));
  } catch (const InvalidArgument& e) {
    throw SignalFormatError(std::string("signal.terms: ") + e.what());
  }
}

TrigPolynomial load_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SignalFormatError("cannot open signal file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_signal(buffer.str());
  } catch (const SignalFormatError& e) {
    throw SignalFormatError(path.string() + ": " + e.what());
  }
}

std::string format_signal(const TrigPolynomial& p) {
  std::string out = R"({"type":"trig","terms":[)";
  bool first = true;
  for (const auto& t : p.terms()) {
    if (!first) out += ',';
    first = false;
    out += R"({"freq":)" + g17(t.frequency) + R"(,"re":)" + g17(t.coefficient.real()) + R"(,"im":)" +
           g17(t.coefficient.imag()) + "}";
  }
  out += "]}";
  return out;
}

}  // namespace apspectra
