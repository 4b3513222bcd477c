#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace apspectra::cli {
namespace {

bool is_container(const Json& j) { return j.is_object() || j.is_array(); }

bool flat(const Json& j) {
  for (const auto& item : j) {
    if (is_container(item)) return false;
  }
  return true;
}

void write(const Json& j, std::string& out, int indent);

void write_scalar(const Json& j, std::string& out) {
  if (j.is_number_float()) {
    out += format_number(j.get<double>());
  } else {
    out += j.dump();
  }
}

void write_container(const Json& j, std::string& out, int indent) {
  const bool object = j.is_object();
  const char open = object ? '{' : '[';
  const char close = object ? '}' : ']';
  if (j.empty()) {
    out += open;
    out += close;
    return;
  }
  const bool inline_form = flat(j);
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  out += open;
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ',';
    first = false;
    if (inline_form) {
      if (it != j.begin()) out += ' ';
    } else {
      out += '\n';
      out += pad;
    }
    if (object) {
      out += Json(it.key()).dump();
      out += ": ";
    }
    write(*it, out, indent + 2);
  }
  if (!inline_form) {
    out += '\n';
    out.append(static_cast<std::size_t>(indent), ' ');
  }
  out += close;
}

void write(const Json& j, std::string& out, int indent) {
  if (is_container(j)) {
    write_container(j, out, indent);
  } else {
    write_scalar(j, out);
  }
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_text(const Json& doc) {
  std::string out;
  write(doc, out, 0);
  out += '\n';
  return out;
}

void CsvTable::add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

std::string CsvTable::text() const {
  std::string out;
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& row : rows_) line(row);
  return out;
}

std::string csv_bool(bool v) { return v ? "true" : "false"; }

}  // namespace apspectra::cli
