#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace apspectra::cli {

using Json = nlohmann::ordered_json;

/// %.17g; NaN and infinities have no JSON spelling and become null.
std::string format_number(double v);

/// Deterministic JSON text: keys in insertion order, numbers via
/// format_number, two-space indentation. Containers holding only scalars
/// are written on one line.
std::string to_text(const Json& doc);

class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells);
  std::string text() const;
  bool empty() const noexcept { return header_.empty(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_bool(bool v);

}  // namespace apspectra::cli
