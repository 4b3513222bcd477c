#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "apspectra/errors.hpp"
#include "apspectra/trig_polynomial.hpp"

namespace apspectra {

/// Malformed signal specification; the message names the line or field.
class SignalFormatError : public Error {
 public:
  using Error::Error;
};

/// Parses {"type":"trig","terms":[{"freq":F,"re":F,"im":F}, ...]}.
/// Unknown fields anywhere are rejected.
TrigPolynomial parse_signal(std::string_view text);
TrigPolynomial load_signal(const std::filesystem::path& path);

/// Inverse of parse_signal; numbers are written with 17 significant digits.
std::string format_signal(const TrigPolynomial& p);

}  // namespace apspectra
