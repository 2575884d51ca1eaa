#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace bsmimo {

using Complex = std::complex<double>;

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Canonical "re+imj" rendering, e.g. "73.1+42.5j", "-12.5-29.9j".
std::string format_complex(Complex v);

/// Strict double parse; the whole token must be consumed.
double parse_double(std::string_view token);

/// Parses "re+imj" / "re-imj"; also accepts a bare real ("re") or pure
/// imaginary ("imj") token.
Complex parse_complex(std::string_view token);

/// Whitespace tokenizer.
std::vector<std::string> split_whitespace(std::string_view line);

}  // namespace bsmimo
