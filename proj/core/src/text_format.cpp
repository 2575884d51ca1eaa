#include "bsmimo/text_format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

#include "bsmimo/errors.hpp"

namespace bsmimo {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex v) {
  std::string out = format_double(v.real());
  if (!(v.imag() < 0.0)) out += '+';
  out += format_double(v.imag());
  out += 'j';
  return out;
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;  // from_chars rejects leading '+'
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || first == last)
    throw Error("not a number: '" + std::string(token) + "'");
  return v;
}

Complex parse_complex(std::string_view token) {
  if (token.empty()) throw Error("empty complex token");
  if (token.back() == 'j' || token.back() == 'J') {
    // find the sign that splits real and imaginary parts (skip position 0 and
    // any sign that is part of an exponent)
    std::size_t split = std::string_view::npos;
    for (std::size_t i = token.size() - 1; i > 0; --i) {
      const char c = token[i];
      if ((c == '+' || c == '-') && token[i - 1] != 'e' && token[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    const std::string_view imag_part = token.substr(0, token.size() - 1);
    if (split == std::string_view::npos)
      return {0.0, parse_double(imag_part)};  // pure imaginary, e.g. "42.5j"
    const double re = parse_double(token.substr(0, split));
    std::string_view im = imag_part.substr(split);
    if (im == "+" || im == "-") im = (im == "+") ? "1" : "-1";
    return {re, parse_double(im)};
  }
  return {parse_double(token), 0.0};
}

std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace bsmimo
