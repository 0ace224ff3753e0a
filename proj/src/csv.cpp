#include "finsler/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace finsler::csv {

std::string format(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_header(std::ostream& os, std::initializer_list<std::string_view> names) {
  bool first = true;
  for (std::string_view n : names) {
    if (!first) os << ',';
    os << n;
    first = false;
  }
  os << '\n';
}

void write_row(std::ostream& os, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << format(values[i]);
  }
  os << '\n';
}

void write_row(std::ostream& os, std::initializer_list<double> values) {
  write_row(os, std::span<const double>(values.begin(), values.size()));
}

}  // namespace finsler::csv
