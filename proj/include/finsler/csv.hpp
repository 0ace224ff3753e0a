#pragma once

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace finsler::csv {

/// 17 significant digits with '.' as decimal separator, whatever the locale.
std::string format(double x);

void write_header(std::ostream& os, std::initializer_list<std::string_view> names);
void write_row(std::ostream& os, std::span<const double> values);
void write_row(std::ostream& os, std::initializer_list<double> values);

}  // namespace finsler::csv
