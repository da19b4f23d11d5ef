#pragma once

#include <compare>
#include <string>

namespace skewgim {

// Calendar date backed by a serial day number (days since 1970-01-01,
// proleptic Gregorian). Parsing accepts strict ISO-8601 YYYY-MM-DD.
struct Date {
  int serial = 0;

  auto operator<=>(const Date&) const = default;

  static Date from_ymd(int year, int month, int day);
  static Date parse(const std::string& iso);
  std::string to_string() const;
};

}  // namespace skewgim
