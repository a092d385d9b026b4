#include "textclf/common/date.hpp"

#include <charconv>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"

namespace textclf {
namespace {

int parse_field(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DataError(fmt::format("invalid date '{}'", whole));
  }
  return value;
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw DataError(fmt::format("invalid date '{}', expected YYYY-MM-DD", text));
  }
  const std::chrono::year_month_day ymd{
      std::chrono::year{parse_field(text.substr(0, 4), text)},
      std::chrono::month{static_cast<unsigned>(parse_field(text.substr(5, 2), text))},
      std::chrono::day{static_cast<unsigned>(parse_field(text.substr(8, 2), text))}};
  if (!ymd.ok()) throw DataError(fmt::format("invalid calendar date '{}'", text));
  return Date{ymd};
}

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

}  // namespace textclf
