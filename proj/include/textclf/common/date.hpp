#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace textclf {

using Date = std::chrono::sys_days;

/// Parses an ISO-8601 calendar date (YYYY-MM-DD). Throws DataError.
Date parse_date(std::string_view text);
std::string format_date(Date date);

}  // namespace textclf
