#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace textclf {

/// Entries of a flat `key = value` text file, in file order. Blank lines and
/// lines starting with '#' are skipped. Duplicate keys are a DataError.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values(const std::filesystem::path& path);

/// Splits a comma-separated list, trimming whitespace around items.
std::vector<std::string> split_list(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace textclf
