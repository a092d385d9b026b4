#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "textclf/tensor/tensor.hpp"

namespace textclf::tensor {

inline constexpr const char* kArchiveFormat = "textclf-model";
inline constexpr int kArchiveVersion = 1;

/// Self-describing model container shared by every model kind.
struct Archive {
  std::string kind;
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::string> vocabulary;
  std::vector<std::pair<std::string, Tensor>> tensors;

  /// Throws DataError when `name` is missing or its shape differs.
  const Tensor& tensor(const std::string& name, const Shape& expected) const;
};

nlohmann::json archive_to_json(const Archive& archive);
/// Throws DataError on a wrong format tag, unsupported version or malformed
/// tensor entry.
Archive archive_from_json(const nlohmann::json& doc);

void write_archive(const std::filesystem::path& path, const Archive& archive);
Archive read_archive(const std::filesystem::path& path);

}  // namespace textclf::tensor
