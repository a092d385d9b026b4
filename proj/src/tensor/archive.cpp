#include "textclf/tensor/archive.hpp"

#include <fstream>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"

namespace textclf::tensor {

const Tensor& Archive::tensor(const std::string& name, const Shape& expected) const {
  for (const auto& [key, value] : tensors) {
    if (key != name) continue;
    if (value.shape() != expected) throw DataError(fmt::format("tensor '{}' has an unexpected shape", name));
    return value;
  }
  throw DataError(fmt::format("model file lacks tensor '{}'", name));
}

nlohmann::json archive_to_json(const Archive& archive) {
  nlohmann::json doc;
  doc["format"] = kArchiveFormat;
  doc["version"] = kArchiveVersion;
  doc["kind"] = archive.kind;
  doc["config"] = archive.config;
  doc["vocabulary"] = archive.vocabulary;
  auto& list = doc["tensors"] = nlohmann::json::array();
  for (const auto& [name, value] : archive.tensors) {
    list.push_back({{"name", name}, {"shape", value.shape()}, {"data", value.values()}});
  }
  return doc;
}

Archive archive_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kArchiveFormat) throw DataError("not a textclf model file");
    const int version = doc.at("version").get<int>();
    if (version != kArchiveVersion) throw DataError(fmt::format("unsupported model file version {}", version));
    Archive archive;
    archive.kind = doc.at("kind").get<std::string>();
    archive.config = doc.at("config");
    archive.vocabulary = doc.at("vocabulary").get<std::vector<std::string>>();
    for (const auto& entry : doc.at("tensors")) {
      auto shape = entry.at("shape").get<Shape>();
      auto data = entry.at("data").get<std::vector<double>>();
      if (element_count(shape) != data.size()) throw DataError("tensor data does not match its shape");
      archive.tensors.emplace_back(entry.at("name").get<std::string>(), Tensor(std::move(shape), std::move(data)));
    }
    return archive;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("malformed model file: {}", e.what()));
  }
}

void write_archive(const std::filesystem::path& path, const Archive& archive) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  out << archive_to_json(archive).dump() << '\n';
  if (!out) throw DataError(fmt::format("failed writing {}", path.string()));
}

Archive read_archive(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot read {}", path.string()));
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return archive_from_json(doc);
}

}  // namespace textclf::tensor
