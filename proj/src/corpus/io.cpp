#include "textclf/corpus/io.hpp"

#include <fstream>

#include <fmt/format.h>

#include "json.hpp"
#include "textclf/common/errors.hpp"
#include "textclf/corpus/preprocess.hpp"

namespace textclf::corpus {
namespace {

using nlohmann::json;

std::optional<std::string> optional_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw DataError(fmt::format("field '{}' must be a string", key));
  return it->get<std::string>();
}

}  // namespace

std::string record_to_line(const RawRecord& record) {
  json obj = json::object();
  if (record.macroscopy) obj["macroscopy"] = *record.macroscopy;
  if (record.diagnosis) obj["diagnosis"] = *record.diagnosis;
  if (record.anamnesis) obj["anamnesis"] = *record.anamnesis;
  if (record.label) obj["label"] = *record.label;
  obj["inserted_at"] = format_date(record.inserted_at);
  if (record.distilled_k) obj["distilled_k"] = *record.distilled_k;
  return obj.dump();
}

RawRecord record_from_line(const std::string& line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(fmt::format("malformed record: {}", e.what()));
  }
  if (!obj.is_object()) throw DataError("record must be a JSON object");
  RawRecord record;
  record.macroscopy = optional_string(obj, "macroscopy");
  record.diagnosis = optional_string(obj, "diagnosis");
  record.anamnesis = optional_string(obj, "anamnesis");
  record.label = optional_string(obj, "label");
  auto date = optional_string(obj, "inserted_at");
  if (!date) throw DataError("record lacks inserted_at");
  record.inserted_at = parse_date(*date);
  if (auto it = obj.find("distilled_k"); it != obj.end()) {
    if (!it->is_number_integer()) throw DataError("distilled_k must be an integer");
    record.distilled_k = it->get<int>();
  }
  return record;
}

void write_records(const std::filesystem::path& path, std::span<const RawRecord> records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  for (const auto& record : records) out << record_to_line(record) << '\n';
}

std::vector<RawRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(record_from_line(line));
    } catch (const DataError& e) {
      throw DataError(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  }
  return records;
}

void write_class_map(const std::filesystem::path& path, const ClassMap& classes) {
  std::vector<std::string> names(classes.size());
  for (const auto& [label, index] : classes) names.at(index) = label;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  for (std::size_t i = 0; i < names.size(); ++i) out << names[i] << '\t' << i << '\n';
}

ClassMap read_class_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  ClassMap classes;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw DataError(fmt::format("{}: malformed class line", path.string()));
    std::size_t index = 0;
    try {
      index = std::stoul(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw DataError(fmt::format("{}: malformed class index", path.string()));
    }
    classes.emplace(line.substr(0, tab), index);
  }
  std::vector<bool> seen(classes.size(), false);
  for (const auto& [label, index] : classes) {
    if (index >= classes.size() || seen[index]) throw DataError("class indices must be dense and unique");
    seen[index] = true;
  }
  return classes;
}

std::vector<Document> load_documents(std::span<const RawRecord> records, const ClassMap& classes) {
  std::vector<Document> docs;
  docs.reserve(records.size());
  for (const auto& record : records) {
    auto doc = preprocess(record);
    if (!doc) continue;
    auto it = classes.find(doc->label);
    if (it == classes.end()) throw DataError(fmt::format("unknown label '{}'", doc->label));
    doc->class_index = it->second;
    docs.push_back(std::move(*doc));
  }
  return docs;
}

void write_split(const std::filesystem::path& dir, const CorpusSplit& split) {
  std::filesystem::create_directories(dir);
  auto dump = [&](const char* name, const std::vector<Document>& docs) {
    std::vector<RawRecord> records;
    records.reserve(docs.size());
    for (const auto& doc : docs) records.push_back(to_record(doc));
    write_records(dir / name, records);
  };
  dump("train.jsonl", split.train);
  dump("valid.jsonl", split.valid);
  dump("test.jsonl", split.test);
  write_class_map(dir / "classes.tsv", split.class_map);
}

CorpusSplit read_split(const std::filesystem::path& dir) {
  CorpusSplit split;
  split.class_map = read_class_map(dir / "classes.tsv");
  split.train = load_documents(read_records(dir / "train.jsonl"), split.class_map);
  split.valid = load_documents(read_records(dir / "valid.jsonl"), split.class_map);
  split.test = load_documents(read_records(dir / "test.jsonl"), split.class_map);
  return split;
}

}  // namespace textclf::corpus
