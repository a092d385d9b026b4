#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "textclf/common/date.hpp"

namespace textclf::corpus {

/// One registry-style record as stored on disk.
struct RawRecord {
  std::optional<std::string> macroscopy;
  std::optional<std::string> diagnosis;
  std::optional<std::string> anamnesis;
  std::optional<std::string> label;
  Date inserted_at{};
  /// Set on corpora produced by top-k distillation.
  std::optional<int> distilled_k;
};

/// Half-open token range [begin, end) of one sentence.
struct SentenceRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const SentenceRange&) const = default;
};

struct Document {
  std::vector<std::string> tokens;
  std::vector<SentenceRange> sentences;
  std::string label;
  /// Dense class index; meaningful once the document belongs to a CorpusSplit.
  std::size_t class_index = 0;
  Date inserted_at{};
};

/// Label string -> contiguous class index, ordered by label.
using ClassMap = std::map<std::string, std::size_t>;

struct CorpusSplit {
  std::vector<Document> train;
  std::vector<Document> valid;
  std::vector<Document> test;
  ClassMap class_map;

  std::size_t num_classes() const { return class_map.size(); }
  /// Label strings indexed by class index.
  std::vector<std::string> class_names() const;
};

}  // namespace textclf::corpus
