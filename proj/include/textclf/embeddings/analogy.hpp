#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "textclf/embeddings/glove.hpp"

namespace textclf::embeddings {

/// Word pairs (a, b) that all express one relation.
struct RelationSet {
  std::string name;
  std::vector<std::pair<std::string, std::string>> pairs;
};

struct AnalogyResult {
  std::string name;
  std::size_t queries = 0;
  std::size_t correct = 0;
  /// Pairs dropped because a word is out of vocabulary.
  std::size_t skipped_pairs = 0;
  /// Undefined when no query could be formed.
  std::optional<double> accuracy;
};

/// For every ordered pair of distinct pairs ((a,b),(c,d)) the query
/// E(b) - E(a) + E(c) is answered by the cosine-nearest vocabulary word other
/// than a, b, c and UNK; the answer is correct when it is d.
std::vector<AnalogyResult> analogy_eval(const WordVectors& vectors, std::span<const RelationSet> relations);

/// One "a b" pair per line; the relation is named after the file stem.
RelationSet read_relation_set(const std::filesystem::path& path);

}  // namespace textclf::embeddings
