#include "textclf/embeddings/vocabulary.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace textclf::embeddings {

Vocabulary::Vocabulary() { add(std::string(kUnknownToken), 0); }

void Vocabulary::add(std::string token, std::size_t count) {
  if (!index_.emplace(token, tokens_.size()).second) {
    throw std::invalid_argument("duplicate vocabulary token '" + token + "'");
  }
  tokens_.push_back(std::move(token));
  counts_.push_back(count);
}

Vocabulary Vocabulary::build(std::span<const std::vector<std::string>> docs, std::size_t min_count) {
  std::map<std::string, std::size_t> counts;
  for (const auto& doc : docs) {
    for (const auto& t : doc) ++counts[t];
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [token, count] : counts) {
    if (count >= min_count && token != kUnknownToken) kept.emplace_back(token, count);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary vocab;
  for (auto& [token, count] : kept) vocab.add(std::move(token), count);
  return vocab;
}

Vocabulary Vocabulary::from_tokens(std::span<const std::string> tokens) {
  Vocabulary vocab;
  for (const auto& t : tokens) vocab.add(t, 0);
  return vocab;
}

bool Vocabulary::contains(std::string_view token) const {
  return index_.find(std::string(token)) != index_.end();
}

std::size_t Vocabulary::index(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnknown : it->second;
}

std::vector<std::size_t> Vocabulary::encode(std::span<const std::string> tokens) const {
  std::vector<std::size_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(index(t));
  return ids;
}

}  // namespace textclf::embeddings
