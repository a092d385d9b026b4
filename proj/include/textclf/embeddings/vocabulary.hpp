#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace textclf::embeddings {

/// Token <-> index map. Index 0 is the unknown-word entry; every other entry
/// is a distinct token.
class Vocabulary {
 public:
  static constexpr std::size_t kUnknown = 0;
  static constexpr std::string_view kUnknownToken = "<UNK>";

  Vocabulary();

  /// Counts tokens over `docs` and keeps those seen at least `min_count`
  /// times, ordered by descending count then token text.
  static Vocabulary build(std::span<const std::vector<std::string>> docs, std::size_t min_count);
  /// Vocabulary with exactly these tokens, in this order (after UNK).
  static Vocabulary from_tokens(std::span<const std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  bool contains(std::string_view token) const;
  /// kUnknown when absent.
  std::size_t index(std::string_view token) const;
  const std::string& token(std::size_t index) const { return tokens_.at(index); }
  std::size_t count(std::size_t index) const { return counts_.at(index); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::vector<std::size_t> encode(std::span<const std::string> tokens) const;

 private:
  void add(std::string token, std::size_t count);

  std::vector<std::string> tokens_;
  std::vector<std::size_t> counts_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace textclf::embeddings
