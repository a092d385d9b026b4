#pragma once

// Corpus with planted relational structure: every pair (A_i, B_i) shares a
// topic context T_i, while A-side words mostly co-occur with context words SA
// and B-side words mostly with SB. Contexts are soft (the other side and other
// topics appear with lower probability) so every log-count is observed and
// approximately additive in topic and side. Word vectors fitted to these
// counts should place B_i - A_i near a common offset.

#include <string>
#include <vector>

#include "textclf/common/rng.hpp"
#include "textclf/embeddings/analogy.hpp"

namespace textclf::testing {

struct AnalogyCorpus {
  std::vector<std::vector<std::string>> docs;
  embeddings::RelationSet relation;
};

inline AnalogyCorpus make_analogy_corpus(std::size_t pairs, std::size_t docs_per_word, std::uint64_t seed) {
  Rng rng(seed);
  AnalogyCorpus out;
  out.relation.name = "planted";
  const std::size_t topic_words = 3, side_words = 3, noise_words = 20;
  auto name = [](const char* prefix, std::size_t i, std::size_t j) {
    return std::string(prefix) + std::to_string(i) + "_" + std::to_string(j);
  };
  for (std::size_t i = 0; i < pairs; ++i) {
    out.relation.pairs.emplace_back("A" + std::to_string(i), "B" + std::to_string(i));
  }
  for (std::size_t i = 0; i < pairs; ++i) {
    for (int side = 0; side < 2; ++side) {
      for (std::size_t d = 0; d < docs_per_word; ++d) {
        std::vector<std::string> doc;
        doc.push_back(side == 0 ? out.relation.pairs[i].first : out.relation.pairs[i].second);
        for (int k = 0; k < 3; ++k) {
          const std::size_t topic = rng.uniform() < 0.7 ? i : rng.below(pairs);
          doc.push_back(name("T", topic, rng.below(topic_words)));
        }
        for (int k = 0; k < 3; ++k) {
          const bool own = rng.uniform() < 0.8;
          doc.push_back(name((side == 0) == own ? "SA" : "SB", 0, rng.below(side_words)));
        }
        for (int k = 0; k < 3; ++k) doc.push_back(name("N", 0, rng.below(noise_words)));
        rng.shuffle(std::span<std::string>(doc));
        out.docs.push_back(std::move(doc));
      }
    }
  }
  return out;
}

}  // namespace textclf::testing
