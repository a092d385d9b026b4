#include "textclf/embeddings/cooccurrence.hpp"

#include <algorithm>

#include "textclf/embeddings/vocabulary.hpp"

namespace textclf::embeddings {

void CooccurrenceTable::add(std::uint32_t i, std::uint32_t j, double weight) { cells_[key(i, j)] += weight; }

double CooccurrenceTable::get(std::uint32_t i, std::uint32_t j) const {
  auto it = cells_.find(key(i, j));
  return it == cells_.end() ? 0.0 : it->second;
}

std::vector<Cooccurrence> CooccurrenceTable::cells() const {
  std::vector<Cooccurrence> out;
  out.reserve(cells_.size());
  for (const auto& [k, w] : cells_) {
    out.push_back({static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k & 0xffffffffULL), w});
  }
  std::sort(out.begin(), out.end(),
            [](const Cooccurrence& a, const Cooccurrence& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  return out;
}

CooccurrenceTable count_cooccurrences(std::span<const std::vector<std::size_t>> docs, std::size_t window) {
  CooccurrenceTable table;
  for (const auto& ids : docs) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] == Vocabulary::kUnknown) continue;
      const std::size_t last = std::min(ids.size(), i + window + 1);
      for (std::size_t j = i + 1; j < last; ++j) {
        if (ids[j] == Vocabulary::kUnknown) continue;
        const double w = 1.0 / static_cast<double>(j - i);
        const auto a = static_cast<std::uint32_t>(ids[i]);
        const auto b = static_cast<std::uint32_t>(ids[j]);
        table.add(a, b, w);
        table.add(b, a, w);
      }
    }
  }
  return table;
}

}  // namespace textclf::embeddings
