#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace textclf::embeddings {

struct Cooccurrence {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  double weight = 0.0;
};

/// Sparse symmetric table of distance-weighted co-occurrence sums X_ij.
class CooccurrenceTable {
 public:
  void add(std::uint32_t i, std::uint32_t j, double weight);
  double get(std::uint32_t i, std::uint32_t j) const;
  std::size_t nonzeros() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  /// All nonzero cells sorted by (row, col).
  std::vector<Cooccurrence> cells() const;

 private:
  static std::uint64_t key(std::uint32_t i, std::uint32_t j) { return (std::uint64_t{i} << 32) | j; }
  std::unordered_map<std::uint64_t, double> cells_;
};

/// Adds 1/d to X_ij and X_ji for every token pair at distance
/// 1 <= d <= window inside one document. Index 0 (UNK) is ignored.
CooccurrenceTable count_cooccurrences(std::span<const std::vector<std::size_t>> docs, std::size_t window = 15);

}  // namespace textclf::embeddings
