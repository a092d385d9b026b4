#include "textclf/embeddings/analogy.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"
#include "textclf/tensor/ops.hpp"

namespace textclf::embeddings {

std::vector<AnalogyResult> analogy_eval(const WordVectors& vectors, std::span<const RelationSet> relations) {
  const std::size_t v = vectors.vocabulary.size();
  const std::size_t p = vectors.dim();
  std::vector<double> unit(v * p, 0.0);
  for (std::size_t i = 0; i < v; ++i) {
    auto row = vectors.table.row(i);
    const double norm = std::sqrt(tensor::dot(row, row));
    if (norm == 0.0) continue;
    for (std::size_t k = 0; k < p; ++k) unit[i * p + k] = row[k] / norm;
  }
  auto unit_row = [&](std::size_t i) { return std::span<const double>(unit).subspan(i * p, p); };

  std::vector<AnalogyResult> results;
  for (const auto& relation : relations) {
    AnalogyResult result;
    result.name = relation.name;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& [a, b] : relation.pairs) {
      const std::size_t ia = vectors.vocabulary.index(a);
      const std::size_t ib = vectors.vocabulary.index(b);
      if (ia == Vocabulary::kUnknown || ib == Vocabulary::kUnknown) {
        ++result.skipped_pairs;
      } else {
        pairs.emplace_back(ia, ib);
      }
    }
    std::vector<double> query(p);
    for (std::size_t x = 0; x < pairs.size(); ++x) {
      for (std::size_t y = 0; y < pairs.size(); ++y) {
        if (x == y) continue;
        const auto [a, b] = pairs[x];
        const auto [c, d] = pairs[y];
        auto ra = vectors.table.row(a);
        auto rb = vectors.table.row(b);
        auto rc = vectors.table.row(c);
        for (std::size_t k = 0; k < p; ++k) query[k] = rb[k] - ra[k] + rc[k];
        std::size_t best = Vocabulary::kUnknown;
        double best_score = -INFINITY;
        for (std::size_t w = 1; w < v; ++w) {
          if (w == a || w == b || w == c) continue;
          const double score = tensor::dot(query, unit_row(w));
          if (score > best_score) {
            best_score = score;
            best = w;
          }
        }
        ++result.queries;
        if (best == d) ++result.correct;
      }
    }
    if (result.queries > 0) {
      result.accuracy = static_cast<double>(result.correct) / static_cast<double>(result.queries);
    }
    results.push_back(std::move(result));
  }
  return results;
}

RelationSet read_relation_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  RelationSet set;
  set.name = path.stem().string();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw DataError(fmt::format("{}:{}: expected two words", path.string(), line_no));
    }
    set.pairs.emplace_back(std::move(a), std::move(b));
  }
  return set;
}

}  // namespace textclf::embeddings
