#include "textclf/explain/distill.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"
#include "textclf/common/errors.hpp"
#include "textclf/corpus/io.hpp"
#include "textclf/corpus/preprocess.hpp"

namespace textclf::explain {

std::vector<double> token_scores(const tensor::Tensor& importance) {
  std::vector<double> scores(importance.cols(), -std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < importance.rows(); ++j) {
    for (std::size_t t = 0; t < importance.cols(); ++t) scores[t] = std::max(scores[t], importance.at(j, t));
  }
  return scores;
}

std::vector<std::size_t> top_k_positions(std::span<const double> scores, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(std::min(k, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

corpus::Document distill_document(const networks::Model& model, const corpus::Document& doc, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (doc.tokens.size() <= k) return doc;
  const auto keep = top_k_positions(token_scores(model.importance(model.encode(doc))), k);
  corpus::Document out;
  out.label = doc.label;
  out.class_index = doc.class_index;
  out.inserted_at = doc.inserted_at;
  for (std::size_t t : keep) out.tokens.push_back(doc.tokens[t]);
  return corpus::segment_sentences(std::move(out));
}

DistilledCorpus distill_top_k(const networks::Model& model, const corpus::CorpusSplit& split, std::size_t k,
                              std::string source) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (!model.config.interpretable) throw std::invalid_argument("distillation requires the interpretable model");
  DistilledCorpus out{k, std::move(source), {}};
  out.split.class_map = split.class_map;
  auto run = [&](const std::vector<corpus::Document>& docs, std::vector<corpus::Document>& dest) {
    dest.reserve(docs.size());
    for (const auto& doc : docs) dest.push_back(distill_document(model, doc, k));
  };
  run(split.train, out.split.train);
  run(split.valid, out.split.valid);
  run(split.test, out.split.test);
  return out;
}

void write_distilled(const std::filesystem::path& dir, const DistilledCorpus& corpus) {
  std::filesystem::create_directories(dir);
  auto dump = [&](const char* name, const std::vector<corpus::Document>& docs) {
    std::vector<corpus::RawRecord> records;
    records.reserve(docs.size());
    for (const auto& doc : docs) {
      records.push_back(corpus::to_record(doc));
      records.back().distilled_k = static_cast<int>(corpus.k);
    }
    corpus::write_records(dir / name, records);
  };
  dump("train.jsonl", corpus.split.train);
  dump("valid.jsonl", corpus.split.valid);
  dump("test.jsonl", corpus.split.test);
  corpus::write_class_map(dir / "classes.tsv", corpus.split.class_map);

  const auto path = dir / "provenance.json";
  nlohmann::ordered_json provenance = {{"distilled_k", corpus.k}, {"source", corpus.source}};
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << provenance.dump(2) << '\n';
}

}  // namespace textclf::explain
