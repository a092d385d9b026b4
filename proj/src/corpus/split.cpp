#include "textclf/corpus/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"
#include "textclf/corpus/preprocess.hpp"

namespace textclf::corpus {

std::vector<std::string> CorpusSplit::class_names() const {
  std::vector<std::string> names(class_map.size());
  for (const auto& [label, index] : class_map) names[index] = label;
  return names;
}

CorpusSplit temporal_split(std::span<const Document> docs, SplitFractions fractions) {
  if (!(fractions.test > 0 && fractions.test < 1 && fractions.valid > 0 && fractions.valid < 1 &&
        fractions.test + fractions.valid < 1)) {
    throw UsageError("split fractions must lie in (0,1) and sum below 1");
  }
  const std::size_t n = docs.size();
  if (n < 3) throw DataError(fmt::format("temporal split needs at least 3 documents, got {}", n));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return docs[a].inserted_at < docs[b].inserted_at; });

  const auto n_test = static_cast<std::size_t>(std::ceil(fractions.test * static_cast<double>(n)));
  const auto n_valid = static_cast<std::size_t>(std::ceil(fractions.valid * static_cast<double>(n)));
  if (n_test + n_valid >= n) throw DataError("temporal split leaves no training documents");
  const std::size_t n_train = n - n_test - n_valid;

  CorpusSplit split;
  for (const auto& doc : docs) {
    if (doc.label.empty()) throw DataError("temporal split requires labeled documents");
    split.class_map.emplace(doc.label, 0);
  }
  std::size_t next = 0;
  for (auto& [label, index] : split.class_map) index = next++;

  for (std::size_t k = 0; k < n; ++k) {
    Document doc = docs[order[k]];
    doc.class_index = split.class_map.at(doc.label);
    if (k < n_train) {
      split.train.push_back(std::move(doc));
    } else if (k < n_train + n_valid) {
      split.valid.push_back(std::move(doc));
    } else {
      split.test.push_back(std::move(doc));
    }
  }
  return split;
}

std::vector<std::size_t> class_counts(std::span<const Document> docs, std::size_t num_classes) {
  std::vector<std::size_t> counts(num_classes, 0);
  for (const auto& doc : docs) {
    if (doc.class_index >= num_classes) throw DataError("class index out of range");
    ++counts[doc.class_index];
  }
  return counts;
}

CorpusSplit filter_rare_classes(const CorpusSplit& split, std::size_t min_test) {
  const auto counts = class_counts(split.test, split.num_classes());
  CorpusSplit out;
  std::vector<std::size_t> remap(split.num_classes(), split.num_classes());
  std::size_t next = 0;
  for (const auto& [label, index] : split.class_map) {
    if (counts[index] >= min_test) {
      remap[index] = next;
      out.class_map.emplace(label, next++);
    }
  }
  if (out.class_map.empty()) {
    throw DataError(fmt::format("no class has at least {} test documents", min_test));
  }
  auto copy = [&](const std::vector<Document>& from, std::vector<Document>& to) {
    for (const auto& doc : from) {
      if (remap[doc.class_index] == split.num_classes()) continue;
      Document kept = doc;
      kept.class_index = remap[doc.class_index];
      to.push_back(std::move(kept));
    }
  };
  copy(split.train, out.train);
  copy(split.valid, out.valid);
  copy(split.test, out.test);
  return out;
}

CorpusSplit prepare_split(std::span<const RawRecord> records, SplitFractions fractions, std::size_t min_test) {
  std::vector<Document> docs;
  docs.reserve(records.size());
  for (const auto& record : records) {
    auto doc = preprocess(record);
    if (doc && !doc->label.empty()) docs.push_back(std::move(*doc));
  }
  auto unique = deduplicate(docs);
  return filter_rare_classes(temporal_split(unique, fractions), min_test);
}

}  // namespace textclf::corpus
