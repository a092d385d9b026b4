#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace textclf::baseline {

/// Sparse row: (column, value) pairs sorted by column.
using SparseVector = std::vector<std::pair<std::size_t, double>>;
using FeatureMatrix = std::vector<SparseVector>;

double dot(const SparseVector& x, std::span<const double> dense);

/// Term statistics fixed at fit time. Bigram terms are the two tokens joined
/// by a single space.
struct TfidfModel {
  int ngram_max = 1;
  std::size_t documents = 0;
  /// Term -> column; columns follow lexicographic term order.
  std::map<std::string, std::size_t> columns;
  std::vector<std::size_t> document_frequency;
  std::vector<double> idf;

  std::size_t num_features() const { return idf.size(); }
};

/// Unigrams, plus adjacent-token bigrams when ngram_max is 2.
std::vector<std::string> extract_terms(std::span<const std::string> tokens, int ngram_max);

/// idf = ln((1 + N) / (1 + df)) + 1. Throws std::invalid_argument on an empty
/// corpus or ngram_max outside {1, 2}.
TfidfModel tfidf_fit(std::span<const std::vector<std::string>> docs, int ngram_max);

/// Raw counts times idf, each row scaled to unit L2 norm. Terms unseen at fit
/// time are dropped; a row with no known term stays empty.
SparseVector tfidf_transform(const TfidfModel& model, std::span<const std::string> tokens);
FeatureMatrix tfidf_transform(const TfidfModel& model, std::span<const std::vector<std::string>> docs);

std::pair<TfidfModel, FeatureMatrix> tfidf_fit_transform(std::span<const std::vector<std::string>> docs,
                                                         int ngram_max);

}  // namespace textclf::baseline
