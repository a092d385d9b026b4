#include "textclf/baseline/tfidf.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace textclf::baseline {

double dot(const SparseVector& x, std::span<const double> dense) {
  double s = 0.0;
  for (const auto& [col, value] : x) s += value * dense[col];
  return s;
}

std::vector<std::string> extract_terms(std::span<const std::string> tokens, int ngram_max) {
  std::vector<std::string> terms(tokens.begin(), tokens.end());
  if (ngram_max >= 2) {
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) terms.push_back(tokens[i] + ' ' + tokens[i + 1]);
  }
  return terms;
}

TfidfModel tfidf_fit(std::span<const std::vector<std::string>> docs, int ngram_max) {
  if (docs.empty()) throw std::invalid_argument("tf-idf needs at least one document");
  if (ngram_max != 1 && ngram_max != 2) throw std::invalid_argument("ngram_max must be 1 or 2");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    auto terms = extract_terms(doc, ngram_max);
    for (const auto& term : std::set<std::string>(terms.begin(), terms.end())) ++df[term];
  }
  TfidfModel model;
  model.ngram_max = ngram_max;
  model.documents = docs.size();
  const double n = static_cast<double>(docs.size());
  for (const auto& [term, count] : df) {
    model.columns.emplace(term, model.idf.size());
    model.document_frequency.push_back(count);
    model.idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return model;
}

SparseVector tfidf_transform(const TfidfModel& model, std::span<const std::string> tokens) {
  std::map<std::size_t, double> counts;
  for (const auto& term : extract_terms(tokens, model.ngram_max)) {
    auto it = model.columns.find(term);
    if (it != model.columns.end()) counts[it->second] += 1.0;
  }
  SparseVector row;
  double norm = 0.0;
  for (const auto& [col, count] : counts) {
    row.emplace_back(col, count * model.idf[col]);
    norm += row.back().second * row.back().second;
  }
  norm = std::sqrt(norm);
  for (auto& entry : row) entry.second /= norm;
  return row;
}

FeatureMatrix tfidf_transform(const TfidfModel& model, std::span<const std::vector<std::string>> docs) {
  FeatureMatrix out;
  out.reserve(docs.size());
  for (const auto& doc : docs) out.push_back(tfidf_transform(model, doc));
  return out;
}

std::pair<TfidfModel, FeatureMatrix> tfidf_fit_transform(std::span<const std::vector<std::string>> docs,
                                                         int ngram_max) {
  TfidfModel model = tfidf_fit(docs, ngram_max);
  FeatureMatrix features = tfidf_transform(model, docs);
  return {std::move(model), std::move(features)};
}

}  // namespace textclf::baseline
