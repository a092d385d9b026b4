#include "textclf/evaluation/metrics.hpp"

#include <stdexcept>

#include "textclf/tensor/ops.hpp"

namespace textclf::evaluation {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void require_non_empty(const PredictionSet& preds) {
  preds.validate();
  if (preds.size() == 0) throw std::invalid_argument("metrics need at least one document");
}

}  // namespace

void PredictionSet::validate() const {
  if (scores.size() != labels.size()) throw std::invalid_argument("score and label counts differ");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (scores[i].size() != num_classes) throw std::invalid_argument("score vector length differs from class count");
    if (labels[i] >= num_classes) throw std::invalid_argument("label outside the class range");
  }
}

std::vector<std::size_t> PredictionSet::predicted() const {
  std::vector<std::size_t> out;
  out.reserve(scores.size());
  for (const auto& s : scores) out.push_back(tensor::argmax(s));
  return out;
}

double accuracy(const PredictionSet& preds) {
  require_non_empty(preds);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) hits += tensor::argmax(preds.scores[i]) == preds.labels[i];
  return ratio(hits, preds.size());
}

std::size_t label_rank(std::span<const double> scores, std::size_t label) {
  std::size_t rank = 0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    rank += scores[j] > scores[label] || (scores[j] == scores[label] && j < label);
  }
  return rank;
}

double top_l_accuracy(const PredictionSet& preds, std::size_t l) {
  require_non_empty(preds);
  if (l < 1 || l > preds.num_classes) throw std::invalid_argument("top-l requires 1 <= l <= K");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) hits += label_rank(preds.scores[i], preds.labels[i]) < l;
  return ratio(hits, preds.size());
}

MacroF1 macro_f1(std::span<const std::size_t> labels, std::span<const std::size_t> predicted, std::size_t k) {
  if (labels.size() != predicted.size()) throw std::invalid_argument("label and prediction counts differ");
  if (labels.empty() || k == 0) throw std::invalid_argument("macro F1 needs documents and classes");
  MacroF1 out;
  out.per_class.resize(k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= k || predicted[i] >= k) throw std::invalid_argument("class index out of range");
    ++out.per_class[labels[i]].support;
    ++out.per_class[predicted[i]].predicted;
    out.per_class[labels[i]].true_positives += labels[i] == predicted[i];
  }
  double sum = 0.0;
  for (auto& c : out.per_class) {
    c.precision = ratio(c.true_positives, c.predicted);
    c.recall = ratio(c.true_positives, c.support);
    const double den = c.precision + c.recall;
    c.f1 = den == 0.0 ? 0.0 : 2.0 * c.precision * c.recall / den;
    sum += c.f1;
  }
  out.value = sum / static_cast<double>(k);
  return out;
}

MacroF1 macro_f1(const PredictionSet& preds) {
  require_non_empty(preds);
  return macro_f1(preds.labels, preds.predicted(), preds.num_classes);
}

double fidelity(const PredictionSet& a, const PredictionSet& b) {
  if (a.size() != b.size() || a.num_classes != b.num_classes) {
    throw std::invalid_argument("fidelity needs predictions for the same documents and classes");
  }
  if (a.size() == 0) throw std::invalid_argument("fidelity needs at least one document");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) agree += tensor::argmax(a.scores[i]) == tensor::argmax(b.scores[i]);
  return ratio(agree, a.size());
}

std::string_view difficulty_name(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return "easy";
    case Difficulty::Average: return "average";
    case Difficulty::Hard: return "hard";
  }
  return "?";
}

Difficulty difficulty_of(std::size_t n) {
  if (n > 1000) return Difficulty::Easy;
  if (n >= 100) return Difficulty::Average;
  return Difficulty::Hard;
}

std::vector<GroupScore> group_by_difficulty(const MacroF1& scores, std::span<const std::size_t> test_counts) {
  if (test_counts.size() != scores.per_class.size()) throw std::invalid_argument("one test count per class required");
  std::vector<GroupScore> out;
  for (Difficulty d : {Difficulty::Easy, Difficulty::Average, Difficulty::Hard}) {
    GroupScore g{d, {}, 0.0};
    double sum = 0.0;
    for (std::size_t k = 0; k < test_counts.size(); ++k) {
      if (difficulty_of(test_counts[k]) != d) continue;
      g.classes.push_back(k);
      sum += scores.per_class[k].f1;
    }
    if (g.classes.empty()) continue;
    g.macro_f1 = sum / static_cast<double>(g.classes.size());
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace textclf::evaluation
