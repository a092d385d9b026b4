#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace textclf::evaluation {

/// Per-document score vectors (probabilities or decision values) and labels.
struct PredictionSet {
  std::vector<std::vector<double>> scores;
  std::vector<std::size_t> labels;
  std::size_t num_classes = 0;

  std::size_t size() const { return labels.size(); }
  /// Throws std::invalid_argument on ragged vectors or labels >= K.
  void validate() const;
  /// Argmax per document, lowest index on ties.
  std::vector<std::size_t> predicted() const;
};

/// Fraction of documents whose argmax equals the label. Throws
/// std::invalid_argument on an empty set.
double accuracy(const PredictionSet& preds);

/// Rank of `label` when scores are sorted descending with lower class
/// indices first among equal scores; 0 is the top.
std::size_t label_rank(std::span<const double> scores, std::size_t label);

/// Fraction of documents whose label is among the `l` top-ranked classes.
/// Throws std::invalid_argument unless 1 <= l <= K.
double top_l_accuracy(const PredictionSet& preds, std::size_t l);

struct ClassScores {
  std::size_t support = 0;         // documents labeled with the class
  std::size_t predicted = 0;       // documents predicted as the class
  std::size_t true_positives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MacroF1 {
  double value = 0.0;
  std::vector<ClassScores> per_class;
};

/// Unweighted mean of per-class F1 over all K classes. 0/0 precision,
/// recall or F1 terms count as 0.
MacroF1 macro_f1(std::span<const std::size_t> labels, std::span<const std::size_t> predicted, std::size_t num_classes);
MacroF1 macro_f1(const PredictionSet& preds);

/// Fraction of documents on which the two argmaxes agree. Throws
/// std::invalid_argument when the sets differ in size or class count.
double fidelity(const PredictionSet& a, const PredictionSet& b);

enum class Difficulty { Easy, Average, Hard };

std::string_view difficulty_name(Difficulty d);
/// Easy above 1000 test documents, average from 100 to 1000 inclusive,
/// hard below 100.
Difficulty difficulty_of(std::size_t test_count);

struct GroupScore {
  Difficulty group = Difficulty::Hard;
  std::vector<std::size_t> classes;
  double macro_f1 = 0.0;
};

/// Macro F1 within each non-empty difficulty group, in easy, average, hard
/// order. Groups without classes are omitted.
std::vector<GroupScore> group_by_difficulty(const MacroF1& scores, std::span<const std::size_t> test_counts);

}  // namespace textclf::evaluation
