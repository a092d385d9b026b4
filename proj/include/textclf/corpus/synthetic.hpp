#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textclf/common/date.hpp"
#include "textclf/corpus/document.hpp"

namespace textclf::corpus {

/// Parameters of the keyword corpus generator. Every document of a class
/// carries between min_keywords and max_keywords of that class's signal
/// words, scattered among noise words shared by all classes.
struct SyntheticSpec {
  std::size_t num_classes = 61;
  std::size_t keywords_per_class = 3;
  /// Documents per class; overridden per class by `class_sizes` when non-empty.
  std::size_t docs_per_class = 100;
  std::vector<std::size_t> class_sizes;
  std::size_t min_keywords = 1;
  std::size_t max_keywords = 3;
  std::size_t min_noise = 6;
  std::size_t max_noise = 16;
  std::size_t noise_vocabulary = 200;
  std::size_t max_sentences = 3;
  /// Fraction of each class's keywords borrowed from the next class.
  double keyword_overlap = 0.0;
  /// Largest tolerated keyword overlap between two classes before a warning.
  double max_overlap_ratio = 0.0;
  Date start_date = Date{std::chrono::year{2000} / 1 / 1};
  int span_days = 5000;
  std::uint64_t seed = 0;
};

struct SyntheticCorpus {
  std::vector<RawRecord> records;
  std::vector<std::string> labels;
  /// Uppercase signal words per class, aligned with `labels`.
  std::vector<std::vector<std::string>> keywords;
  std::vector<std::string> noise_words;
  std::vector<std::string> warnings;
};

/// Builds a class-size profile: for each (count, size) entry, `count`
/// classes of `size` documents each.
std::vector<std::size_t> class_size_profile(const std::vector<std::pair<std::size_t, std::size_t>>& groups);

/// Generates a bit-reproducible labeled corpus. Records are emitted in
/// ascending date order with classes interleaved over time.
/// Throws UsageError for fewer than two classes or inconsistent ranges.
SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

}  // namespace textclf::corpus
