#pragma once

#include <cstddef>
#include <span>

#include "textclf/corpus/document.hpp"

namespace textclf::corpus {

struct SplitFractions {
  double test = 0.2;
  double valid = 0.2;
};

/// Sorts by (date, input order); the last ceil(test*n) documents form the
/// test split, the preceding ceil(valid*n) the validation split, the rest
/// training. Builds the class map from every label present.
///
/// Throws DataError for fewer than three documents, unlabeled documents or
/// an empty training split; UsageError for invalid fractions.
CorpusSplit temporal_split(std::span<const Document> docs, SplitFractions fractions = {});

/// Drops every class with fewer than `min_test` test documents from all
/// splits and recompacts class indices. Throws DataError if nothing is left.
CorpusSplit filter_rare_classes(const CorpusSplit& split, std::size_t min_test = 5);

/// Full preparation pipeline: preprocess every record (skipping textless
/// ones), drop unlabeled documents, deduplicate, split by date and filter
/// rare classes.
CorpusSplit prepare_split(std::span<const RawRecord> records, SplitFractions fractions = {},
                          std::size_t min_test = 5);

/// Number of documents per class index in `docs`.
std::vector<std::size_t> class_counts(std::span<const Document> docs, std::size_t num_classes);

}  // namespace textclf::corpus
