#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "textclf/evaluation/metrics.hpp"

namespace textclf::cli {

/// Scores of one classifier over a labeled document list, with class names.
struct PredictionFile {
  std::vector<std::string> class_names;
  evaluation::PredictionSet predictions;
};

/// TSV with header "label<TAB>name_0<TAB>...<TAB>name_{K-1}" and one row per
/// document: the true class index followed by K scores.
void write_predictions(const std::filesystem::path& path, const PredictionFile& file);
/// Throws DataError on a malformed file.
PredictionFile read_predictions(const std::filesystem::path& path);

}  // namespace textclf::cli
