#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "textclf/common/keyvalue.hpp"
#include "textclf/networks/config.hpp"

namespace textclf::training {

/// One named axis. A name may tie several config fields with '+', e.g.
/// "rnn_width+sentence_rnn_width" sets both to each value.
struct GridAxis {
  std::string name;
  std::vector<std::string> values;
};

struct HyperGrid {
  std::vector<GridAxis> axes;

  /// Product of axis lengths; 1 for a grid without axes.
  std::size_t size() const;
};

/// (axis name, value) for every axis, in axis order.
using Assignment = std::vector<std::pair<std::string, std::string>>;

/// Row-major enumeration: the last axis varies fastest. Throws
/// std::invalid_argument when an axis has no values.
std::vector<Assignment> enumerate(const HyperGrid& grid);

/// `axis = v1, v2, ...` per line.
HyperGrid parse_grid(const KeyValues& entries);
HyperGrid read_grid(const std::filesystem::path& path);

/// Applies an assignment to a config. Recognized fields: embedding_dim,
/// rnn_layers, rnn_width, mlp_layers, mlp_width, attention_width,
/// sentence_rnn_layers, sentence_rnn_width, sentence_attention_width,
/// cnn_projection, cnn_filters. Throws UsageError on unknown fields or
/// non-integer values.
networks::ModelConfig apply_assignment(networks::ModelConfig config, const Assignment& assignment);

enum class PaperTask { Topography, Morphology };

/// The published search space of a family for one task. Families without a
/// published space (SVM, CNN) throw UsageError.
HyperGrid published_grid(networks::Family family, PaperTask task);

struct GridPointResult {
  double valid_accuracy = 0.0;
  std::size_t parameters = 0;
  std::size_t best_epoch = 0;
  std::size_t epochs_run = 0;
};

struct GridRow {
  std::size_t index = 0;  // enumeration position
  Assignment assignment;
  std::optional<GridPointResult> result;
  std::string error;  // set when the point failed
};

/// Trains one grid point. Exceptions are recorded on the row.
using GridRunner = std::function<GridPointResult(const Assignment&)>;

/// Runs every point (on `jobs` threads) and returns rows ranked by
/// validation accuracy descending, then fewer parameters, then enumeration
/// order. Failed points rank last in enumeration order.
std::vector<GridRow> grid_search(const HyperGrid& grid, const GridRunner& runner, std::size_t jobs = 1);

/// Tab-separated table: rank, index, one column per axis, valid_accuracy,
/// parameters, best_epoch, epochs, status.
std::string grid_table(const HyperGrid& grid, const std::vector<GridRow>& rows);

}  // namespace textclf::training
