#include "textclf/training/grid.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"

namespace textclf::training {
namespace {

std::size_t parse_count(const std::string& field, const std::string& value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw UsageError(fmt::format("grid value '{}' for {} is not a non-negative integer", value, field));
  }
  return out;
}

void set_field(networks::ModelConfig& c, const std::string& field, const std::string& value) {
  const std::size_t v = parse_count(field, value);
  if (field == "embedding_dim") c.embedding_dim = v;
  else if (field == "rnn_layers") c.rnn_layers = v;
  else if (field == "rnn_width") c.rnn_width = v;
  else if (field == "mlp_layers") c.mlp_layers = v;
  else if (field == "mlp_width") c.mlp_width = v;
  else if (field == "attention_width") c.attention_width = v;
  else if (field == "sentence_rnn_layers") c.sentence_rnn_layers = v;
  else if (field == "sentence_rnn_width") c.sentence_rnn_width = v;
  else if (field == "sentence_attention_width") c.sentence_attention_width = v;
  else if (field == "cnn_projection") c.cnn_projection = v;
  else if (field == "cnn_filters") c.cnn_filters = v;
  else throw UsageError(fmt::format("unknown grid axis '{}'", field));
}

std::vector<std::string> numbers(std::initializer_list<int> values) {
  std::vector<std::string> out;
  for (int v : values) out.push_back(std::to_string(v));
  return out;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::size_t HyperGrid::size() const {
  std::size_t n = 1;
  for (const auto& axis : axes) n *= axis.values.size();
  return n;
}

std::vector<Assignment> enumerate(const HyperGrid& grid) {
  for (const auto& axis : grid.axes) {
    if (axis.values.empty()) throw std::invalid_argument(fmt::format("grid axis '{}' has no values", axis.name));
  }
  std::vector<Assignment> out;
  std::vector<std::size_t> digit(grid.axes.size(), 0);
  while (true) {
    Assignment a;
    for (std::size_t i = 0; i < grid.axes.size(); ++i) a.emplace_back(grid.axes[i].name, grid.axes[i].values[digit[i]]);
    out.push_back(std::move(a));
    std::size_t i = grid.axes.size();
    while (i > 0) {
      --i;
      if (++digit[i] < grid.axes[i].values.size()) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
    if (grid.axes.empty()) return out;
  }
}

HyperGrid parse_grid(const KeyValues& entries) {
  HyperGrid grid;
  for (const auto& [key, value] : entries) {
    auto values = split_list(value);
    if (values.empty()) throw DataError(fmt::format("grid axis '{}' has no values", key));
    grid.axes.push_back({key, std::move(values)});
  }
  return grid;
}

HyperGrid read_grid(const std::filesystem::path& path) { return parse_grid(read_key_values(path)); }

networks::ModelConfig apply_assignment(networks::ModelConfig config, const Assignment& assignment) {
  for (const auto& [name, value] : assignment) {
    std::size_t begin = 0;
    while (begin <= name.size()) {
      std::size_t end = name.find('+', begin);
      if (end == std::string::npos) end = name.size();
      set_field(config, std::string(trim(std::string_view(name).substr(begin, end - begin))), value);
      begin = end + 1;
    }
  }
  return config;
}

HyperGrid published_grid(networks::Family family, PaperTask task) {
  using networks::Family;
  const bool topo = task == PaperTask::Topography;
  const auto narrow = numbers({2, 4, 8, 16, 32, 64, 128, 256, 512});
  const auto wide = numbers({2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048});
  switch (family) {
    case Family::Max:
      return {{{"rnn_layers", topo ? numbers({1, 2}) : numbers({1})},
               {"mlp_layers", numbers({1, 2, 4})},
               {"rnn_width", narrow},
               {"mlp_width", wide}}};
    case Family::Att:
      return {{{"rnn_layers", numbers({1})},
               {"mlp_layers", numbers({0, 1})},
               {"rnn_width", numbers({64, 128, 256})},
               {"mlp_width", topo ? numbers({256, 512, 1024}) : numbers({64, 128, 256})},
               {"attention_width", numbers({128, 256, 512, 1024})}}};
    case Family::MaxH:
      return {{{"rnn_layers+sentence_rnn_layers", numbers({1})},
               {"mlp_layers", numbers({0, 1, 2, 4})},
               {"rnn_width+sentence_rnn_width", numbers({32, 64, 128, 256})},
               {"mlp_width", numbers({256, 512, 1024, 2048})}}};
    case Family::AttH:
      return {{{"rnn_layers+sentence_rnn_layers", numbers({1})},
               {"mlp_layers", numbers({0, 1, 2, 4})},
               {"rnn_width+sentence_rnn_width", numbers({32, 64, 128, 256})},
               {"mlp_width", numbers({256, 512, 1024, 2048})},
               {"attention_width+sentence_attention_width", numbers({64, 128, 256, 512})}}};
    case Family::MaxI:
      if (topo) {
        return {{{"rnn_layers", numbers({1, 2, 4})},
                 {"mlp_layers", numbers({1, 2, 4})},
                 {"rnn_width", narrow},
                 {"mlp_width", wide}}};
      }
      // A single G layer is the class-sized output, so no hidden width.
      return {{{"rnn_layers", numbers({1, 2, 4})}, {"mlp_layers", numbers({1})}, {"rnn_width", numbers({64, 128, 256, 512})}}};
    case Family::Gru:
      return {{{"rnn_layers", numbers({1, 2, 4})}, {"rnn_width", numbers({128, 256, 512, 1024})}}};
    case Family::Cnn:
    case Family::Svm:
      break;
  }
  throw UsageError(fmt::format("no published search space for {}", networks::family_name(family)));
}

std::vector<GridRow> grid_search(const HyperGrid& grid, const GridRunner& runner, std::size_t jobs) {
  auto points = enumerate(grid);
  std::vector<GridRow> rows(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) rows[i] = {i, points[i], std::nullopt, {}};

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        rows[i].result = runner(rows[i].assignment);
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, rows.size());
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  std::stable_sort(rows.begin(), rows.end(), [](const GridRow& a, const GridRow& b) {
    if (a.result.has_value() != b.result.has_value()) return a.result.has_value();
    if (!a.result) return a.index < b.index;
    if (a.result->valid_accuracy != b.result->valid_accuracy) return a.result->valid_accuracy > b.result->valid_accuracy;
    if (a.result->parameters != b.result->parameters) return a.result->parameters < b.result->parameters;
    return a.index < b.index;
  });
  return rows;
}

std::string grid_table(const HyperGrid& grid, const std::vector<GridRow>& rows) {
  std::string out = "rank\tindex";
  for (const auto& axis : grid.axes) out += '\t' + axis.name;
  out += "\tvalid_accuracy\tparameters\tbest_epoch\tepochs\tstatus\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const GridRow& row = rows[r];
    out += fmt::format("{}\t{}", r + 1, row.index);
    for (const auto& [name, value] : row.assignment) out += '\t' + value;
    if (row.result) {
      out += fmt::format("\t{}\t{}\t{}\t{}\tok\n", format_double(row.result->valid_accuracy), row.result->parameters,
                         row.result->best_epoch + 1, row.result->epochs_run);
    } else {
      std::string reason = row.error;
      std::replace_if(reason.begin(), reason.end(), [](char ch) { return ch == '\t' || ch == '\n'; }, ' ');
      out += fmt::format("\t\t\t\t\tfailed: {}\n", reason);
    }
  }
  return out;
}

}  // namespace textclf::training
