#include "textclf/cli/predictions.hpp"

#include <charconv>
#include <fstream>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"

namespace textclf::cli {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t tab = line.find('\t'); tab != std::string_view::npos; tab = line.find('\t', start)) {
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  fields.push_back(line.substr(start));
  return fields;
}

template <class T>
T parse_number(std::string_view text, const std::string& where) {
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw DataError(fmt::format("{}: malformed number '{}'", where, text));
  }
  return value;
}

}  // namespace

void write_predictions(const std::filesystem::path& path, const PredictionFile& file) {
  file.predictions.validate();
  if (file.class_names.size() != file.predictions.num_classes) {
    throw std::invalid_argument("one class name per class is required");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << "label";
  for (const auto& name : file.class_names) out << '\t' << name;
  out << '\n';
  for (std::size_t i = 0; i < file.predictions.size(); ++i) {
    out << file.predictions.labels[i];
    for (double s : file.predictions.scores[i]) out << '\t' << fmt::format("{}", s);
    out << '\n';
  }
}

PredictionFile read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::string line;
  if (!std::getline(in, line)) throw DataError(fmt::format("{}: empty predictions file", path.string()));
  auto header = split_tabs(line);
  if (header.size() < 3 || header[0] != "label") {
    throw DataError(fmt::format("{}: header must be 'label' followed by at least two class names", path.string()));
  }
  PredictionFile file;
  for (std::size_t i = 1; i < header.size(); ++i) file.class_names.emplace_back(header[i]);
  const std::size_t k = file.class_names.size();
  file.predictions.num_classes = k;

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = fmt::format("{}:{}", path.string(), line_no);
    auto fields = split_tabs(line);
    if (fields.size() != k + 1) throw DataError(fmt::format("{}: expected {} fields", where, k + 1));
    const auto label = parse_number<std::size_t>(fields[0], where);
    if (label >= k) throw DataError(fmt::format("{}: label {} out of range", where, label));
    std::vector<double> scores(k);
    for (std::size_t j = 0; j < k; ++j) scores[j] = parse_number<double>(fields[j + 1], where);
    file.predictions.labels.push_back(label);
    file.predictions.scores.push_back(std::move(scores));
  }
  if (file.predictions.size() == 0) throw DataError(fmt::format("{}: no predictions", path.string()));
  return file;
}

}  // namespace textclf::cli
