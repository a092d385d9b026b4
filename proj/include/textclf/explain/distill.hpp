#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "textclf/corpus/document.hpp"
#include "textclf/networks/model.hpp"
#include "textclf/tensor/tensor.hpp"

namespace textclf::explain {

/// Per position, the largest importance over classes of a {K, T} matrix.
std::vector<double> token_scores(const tensor::Tensor& importance);

/// Positions of the k highest scores in ascending order; equal scores favor
/// the earlier position. Throws std::invalid_argument for k == 0.
std::vector<std::size_t> top_k_positions(std::span<const double> scores, std::size_t k);

/// Keeps the k most important tokens of `doc`; label, date and class index
/// carry over and sentences are re-segmented.
corpus::Document distill_document(const networks::Model& model, const corpus::Document& doc, std::size_t k);

struct DistilledCorpus {
  std::size_t k = 0;
  /// Where the source corpus came from, recorded alongside the output.
  std::string source;
  corpus::CorpusSplit split;
};

/// Distills every document of every split. Throws std::invalid_argument for
/// k == 0 or a non-interpretable model.
DistilledCorpus distill_top_k(const networks::Model& model, const corpus::CorpusSplit& split, std::size_t k,
                              std::string source = {});

/// Split directory layout plus provenance.json; every record carries
/// distilled_k.
void write_distilled(const std::filesystem::path& dir, const DistilledCorpus& corpus);

}  // namespace textclf::explain
