#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "textclf/corpus/document.hpp"

namespace textclf::corpus {

/// Token inserted between merged text fields.
inline constexpr std::string_view kFieldSeparator = ".";

/// Whitespace tokenization with leading/trailing ASCII punctuation split off
/// into one token per character. Letters are uppercased (ASCII only).
std::vector<std::string> tokenize(std::string_view text);

/// Merges macroscopy, diagnosis and anamnesis (in that order, separated by
/// a period token) into one uppercase token sequence with sentence ranges.
/// Returns nullopt when no field carries any token.
std::optional<Document> preprocess(const RawRecord& record);

/// Splits after every "." token; a trailing run without a period still forms
/// a sentence. Replaces any existing ranges.
Document segment_sentences(Document doc);

/// Keeps the earliest-dated document among those with identical token
/// sequences (first in input order on equal dates). Survivor order is the
/// input order.
std::vector<Document> deduplicate(std::span<const Document> docs);

/// Rebuilds a record whose diagnosis field holds the space-joined tokens;
/// preprocess() maps it back to the same tokens.
RawRecord to_record(const Document& doc);

std::string join_tokens(std::span<const std::string> tokens);

}  // namespace textclf::corpus
