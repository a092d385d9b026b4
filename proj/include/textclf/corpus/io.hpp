#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "textclf/corpus/document.hpp"

namespace textclf::corpus {

/// One JSON object per line with optional string fields macroscopy,
/// diagnosis, anamnesis, label, the ISO date inserted_at and, for distilled
/// corpora, the integer distilled_k.
std::string record_to_line(const RawRecord& record);
RawRecord record_from_line(const std::string& line);

void write_records(const std::filesystem::path& path, std::span<const RawRecord> records);
std::vector<RawRecord> read_records(const std::filesystem::path& path);

/// Split directory layout: train.jsonl, valid.jsonl, test.jsonl and
/// classes.tsv ("label<TAB>index" per line).
void write_split(const std::filesystem::path& dir, const CorpusSplit& split);
CorpusSplit read_split(const std::filesystem::path& dir);

void write_class_map(const std::filesystem::path& path, const ClassMap& classes);
ClassMap read_class_map(const std::filesystem::path& path);

/// Preprocesses and segments records, assigning class indices from
/// `classes`. Records without text are skipped; unknown labels throw.
std::vector<Document> load_documents(std::span<const RawRecord> records, const ClassMap& classes);

}  // namespace textclf::corpus
