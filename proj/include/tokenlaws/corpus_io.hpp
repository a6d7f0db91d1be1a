#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "tokenlaws/types.hpp"

namespace tokenlaws {

struct ManifestEntry {
    std::string path;       // utterance file, relative paths resolve against the manifest dir
    std::string config_id;
};

struct LoadedCorpus {
    std::vector<CodecUtterance> utterances;  // manifest order
    std::vector<CodecConfig> configs;        // deduplicated by config_id, first-appearance order
};

// Reads a JSON Lines manifest ({"path": ..., "config_id": ...} per line) and
// every referenced utterance file. Validates row lengths, codebook bounds
// and config consistency; every diagnostic names the offending utterance
// and row. Configs are derived from the utterance files (n_dims from the
// row count, codebook_size from the file).
LoadedCorpus load_codec_utterances(const std::filesystem::path& manifest_path);

// Whitespace tokenisation, case-preserving, IDs in first-appearance order.
// An empty file gives an empty sequence and an empty map.
std::pair<TokenSequence, VocabMap> tokenize_text(const std::filesystem::path& text_path);

// CSV with header `config_id,metric,value`; LF or CRLF. Values are
// range-checked per metric and duplicate (config_id, metric) pairs rejected.
std::vector<BenchmarkRecord> load_benchmarks(const std::filesystem::path& csv_path);

// JSON array of full CodecConfig objects (model name, sample rate, kbps).
std::vector<CodecConfig> load_config_table(const std::filesystem::path& json_path);

// Writers for the same formats; loading what these emit reproduces the
// records exactly.
void write_utterance(const CodecUtterance& utt, const std::filesystem::path& path);
void write_manifest(const std::vector<ManifestEntry>& entries,
                    const std::filesystem::path& path);
void write_benchmarks(const std::vector<BenchmarkRecord>& records,
                      const std::filesystem::path& path);
void write_config_table(const std::vector<CodecConfig>& configs,
                        const std::filesystem::path& path);

}  // namespace tokenlaws
