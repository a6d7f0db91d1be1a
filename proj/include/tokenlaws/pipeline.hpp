#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "tokenlaws/synth.hpp"
#include "tokenlaws/types.hpp"

namespace tokenlaws {

// Everything a command run needs. The CLI fills this from flags; tests fill
// it directly.
struct RunConfig {
    std::filesystem::path manifest;    // codec-token input (analyze, ngram-dump)
    std::filesystem::path text;        // natural-language input, word 1-gram baseline path
    std::filesystem::path benchmarks;  // benchmark CSV (correlate)
    std::filesystem::path report;      // analyze output dir or report.json (correlate)
    std::filesystem::path out;         // output directory

    std::vector<int> n_values{1, 2, 3, 4, 6};
    bool dedup = true;
    bool exclude_marker_windows = false;
    std::size_t min_tail = 10;
    std::size_t growth_samples = 200;
    std::string format = "json";  // "json" or "csv" (csv adds flat tables)

    // synth
    GeneratorSpec generator;
    std::string synth_config_id = "SYN";
    std::uint32_t synth_utterances = 1;

    // ngram-dump
    int dump_n = 1;
};

// Identifier used for the natural-language baseline in text mode.
inline constexpr const char* kTextConfigId = "GT";

// Runs the full statistics pipeline over a codec manifest or a text file and
// writes the report tree under config.out. All outputs land in a temporary
// sibling directory that is atomically swapped in on success.
void run_analyze(const RunConfig& config);

// Joins a prior analyze report with a benchmark CSV and writes correlation
// reports and scatter files under config.out.
void run_correlate(const RunConfig& config);

// Writes a synthetic corpus (utterance JSON files plus manifest) that
// analyze can consume directly.
void run_synth(const RunConfig& config);

// Dumps rank-frequency CSVs for one gram order; to `stdout_stream` when
// config.out is empty (single-config inputs only), else one file per config.
void run_ngram_dump(const RunConfig& config, std::ostream& stdout_stream);

}  // namespace tokenlaws
