#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "tokenlaws/coding.hpp"
#include "tokenlaws/correlate.hpp"
#include "tokenlaws/heaps.hpp"
#include "tokenlaws/ngram.hpp"
#include "tokenlaws/powerlaw.hpp"

namespace tokenlaws {

// Shortest exact decimal form; integral values print without a fraction.
// Keeps CSV output byte-stable across runs and platforms.
std::string format_number(double value);

nlohmann::json to_json(const PowerLawFit& fit);
nlohmann::json to_json(const HeapsFit& fit);
nlohmann::json to_json(const CodingStats& stats);
nlohmann::json to_json(const CorrelationReport& report);

// CSV `rank,frequency` over the ranked entries.
void write_rank_frequency_csv(const RankedDistribution& dist, std::ostream& out);

// CSV `m,V` over the growth points.
void write_growth_curve_csv(const GrowthCurve& curve, std::ostream& out);

// CSV `config_id,x,y` over the joined scatter pairs.
void write_scatter_csv(const CorrelationReport& report, std::ostream& out);

// CSV `symbol,length` over the support of a Huffman code.
void write_code_table_csv(const HuffmanCode& code, std::ostream& out);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace tokenlaws
