#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tokenlaws/errors.hpp"

namespace tokenlaws {

using TokenId = std::uint32_t;

// A flat sequence of token IDs with an exclusive upper bound on the IDs
// that may appear in it.
struct TokenSequence {
    std::vector<TokenId> items;
    TokenId alphabet_bound = 0;

    bool operator==(const TokenSequence&) const = default;
};

// One codec configuration: n_dims parallel quantiser streams, each with its
// own codebook of codebook_size entries.
struct CodecConfig {
    std::string config_id;
    std::string model_name;
    int n_dims = 0;
    int codebook_size = 0;
    int sample_rate_hz = 0;
    double kbps = 0.0;

    bool operator==(const CodecConfig&) const = default;
};

// Token matrix from one codec pass over one utterance: tokens[d][t] is the
// token emitted by dimension d at frame t. All rows have equal length and
// every value is < codebook_size.
struct CodecUtterance {
    std::string utterance_id;
    std::string config_id;
    int codebook_size = 0;
    std::vector<std::vector<TokenId>> tokens;

    int n_dims() const { return static_cast<int>(tokens.size()); }
    std::size_t n_frames() const { return tokens.empty() ? 0 : tokens.front().size(); }

    bool operator==(const CodecUtterance&) const = default;
};

// Bijection between surface words and dense integer IDs assigned in
// first-appearance order (IDs are contiguous 0..V-1).
struct VocabMap {
    std::vector<std::string> words;                 // id -> word
    std::unordered_map<std::string, TokenId> ids;   // word -> id

    std::size_t size() const { return words.size(); }

    TokenId intern(const std::string& word) {
        auto it = ids.find(word);
        if (it != ids.end()) return it->second;
        TokenId id = static_cast<TokenId>(words.size());
        words.push_back(word);
        ids.emplace(word, id);
        return id;
    }
};

enum class Metric { WER, CER, UTMOS };

const char* metric_name(Metric m);
Metric parse_metric(const std::string& name);  // throws ValidationError on unknown name

// Checks the per-metric value range: WER/CER are fractions in [0, inf)
// (values above 1 are legal for insert-heavy transcripts), UTMOS is in [1, 5].
void validate_metric_value(Metric m, double value);

struct BenchmarkRecord {
    std::string config_id;
    Metric metric = Metric::WER;
    double value = 0.0;

    bool operator==(const BenchmarkRecord&) const = default;
};

}  // namespace tokenlaws
