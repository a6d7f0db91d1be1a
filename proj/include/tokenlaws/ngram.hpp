#pragma once

#include <span>
#include <vector>

#include "tokenlaws/preprocess.hpp"
#include "tokenlaws/types.hpp"

namespace tokenlaws {

// An n-gram is the n-tuple of token IDs under a sliding window.
using Gram = std::vector<TokenId>;

// One (n-gram, frequency) entry. Frequencies are doubles so pooled
// (fractional) counts flow through the same type.
struct RankedEntry {
    Gram item;
    double frequency = 0.0;

    bool operator==(const RankedEntry&) const = default;
};

// Frequencies sorted by rank: non-increasing frequency, ties broken by
// lexicographic order of the gram tuple. Rank r is the 1-based position.
struct RankedDistribution {
    std::vector<RankedEntry> entries;
    double total_mass = 0.0;

    std::size_t vocab_size() const { return entries.size(); }

    // Frequency values in rank order; the fit/coding input.
    std::vector<double> frequencies() const;

    bool operator==(const RankedDistribution&) const = default;
};

// Sliding window of stride 1: output length is max(0, |seq| - n + 1).
std::vector<Gram> extract_ngrams(const TokenSequence& seq, int n);

// Same window, but drops every window that contains a marker ID of the
// given scheme.
std::vector<Gram> extract_ngrams_excluding_markers(const TokenSequence& seq, int n,
                                                   const FlattenScheme& scheme);

// Exact multiset counts of the input grams, ranked.
RankedDistribution count_frequencies(std::span<const Gram> grams);

// Ranked distribution over symbols 0..counts.size()-1 with the given
// weights; zero-weight symbols are dropped. Entries are 1-grams.
RankedDistribution distribution_from_counts(std::span<const double> counts);

// Replaces each gram by a dense ID assigned in first-appearance order.
// Distinct-count prefixes are preserved, so vocabulary-growth analysis of a
// gram stream reduces to the TokenSequence case.
TokenSequence encode_grams_as_ids(std::span<const Gram> grams);

}  // namespace tokenlaws
