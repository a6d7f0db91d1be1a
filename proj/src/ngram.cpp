#include "tokenlaws/ngram.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace tokenlaws {

std::vector<double> RankedDistribution::frequencies() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.frequency);
    return out;
}

static void validate_order(int n) {
    if (n < 1) throw ValidationError("n-gram order must be >= 1, got " + std::to_string(n));
}

std::vector<Gram> extract_ngrams(const TokenSequence& seq, int n) {
    validate_order(n);
    std::vector<Gram> grams;
    const auto& items = seq.items;
    if (items.size() < static_cast<std::size_t>(n)) return grams;
    grams.reserve(items.size() - n + 1);
    for (std::size_t i = 0; i + n <= items.size(); ++i)
        grams.emplace_back(items.begin() + i, items.begin() + i + n);
    return grams;
}

std::vector<Gram> extract_ngrams_excluding_markers(const TokenSequence& seq, int n,
                                                   const FlattenScheme& scheme) {
    validate_order(n);
    std::vector<Gram> grams;
    const auto& items = seq.items;
    if (items.size() < static_cast<std::size_t>(n)) return grams;
    // markers_before[i] = number of marker tokens in items[0, i)
    std::size_t in_window = 0;
    for (std::size_t i = 0; i + n <= items.size(); ++i) {
        if (i == 0) {
            for (int j = 0; j < n; ++j) in_window += scheme.is_marker(items[j]);
        } else {
            in_window -= scheme.is_marker(items[i - 1]);
            in_window += scheme.is_marker(items[i + n - 1]);
        }
        if (in_window == 0) grams.emplace_back(items.begin() + i, items.begin() + i + n);
    }
    return grams;
}

RankedDistribution count_frequencies(std::span<const Gram> grams) {
    // Lexicographic sort, then run-length count. The counted entries come out
    // lex-ascending, so a stable sort by descending frequency yields exactly
    // the tie-break rule (lexicographically smaller gram wins equal ranks).
    std::vector<Gram> sorted(grams.begin(), grams.end());
    std::sort(sorted.begin(), sorted.end());

    RankedDistribution dist;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        dist.entries.push_back({std::move(sorted[i]), static_cast<double>(j - i)});
        i = j;
    }
    std::stable_sort(dist.entries.begin(), dist.entries.end(),
                     [](const RankedEntry& a, const RankedEntry& b) {
                         return a.frequency > b.frequency;
                     });
    dist.total_mass = static_cast<double>(grams.size());
    return dist;
}

RankedDistribution distribution_from_counts(std::span<const double> counts) {
    RankedDistribution dist;
    for (std::size_t v = 0; v < counts.size(); ++v) {
        const double c = counts[v];
        if (c < 0.0) throw ValidationError("distribution_from_counts: negative count at symbol " +
                                           std::to_string(v));
        if (c > 0.0) {
            dist.entries.push_back({Gram{static_cast<TokenId>(v)}, c});
            dist.total_mass += c;
        }
    }
    std::stable_sort(dist.entries.begin(), dist.entries.end(),
                     [](const RankedEntry& a, const RankedEntry& b) {
                         return a.frequency > b.frequency;
                     });
    return dist;
}

namespace {
struct GramHash {
    std::size_t operator()(const Gram& g) const {
        // FNV-1a over the ID values; deterministic across platforms.
        std::uint64_t h = 1469598103934665603ull;
        for (TokenId t : g) {
            h ^= t;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};
}  // namespace

TokenSequence encode_grams_as_ids(std::span<const Gram> grams) {
    TokenSequence out;
    out.items.reserve(grams.size());
    std::unordered_map<Gram, TokenId, GramHash> ids;
    for (const auto& g : grams) {
        auto [it, inserted] = ids.emplace(g, static_cast<TokenId>(ids.size()));
        out.items.push_back(it->second);
    }
    out.alphabet_bound = static_cast<TokenId>(ids.size());
    return out;
}

}  // namespace tokenlaws
