#include "tokenlaws/preprocess.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace tokenlaws {

void FlattenScheme::validate() const {
    if (n_dims < 1) throw ValidationError("flatten scheme: n_dims must be >= 1");
    if (codebook_size < 2) throw ValidationError("flatten scheme: codebook_size must be >= 2");
    const std::uint64_t top = static_cast<std::uint64_t>(n_dims) * codebook_size +
                              2 * static_cast<std::uint64_t>(n_dims);
    if (top > std::numeric_limits<TokenId>::max())
        throw ValidationError("flatten scheme: ID space exceeds TokenId range");
}

std::vector<TokenId> dedup(std::span<const TokenId> items) {
    std::vector<TokenId> out;
    out.reserve(items.size());
    for (TokenId t : items) {
        if (out.empty() || out.back() != t) out.push_back(t);
    }
    return out;
}

TokenSequence dedup(const TokenSequence& seq) {
    return TokenSequence{dedup(std::span<const TokenId>(seq.items)), seq.alphabet_bound};
}

CodecUtterance dedup_rows(const CodecUtterance& utt) {
    CodecUtterance out = utt;
    for (auto& row : out.tokens) row = dedup(std::span<const TokenId>(row));
    return out;
}

TokenSequence flatten(const CodecUtterance& utt, const FlattenScheme& scheme, bool dedup_runs) {
    scheme.validate();
    if (utt.n_dims() != scheme.n_dims)
        throw ValidationError("flatten: utterance '" + utt.utterance_id + "' has " +
                              std::to_string(utt.n_dims()) + " dimensions, scheme expects " +
                              std::to_string(scheme.n_dims));

    TokenSequence out;
    out.alphabet_bound = scheme.alphabet_bound();
    std::size_t total = 2 * static_cast<std::size_t>(scheme.n_dims);
    for (const auto& row : utt.tokens) total += row.size();
    out.items.reserve(total);

    for (int d = 0; d < scheme.n_dims; ++d) {
        const TokenId offset = static_cast<TokenId>(d) * scheme.codebook_size;
        out.items.push_back(scheme.start_marker(d));
        std::vector<TokenId> row = dedup_runs
                                       ? dedup(std::span<const TokenId>(utt.tokens[d]))
                                       : utt.tokens[d];
        for (TokenId t : row) {
            if (t >= scheme.codebook_size)
                throw ValidationError("flatten: utterance '" + utt.utterance_id + "' dimension " +
                                      std::to_string(d) + " has token " + std::to_string(t) +
                                      " >= codebook_size " + std::to_string(scheme.codebook_size));
            out.items.push_back(t + offset);
        }
        out.items.push_back(scheme.end_marker(d));
    }
    return out;
}

std::vector<std::vector<TokenId>> unflatten(const TokenSequence& seq, const FlattenScheme& scheme) {
    scheme.validate();
    std::vector<std::vector<TokenId>> rows;
    rows.reserve(scheme.n_dims);
    std::size_t i = 0;
    const auto& items = seq.items;
    for (int d = 0; d < scheme.n_dims; ++d) {
        if (i >= items.size() || items[i] != scheme.start_marker(d))
            throw ValidationError("unflatten: expected start marker for dimension " +
                                  std::to_string(d) + " at position " + std::to_string(i));
        ++i;
        std::vector<TokenId> row;
        const TokenId offset = static_cast<TokenId>(d) * scheme.codebook_size;
        while (i < items.size() && items[i] != scheme.end_marker(d)) {
            const TokenId id = items[i];
            if (id < offset || id >= offset + scheme.codebook_size)
                throw ValidationError("unflatten: token ID " + std::to_string(id) +
                                      " at position " + std::to_string(i) +
                                      " outside dimension " + std::to_string(d) + " payload range");
            row.push_back(id - offset);
            ++i;
        }
        if (i >= items.size())
            throw ValidationError("unflatten: missing end marker for dimension " +
                                  std::to_string(d));
        ++i;  // consume end marker
        rows.push_back(std::move(row));
    }
    if (i != items.size())
        throw ValidationError("unflatten: trailing tokens after final end marker");
    return rows;
}

std::vector<double> mean_token_counts(std::span<const CodecUtterance> utts,
                                      const FlattenScheme& scheme) {
    scheme.validate();
    std::vector<std::uint64_t> counts(scheme.codebook_size, 0);
    for (const auto& utt : utts) {
        if (utt.n_dims() != scheme.n_dims)
            throw ValidationError("mean_token_counts: utterance '" + utt.utterance_id +
                                  "' dimension count does not match scheme");
        for (std::size_t d = 0; d < utt.tokens.size(); ++d) {
            for (TokenId t : utt.tokens[d]) {
                if (t >= scheme.codebook_size)
                    throw ValidationError("mean_token_counts: utterance '" + utt.utterance_id +
                                          "' row " + std::to_string(d) + " has token " +
                                          std::to_string(t) + " >= codebook_size");
                ++counts[t];
            }
        }
    }
    std::vector<double> pooled(scheme.codebook_size, 0.0);
    for (std::size_t v = 0; v < counts.size(); ++v)
        pooled[v] = static_cast<double>(counts[v]) / scheme.n_dims;
    return pooled;
}

}  // namespace tokenlaws
