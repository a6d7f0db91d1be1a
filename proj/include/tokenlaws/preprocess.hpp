#pragma once

#include <span>
#include <vector>

#include "tokenlaws/types.hpp"

namespace tokenlaws {

// ID layout used when serialising a dims x frames token matrix into one flat
// sequence. Dimension d's payload occupies [d*C, (d+1)*C); the 2*n_dims
// marker IDs sit immediately above all payload ranges:
//   start(d) = n_dims*C + 2d,  end(d) = n_dims*C + 2d + 1.
struct FlattenScheme {
    int n_dims = 1;
    TokenId codebook_size = 1024;

    TokenId marker_base() const {
        return static_cast<TokenId>(n_dims) * codebook_size;
    }
    TokenId start_marker(int dim) const { return marker_base() + 2 * static_cast<TokenId>(dim); }
    TokenId end_marker(int dim) const { return start_marker(dim) + 1; }
    TokenId alphabet_bound() const { return marker_base() + 2 * static_cast<TokenId>(n_dims); }
    bool is_marker(TokenId id) const { return id >= marker_base() && id < alphabet_bound(); }

    // Throws ValidationError unless n_dims >= 1, codebook_size >= 2 and the
    // payload/marker ranges fit TokenId without overlap.
    void validate() const;
};

// Collapses runs of equal adjacent tokens to their first element.
TokenSequence dedup(const TokenSequence& seq);
std::vector<TokenId> dedup(std::span<const TokenId> items);

// Applies dedup independently to every dimension row.
CodecUtterance dedup_rows(const CodecUtterance& utt);

// Serialises the matrix: for each dimension d in order, emits start(d), the
// row (deduplicated first when dedup_runs is set) offset by d*C, then end(d).
// alphabet_bound of the result is scheme.alphabet_bound().
TokenSequence flatten(const CodecUtterance& utt, const FlattenScheme& scheme, bool dedup_runs);

// Inverse of flatten: recovers the (post-dedup, if it was applied) matrix
// rows from a flat sequence. Throws ValidationError on any structural
// violation (bad markers, out-of-range payload, wrong dimension count).
std::vector<std::vector<TokenId>> unflatten(const TokenSequence& seq, const FlattenScheme& scheme);

// Pools per-dimension token counts into one codebook-sized table: counts of
// token value v are summed over all dimensions of all utterances and divided
// by n_dims. Markers never appear (inputs are raw matrices). Returns a table
// of size codebook_size; entries may be fractional.
std::vector<double> mean_token_counts(std::span<const CodecUtterance> utts,
                                      const FlattenScheme& scheme);

}  // namespace tokenlaws
