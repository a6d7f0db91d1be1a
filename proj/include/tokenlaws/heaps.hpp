#pragma once

#include <cstdint>
#include <vector>

#include "tokenlaws/types.hpp"

namespace tokenlaws {

// One point of a vocabulary-growth curve: after tokens_seen tokens, vocab
// distinct tokens have appeared. vocab is stored as a double so synthetic
// exact-power-law curves can be fitted without rounding; curves produced by
// vocab_growth always carry integral values with vocab <= tokens_seen.
struct GrowthPoint {
    std::uint64_t tokens_seen = 0;
    double vocab = 0.0;

    bool operator==(const GrowthPoint&) const = default;
};

struct GrowthCurve {
    std::vector<GrowthPoint> points;  // tokens_seen strictly increasing

    bool operator==(const GrowthCurve&) const = default;
};

// Fitted V(m) = K * m^beta. Natural-language sequences sit at 0 < beta < 1;
// K reflects how fast the early vocabulary opens up. rmse_log is the
// root-mean-square residual of the log-log regression, which exposes
// plateau-induced misfit on saturated codebooks.
struct HeapsFit {
    double K = 0.0;
    double beta = 0.0;
    double rmse_log = 0.0;
};

// Tracks distinct-token counts over one left-to-right pass, sampled at
// n_samples log-spaced prefix lengths (dense early sampling; the final
// point m = |seq| is always included). n_samples >= |seq| keeps every
// prefix. Throws NumericError on an empty sequence.
GrowthCurve vocab_growth(const TokenSequence& seq, std::size_t n_samples);

// Ordinary least squares on (log m, log V): slope = beta, exp(intercept) = K.
// Throws NumericError with fewer than 2 points, ValidationError on a
// non-increasing curve or a point with V <= 0.
HeapsFit fit_heaps(const GrowthCurve& curve);

}  // namespace tokenlaws
