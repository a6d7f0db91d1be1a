#pragma once

#include <cstddef>
#include <span>

#include "tokenlaws/types.hpp"

namespace tokenlaws {

// Result of fitting f(r) = a * r^-eta to a frequency multiset. alpha is the
// maximum-likelihood exponent of the frequency distribution and eta =
// alpha - 1 is the rank-frequency exponent. Values of alpha near 2 indicate
// close adherence to the ideal Zipf profile.
struct PowerLawFit {
    double alpha = 0.0;
    double eta = 0.0;
    double x_min = 0.0;
    double ks = 0.0;
    std::size_t n_tail = 0;
};

// Continuous MLE over the tail {x_i >= x_min}:
//   alpha = 1 + n / sum(ln(x_i / x_min)).
// Throws NumericError when the tail is empty or every tail value equals
// x_min (zero log-sum), ValidationError on non-positive inputs.
double fit_alpha_mle(std::span<const double> freqs, double x_min);

// Kolmogorov-Smirnov distance between the empirical CDF of the tail and the
// fitted CDF P(x) = 1 - (x/x_min)^-(alpha-1). The empirical CDF is compared
// at the upper step value S(x_(i)) = i/n_tail (one-sided convention; golden
// values depend on it).
double ks_distance(std::span<const double> freqs, double alpha, double x_min);

struct XminOptions {
    // Candidates leaving a tail smaller than this are skipped; KS over a
    // handful of points is meaningless.
    std::size_t min_tail = 10;
    // When the data has more unique values than this, candidates are an
    // evenly spaced subsample of the sorted unique values (smallest value
    // always included). Integer token frequencies stay under the cap in
    // practice, so the scan is exhaustive where it matters.
    std::size_t max_candidates = 1024;
};

// Scans x_min candidates over the unique frequency values in ascending
// order and returns the fit minimising the KS distance; ties break toward
// the smaller x_min. Input order never affects the result.
PowerLawFit select_xmin(std::span<const double> freqs, const XminOptions& opts = {});

}  // namespace tokenlaws
