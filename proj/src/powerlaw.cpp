#include "tokenlaws/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tokenlaws {

namespace {

std::vector<double> sorted_positive(std::span<const double> freqs, const char* who) {
    std::vector<double> v(freqs.begin(), freqs.end());
    for (double x : v) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw ValidationError(std::string(who) + ": frequencies must be positive and finite");
    }
    std::sort(v.begin(), v.end());
    return v;
}

// First index of the tail {v[i] >= x_min} in an ascending-sorted vector.
std::size_t tail_begin(const std::vector<double>& v, double x_min) {
    return std::lower_bound(v.begin(), v.end(), x_min) - v.begin();
}

double alpha_from_sorted_tail(const std::vector<double>& v, std::size_t begin, double x_min,
                              const char* who) {
    const std::size_t n = v.size() - begin;
    if (n == 0) throw NumericError(std::string(who) + ": empty tail (no values >= x_min)");
    double log_sum = 0.0;
    for (std::size_t i = begin; i < v.size(); ++i) log_sum += std::log(v[i] / x_min);
    if (log_sum <= 0.0)
        throw NumericError(std::string(who) +
                           ": degenerate tail (all tail values equal x_min, zero log-sum)");
    return 1.0 + static_cast<double>(n) / log_sum;
}

double ks_from_sorted_tail(const std::vector<double>& v, std::size_t begin, double alpha,
                           double x_min) {
    const std::size_t n = v.size() - begin;
    if (n == 0) throw NumericError("ks_distance: empty tail (no values >= x_min)");
    const double exponent = -(alpha - 1.0);
    double d = 0.0;
    for (std::size_t i = begin; i < v.size(); ++i) {
        const double s = static_cast<double>(i - begin + 1) / static_cast<double>(n);
        const double p = 1.0 - std::pow(v[i] / x_min, exponent);
        d = std::max(d, std::abs(s - p));
    }
    return d;
}

}  // namespace

double fit_alpha_mle(std::span<const double> freqs, double x_min) {
    if (!(x_min > 0.0)) throw ValidationError("fit_alpha_mle: x_min must be positive");
    const auto v = sorted_positive(freqs, "fit_alpha_mle");
    return alpha_from_sorted_tail(v, tail_begin(v, x_min), x_min, "fit_alpha_mle");
}

double ks_distance(std::span<const double> freqs, double alpha, double x_min) {
    if (!(x_min > 0.0)) throw ValidationError("ks_distance: x_min must be positive");
    const auto v = sorted_positive(freqs, "ks_distance");
    return ks_from_sorted_tail(v, tail_begin(v, x_min), alpha, x_min);
}

PowerLawFit select_xmin(std::span<const double> freqs, const XminOptions& opts) {
    const auto v = sorted_positive(freqs, "select_xmin");
    const std::size_t min_tail = std::max<std::size_t>(opts.min_tail, 2);

    // Unique values ascending, each paired with its first index in v.
    std::vector<std::pair<double, std::size_t>> candidates;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i == 0 || v[i] != v[i - 1]) candidates.emplace_back(v[i], i);
    }
    if (candidates.size() > opts.max_candidates && opts.max_candidates >= 2) {
        std::vector<std::pair<double, std::size_t>> picked;
        picked.reserve(opts.max_candidates);
        const std::size_t u = candidates.size();
        for (std::size_t j = 0; j < opts.max_candidates; ++j) {
            const std::size_t idx = j * (u - 1) / (opts.max_candidates - 1);
            if (picked.empty() || picked.back().second != candidates[idx].second)
                picked.push_back(candidates[idx]);
        }
        candidates = std::move(picked);
    }

    // suffix_log[k] = sum of ln v[i] over i >= k, so each candidate's
    // log-sum is one subtraction instead of a pass over the tail.
    std::vector<double> suffix_log(v.size() + 1, 0.0);
    for (std::size_t i = v.size(); i-- > 0;) suffix_log[i] = suffix_log[i + 1] + std::log(v[i]);

    PowerLawFit best{};
    bool found = false;
    for (const auto& [x_min, begin] : candidates) {
        const std::size_t n = v.size() - begin;
        if (n < min_tail) break;  // tails only shrink as x_min grows
        const double log_sum = suffix_log[begin] - static_cast<double>(n) * std::log(x_min);
        if (log_sum <= 0.0) continue;  // all tail values equal x_min
        const double alpha = 1.0 + static_cast<double>(n) / log_sum;
        const double ks = ks_from_sorted_tail(v, begin, alpha, x_min);
        if (!found || ks < best.ks) {
            best = PowerLawFit{alpha, alpha - 1.0, x_min, ks, n};
            found = true;
        }
    }
    if (!found)
        throw NumericError("select_xmin: no candidate x_min leaves a usable tail of at least " +
                           std::to_string(min_tail) + " samples");
    return best;
}

}  // namespace tokenlaws
