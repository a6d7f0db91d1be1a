#include "tokenlaws/heaps.hpp"

#include <algorithm>
#include <cmath>

namespace tokenlaws {

GrowthCurve vocab_growth(const TokenSequence& seq, std::size_t n_samples) {
    const std::size_t m_total = seq.items.size();
    if (m_total == 0) throw NumericError("vocab_growth: empty sequence");
    if (n_samples == 0) throw ValidationError("vocab_growth: n_samples must be >= 1");

    // Log-spaced prefix lengths in [1, m_total], deduplicated, final point kept.
    std::vector<std::size_t> positions;
    if (n_samples >= m_total) {
        positions.resize(m_total);
        for (std::size_t i = 0; i < m_total; ++i) positions[i] = i + 1;
    } else {
        positions.reserve(n_samples);
        const double log_m = std::log(static_cast<double>(m_total));
        for (std::size_t j = 0; j < n_samples; ++j) {
            const double t = n_samples == 1 ? 1.0
                                            : static_cast<double>(j) / (n_samples - 1);
            auto m = static_cast<std::size_t>(std::llround(std::exp(t * log_m)));
            m = std::clamp<std::size_t>(m, 1, m_total);
            if (positions.empty() || m > positions.back()) positions.push_back(m);
        }
        if (positions.back() != m_total) positions.push_back(m_total);
    }

    GrowthCurve curve;
    curve.points.reserve(positions.size());
    std::vector<bool> seen(seq.alphabet_bound, false);
    std::size_t distinct = 0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < m_total; ++i) {
        const TokenId t = seq.items[i];
        if (t >= seq.alphabet_bound)
            throw ValidationError("vocab_growth: token " + std::to_string(t) +
                                  " >= alphabet_bound " + std::to_string(seq.alphabet_bound));
        if (!seen[t]) {
            seen[t] = true;
            ++distinct;
        }
        if (next < positions.size() && i + 1 == positions[next]) {
            curve.points.push_back({i + 1, static_cast<double>(distinct)});
            ++next;
        }
    }
    return curve;
}

HeapsFit fit_heaps(const GrowthCurve& curve) {
    const auto& pts = curve.points;
    if (pts.size() < 2)
        throw NumericError("fit_heaps: need at least 2 curve points, got " +
                           std::to_string(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].tokens_seen < 1)
            throw ValidationError("fit_heaps: token counts must be >= 1");
        if (i > 0 && pts[i].tokens_seen <= pts[i - 1].tokens_seen)
            throw ValidationError("fit_heaps: token counts must be strictly increasing");
        if (!(pts[i].vocab > 0.0))
            throw NumericError("fit_heaps: curve has a point with V <= 0");
    }

    const double n = static_cast<double>(pts.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& p : pts) {
        sx += std::log(static_cast<double>(p.tokens_seen));
        sy += std::log(p.vocab);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : pts) {
        const double dx = std::log(static_cast<double>(p.tokens_seen)) - mx;
        const double dy = std::log(p.vocab) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    const double beta = sxy / sxx;
    const double intercept = my - beta * mx;

    double ss_res = 0.0;
    for (const auto& p : pts) {
        const double r = std::log(p.vocab) - (intercept + beta * std::log(static_cast<double>(p.tokens_seen)));
        ss_res += r * r;
    }
    return HeapsFit{std::exp(intercept), beta, std::sqrt(ss_res / n)};
}

}  // namespace tokenlaws
