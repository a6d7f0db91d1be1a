#include "tokenlaws/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tokenlaws {

const char* statistic_name(Statistic s) {
    switch (s) {
        case Statistic::alpha: return "alpha";
        case Statistic::eta: return "eta";
        case Statistic::ks: return "ks";
        case Statistic::K: return "K";
        case Statistic::beta: return "beta";
        case Statistic::H: return "H";
        case Statistic::L: return "L";
        case Statistic::R: return "R";
        case Statistic::bit_reduction: return "bit_reduction";
    }
    return "?";
}

Statistic parse_statistic(const std::string& name) {
    static const std::pair<const char*, Statistic> table[] = {
        {"alpha", Statistic::alpha}, {"eta", Statistic::eta},
        {"ks", Statistic::ks},       {"K", Statistic::K},
        {"beta", Statistic::beta},   {"H", Statistic::H},
        {"L", Statistic::L},         {"R", Statistic::R},
        {"bit_reduction", Statistic::bit_reduction},
    };
    for (const auto& [n, s] : table)
        if (name == n) return s;
    throw ValidationError("unknown statistic name: '" + name + "'");
}

namespace {

struct CenteredSums {
    double sxx = 0.0, syy = 0.0, sxy = 0.0, mean_x = 0.0, mean_y = 0.0;
};

CenteredSums centered_sums(std::span<const double> xs, std::span<const double> ys,
                           const char* who) {
    if (xs.size() != ys.size())
        throw ValidationError(std::string(who) + ": length mismatch (" +
                              std::to_string(xs.size()) + " vs " + std::to_string(ys.size()) + ")");
    if (xs.size() < 2)
        throw ValidationError(std::string(who) + ": need at least 2 points");
    CenteredSums s;
    const double n = static_cast<double>(xs.size());
    for (double x : xs) s.mean_x += x;
    for (double y : ys) s.mean_y += y;
    s.mean_x /= n;
    s.mean_y /= n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - s.mean_x;
        const double dy = ys[i] - s.mean_y;
        s.sxx += dx * dx;
        s.syy += dy * dy;
        s.sxy += dx * dy;
    }
    if (s.sxx <= 0.0) throw NumericError(std::string(who) + ": zero variance in x");
    if (s.syy <= 0.0) throw NumericError(std::string(who) + ": zero variance in y");
    return s;
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
    const auto s = centered_sums(xs, ys, "pearson");
    return std::clamp(s.sxy / std::sqrt(s.sxx * s.syy), -1.0, 1.0);
}

Trendline trendline(std::span<const double> xs, std::span<const double> ys) {
    const auto s = centered_sums(xs, ys, "trendline");
    const double slope = s.sxy / s.sxx;
    return Trendline{slope, s.mean_y - slope * s.mean_x};
}

std::vector<double> zscore_distance(std::span<const std::array<double, 2>> points,
                                    std::array<double, 2> reference) {
    if (points.empty()) throw ValidationError("zscore_distance: empty point set");
    // Pool = points plus the reference itself.
    const double n = static_cast<double>(points.size() + 1);
    std::array<double, 2> mean{};
    for (const auto& p : points) {
        mean[0] += p[0];
        mean[1] += p[1];
    }
    mean[0] = (mean[0] + reference[0]) / n;
    mean[1] = (mean[1] + reference[1]) / n;

    std::array<double, 2> var{};
    for (const auto& p : points) {
        var[0] += (p[0] - mean[0]) * (p[0] - mean[0]);
        var[1] += (p[1] - mean[1]) * (p[1] - mean[1]);
    }
    var[0] = (var[0] + (reference[0] - mean[0]) * (reference[0] - mean[0])) / n;
    var[1] = (var[1] + (reference[1] - mean[1]) * (reference[1] - mean[1])) / n;
    for (int c = 0; c < 2; ++c) {
        if (var[c] <= 0.0)
            throw NumericError("zscore_distance: zero standard deviation in coordinate " +
                               std::to_string(c));
    }
    const std::array<double, 2> sd{std::sqrt(var[0]), std::sqrt(var[1])};

    std::vector<double> distances;
    distances.reserve(points.size());
    for (const auto& p : points) {
        const double dx = (p[0] - reference[0]) / sd[0];
        const double dy = (p[1] - reference[1]) / sd[1];
        distances.push_back(std::hypot(dx, dy));
    }
    return distances;
}

CorrelationReport correlate_metric(std::span<const StatPoint> stats,
                                   std::span<const BenchmarkRecord> records,
                                   Statistic statistic, Metric metric, int n) {
    std::map<std::string, double> stat_by_config;
    for (const auto& s : stats) {
        if (s.statistic == statistic && s.n == n) stat_by_config[s.config_id] = s.value;
    }
    std::map<std::string, double> metric_by_config;
    for (const auto& r : records) {
        if (r.metric == metric) metric_by_config[r.config_id] = r.value;
    }

    CorrelationReport report;
    report.statistic = statistic;
    report.metric = metric;
    report.n = n;
    for (const auto& [id, x] : stat_by_config) {
        auto it = metric_by_config.find(id);
        if (it == metric_by_config.end())
            report.missing_metric.push_back(id);
        else
            report.pairs.push_back({id, x, it->second});
    }
    for (const auto& [id, y] : metric_by_config) {
        if (!stat_by_config.count(id)) report.missing_statistic.push_back(id);
    }

    if (report.pairs.size() < 3)
        throw NumericError(std::string("correlate_metric: only ") +
                           std::to_string(report.pairs.size()) + " joined pairs for " +
                           statistic_name(statistic) + " vs " + metric_name(metric) + " at n=" +
                           std::to_string(n) + " (need >= 3)");

    std::vector<double> xs, ys;
    xs.reserve(report.pairs.size());
    ys.reserve(report.pairs.size());
    for (const auto& p : report.pairs) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    report.r = pearson(xs, ys);
    report.line = trendline(xs, ys);
    return report;
}

}  // namespace tokenlaws
