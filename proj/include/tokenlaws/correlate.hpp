#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "tokenlaws/types.hpp"

namespace tokenlaws {

// The statistics a correlation run can pick from; one value per
// (config, n, statistic).
enum class Statistic { alpha, eta, ks, K, beta, H, L, R, bit_reduction };

const char* statistic_name(Statistic s);
Statistic parse_statistic(const std::string& name);

struct StatPoint {
    std::string config_id;
    int n = 1;
    Statistic statistic = Statistic::alpha;
    double value = 0.0;
};

struct Trendline {
    double slope = 0.0;
    double intercept = 0.0;
};

struct ScatterPair {
    std::string config_id;
    double x = 0.0;  // statistic value
    double y = 0.0;  // metric value

    bool operator==(const ScatterPair&) const = default;
};

struct CorrelationReport {
    Statistic statistic = Statistic::alpha;
    Metric metric = Metric::WER;
    int n = 1;
    std::vector<ScatterPair> pairs;        // joined on config_id, sorted by config_id
    double r = 0.0;
    Trendline line;
    std::vector<std::string> missing_metric;     // configs with a statistic but no metric
    std::vector<std::string> missing_statistic;  // configs with a metric but no statistic
};

// Product-moment correlation coefficient; result clamped to [-1, 1].
// Throws ValidationError on length mismatch or fewer than 2 points,
// NumericError when either variable has zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Least-squares line y = slope * x + intercept; slope carries the sign of r.
Trendline trendline(std::span<const double> xs, std::span<const double> ys);

// Standardises both coordinates over the pool points + reference (population
// mean/std), then returns each point's Euclidean distance to the reference.
// Throws NumericError when a coordinate has zero spread.
std::vector<double> zscore_distance(std::span<const std::array<double, 2>> points,
                                    std::array<double, 2> reference);

// Inner-joins statistic values with benchmark values on config_id for the
// chosen (statistic, n, metric) and reports r plus the trendline. Configs
// present on only one side are listed, never imputed. Throws NumericError
// with fewer than 3 joined pairs.
CorrelationReport correlate_metric(std::span<const StatPoint> stats,
                                   std::span<const BenchmarkRecord> records,
                                   Statistic statistic, Metric metric, int n);

}  // namespace tokenlaws
