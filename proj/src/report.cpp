#include "tokenlaws/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace tokenlaws {

using nlohmann::json;

std::string format_number(double value) {
    if (std::isfinite(value) && value == std::floor(value) && std::abs(value) < 1e15) {
        const auto i = static_cast<long long>(value);
        return std::to_string(i);
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

json to_json(const PowerLawFit& fit) {
    return json{{"alpha", fit.alpha},
                {"eta", fit.eta},
                {"x_min", fit.x_min},
                {"ks", fit.ks},
                {"n_tail", fit.n_tail}};
}

json to_json(const HeapsFit& fit) {
    return json{{"K", fit.K}, {"beta", fit.beta}, {"rmse_log", fit.rmse_log}};
}

json to_json(const CodingStats& stats) {
    json j{{"H", stats.H},
           {"L", stats.L},
           {"R", stats.R},
           {"bit_reduction", stats.bit_reduction},
           {"V", stats.V}};
    if (stats.degenerate()) j["degenerate"] = true;
    return j;
}

json to_json(const CorrelationReport& report) {
    json pairs = json::array();
    for (const auto& p : report.pairs)
        pairs.push_back(json{{"config_id", p.config_id}, {"x", p.x}, {"y", p.y}});
    return json{{"statistic", statistic_name(report.statistic)},
                {"metric", metric_name(report.metric)},
                {"n", report.n},
                {"r", report.r},
                {"slope", report.line.slope},
                {"intercept", report.line.intercept},
                {"pairs", std::move(pairs)},
                {"missing_metric", report.missing_metric},
                {"missing_statistic", report.missing_statistic}};
}

void write_rank_frequency_csv(const RankedDistribution& dist, std::ostream& out) {
    out << "rank,frequency\n";
    for (std::size_t r = 0; r < dist.entries.size(); ++r)
        out << (r + 1) << ',' << format_number(dist.entries[r].frequency) << '\n';
}

void write_growth_curve_csv(const GrowthCurve& curve, std::ostream& out) {
    out << "m,V\n";
    for (const auto& p : curve.points)
        out << p.tokens_seen << ',' << format_number(p.vocab) << '\n';
}

void write_scatter_csv(const CorrelationReport& report, std::ostream& out) {
    out << "config_id,x,y\n";
    for (const auto& p : report.pairs)
        out << p.config_id << ',' << format_number(p.x) << ',' << format_number(p.y) << '\n';
}

void write_code_table_csv(const HuffmanCode& code, std::ostream& out) {
    out << "symbol,length\n";
    for (std::size_t s = 0; s < code.lengths.size(); ++s)
        if (code.lengths[s] > 0) out << s << ',' << code.lengths[s] << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    out << contents;
}

}  // namespace tokenlaws
