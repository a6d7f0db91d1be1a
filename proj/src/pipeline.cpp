#include "tokenlaws/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tokenlaws/coding.hpp"
#include "tokenlaws/corpus_io.hpp"
#include "tokenlaws/correlate.hpp"
#include "tokenlaws/heaps.hpp"
#include "tokenlaws/ngram.hpp"
#include "tokenlaws/powerlaw.hpp"
#include "tokenlaws/preprocess.hpp"
#include "tokenlaws/report.hpp"

namespace tokenlaws {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Collects output files under <out>.tmp and swaps the finished tree into
// place on commit, so a failed run never leaves partial outputs.
class AtomicOutputDir {
public:
    explicit AtomicOutputDir(fs::path target) {
        if (!target.has_filename()) target = target.parent_path();  // strip trailing slash
        if (target.empty()) throw ValidationError("output directory not set (--out)");
        target_ = std::move(target);
        staging_ = target_.string() + ".tmp";
        std::error_code ec;
        fs::remove_all(staging_, ec);
        fs::create_directories(staging_);
    }

    ~AtomicOutputDir() {
        if (!committed_) {
            std::error_code ec;
            fs::remove_all(staging_, ec);
        }
    }

    // Path inside the staging tree; parent directories are created.
    fs::path path(const fs::path& relative) {
        fs::path p = staging_ / relative;
        fs::create_directories(p.parent_path());
        return p;
    }

    void commit() {
        fs::remove_all(target_);
        fs::rename(staging_, target_);
        committed_ = true;
    }

private:
    fs::path target_;
    fs::path staging_;
    bool committed_ = false;
};

template <typename Fn>
auto with_context(const std::string& where, Fn&& fn) {
    try {
        return fn();
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    } catch (const NumericError& e) {
        throw NumericError(where + ": " + e.what());
    }
}

std::vector<int> clean_n_values(const std::vector<int>& ns) {
    if (ns.empty()) throw ValidationError("n list must be non-empty");
    std::vector<int> out = ns;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (int n : out)
        if (n < 1) throw ValidationError("n-gram orders must be >= 1, got " + std::to_string(n));
    return out;
}

struct SequenceStats {
    RankedDistribution dist;
    GrowthCurve growth;
};

// Shared per-(stream, n) computation: gram extraction per utterance stream
// (windows never span streams), corpus-level counting, and the vocabulary
// growth curve over the concatenated gram stream.
SequenceStats gram_stats(const std::vector<TokenSequence>& streams, int n,
                         bool exclude_marker_windows, const FlattenScheme* scheme,
                         std::size_t growth_samples) {
    std::vector<Gram> grams;
    for (const auto& stream : streams) {
        std::vector<Gram> g = (exclude_marker_windows && scheme)
                                  ? extract_ngrams_excluding_markers(stream, n, *scheme)
                                  : extract_ngrams(stream, n);
        grams.insert(grams.end(), std::make_move_iterator(g.begin()),
                     std::make_move_iterator(g.end()));
    }
    if (grams.empty())
        throw NumericError("no " + std::to_string(n) + "-grams (streams shorter than n?)");

    SequenceStats stats;
    stats.dist = count_frequencies(grams);
    stats.growth = vocab_growth(encode_grams_as_ids(grams), growth_samples);
    return stats;
}

json analyze_streams(AtomicOutputDir& outdir, const std::string& config_id,
                     const std::vector<TokenSequence>& streams, const std::vector<int>& ns,
                     const RunConfig& config, const FlattenScheme* scheme) {
    json by_n = json::array();
    for (int n : ns) {
        const std::string where = "config '" + config_id + "' n=" + std::to_string(n);
        const SequenceStats stats = with_context(where, [&] {
            return gram_stats(streams, n, config.exclude_marker_windows, scheme,
                              config.growth_samples);
        });
        const PowerLawFit zipf = with_context(where + " zipf fit", [&] {
            return select_xmin(stats.dist.frequencies(), XminOptions{config.min_tail});
        });
        const HeapsFit heaps = with_context(where + " heaps fit", [&] {
            return fit_heaps(stats.growth);
        });
        const CodingStats coding = with_context(where + " coding stats", [&] {
            return coding_stats(stats.dist.frequencies());
        });

        const fs::path dir = fs::path("configs") / config_id / ("n" + std::to_string(n));
        {
            std::ostringstream csv;
            write_rank_frequency_csv(stats.dist, csv);
            write_text_file(outdir.path(dir / "rank_frequency.csv"), csv.str());
        }
        {
            std::ostringstream csv;
            write_growth_curve_csv(stats.growth, csv);
            write_text_file(outdir.path(dir / "growth_curve.csv"), csv.str());
        }
        write_text_file(outdir.path(dir / "zipf.json"), to_json(zipf).dump(2) + "\n");
        write_text_file(outdir.path(dir / "heaps.json"), to_json(heaps).dump(2) + "\n");
        write_text_file(outdir.path(dir / "coding.json"), to_json(coding).dump(2) + "\n");

        by_n.push_back(json{{"n", n},
                            {"grams", stats.dist.total_mass},
                            {"zipf", to_json(zipf)},
                            {"heaps", to_json(heaps)},
                            {"coding", to_json(coding)}});
    }
    return by_n;
}

json settings_json(const RunConfig& config, const std::string& mode) {
    return json{{"mode", mode},
                {"n_values", clean_n_values(config.n_values)},
                {"dedup", config.dedup},
                {"exclude_marker_windows", config.exclude_marker_windows},
                {"min_tail", config.min_tail},
                {"growth_samples", config.growth_samples}};
}

void write_report_csv(AtomicOutputDir& outdir, const json& configs) {
    std::ostringstream csv;
    csv << "config_id,n,statistic,value\n";
    for (const auto& [config_id, entry] : configs.items()) {
        for (const auto& row : entry.at("by_n")) {
            const int n = row.at("n").get<int>();
            const auto emit = [&](const char* stat, const json& value) {
                csv << config_id << ',' << n << ',' << stat << ','
                    << format_number(value.get<double>()) << '\n';
            };
            emit("alpha", row.at("zipf").at("alpha"));
            emit("eta", row.at("zipf").at("eta"));
            emit("ks", row.at("zipf").at("ks"));
            emit("K", row.at("heaps").at("K"));
            emit("beta", row.at("heaps").at("beta"));
            emit("H", row.at("coding").at("H"));
            emit("L", row.at("coding").at("L"));
            emit("R", row.at("coding").at("R"));
            emit("bit_reduction", row.at("coding").at("bit_reduction"));
        }
    }
    write_text_file(outdir.path("report.csv"), csv.str());
}

}  // namespace

void run_analyze(const RunConfig& config) {
    const std::vector<int> ns = clean_n_values(config.n_values);
    const bool codec_mode = !config.manifest.empty();
    const bool text_mode = !config.text.empty();
    if (codec_mode == text_mode)
        throw ValidationError("analyze needs exactly one of --manifest or --text");

    AtomicOutputDir outdir(config.out);
    json configs = json::object();

    if (codec_mode) {
        const LoadedCorpus corpus = load_codec_utterances(config.manifest);
        if (corpus.utterances.empty())
            throw ValidationError("no utterances in manifest " + config.manifest.string());

        for (const CodecConfig& cfg : corpus.configs) {
            const FlattenScheme scheme{cfg.n_dims, static_cast<TokenId>(cfg.codebook_size)};

            std::vector<const CodecUtterance*> utts;
            for (const auto& u : corpus.utterances)
                if (u.config_id == cfg.config_id) utts.push_back(&u);

            std::vector<TokenSequence> streams;
            streams.reserve(utts.size());
            std::size_t total_frames = 0;
            std::size_t flat_tokens = 0;
            for (const CodecUtterance* u : utts) {
                total_frames += u->n_frames();
                streams.push_back(with_context("utterance '" + u->utterance_id + "' flatten", [&] {
                    return flatten(*u, scheme, config.dedup);
                }));
                flat_tokens += streams.back().items.size();
            }

            json entry{{"n_dims", cfg.n_dims},
                       {"codebook_size", cfg.codebook_size},
                       {"n_utterances", utts.size()},
                       {"total_frames", total_frames},
                       {"flat_tokens", flat_tokens}};
            entry["by_n"] = analyze_streams(outdir, cfg.config_id, streams, ns, config, &scheme);

            // Pooled view: all dimensions stacked into one codebook-sized
            // distribution, counts divided by n_dims.
            const std::string where = "config '" + cfg.config_id + "' mean_pooled";
            std::vector<CodecUtterance> pooled_input;
            pooled_input.reserve(utts.size());
            for (const CodecUtterance* u : utts)
                pooled_input.push_back(config.dedup ? dedup_rows(*u) : *u);
            const std::vector<double> pooled = with_context(where, [&] {
                return mean_token_counts(pooled_input, scheme);
            });
            const RankedDistribution pooled_dist = distribution_from_counts(pooled);
            const PowerLawFit pooled_zipf = with_context(where + " zipf fit", [&] {
                return select_xmin(pooled_dist.frequencies(), XminOptions{config.min_tail});
            });
            const CodingStats pooled_coding = with_context(where + " coding stats", [&] {
                return coding_stats(pooled);
            });

            const fs::path dir = fs::path("configs") / cfg.config_id / "mean_pooled";
            {
                std::ostringstream csv;
                write_rank_frequency_csv(pooled_dist, csv);
                write_text_file(outdir.path(dir / "rank_frequency.csv"), csv.str());
            }
            {
                std::ostringstream csv;
                write_code_table_csv(build_huffman(pooled), csv);
                write_text_file(outdir.path(dir / "code_table.csv"), csv.str());
            }
            write_text_file(outdir.path(dir / "zipf.json"), to_json(pooled_zipf).dump(2) + "\n");
            write_text_file(outdir.path(dir / "coding.json"),
                            to_json(pooled_coding).dump(2) + "\n");
            entry["mean_pooled"] = json{{"zipf", to_json(pooled_zipf)},
                                        {"coding", to_json(pooled_coding)},
                                        {"total_mass", pooled_dist.total_mass}};

            configs[cfg.config_id] = std::move(entry);
        }
    } else {
        auto [seq, vocab] = tokenize_text(config.text);
        if (seq.items.empty())
            throw ValidationError("no tokens in text file " + config.text.string());
        std::vector<TokenSequence> streams;
        streams.push_back(std::move(seq));

        json entry{{"vocabulary", vocab.size()}, {"tokens", streams.front().items.size()}};
        entry["by_n"] = analyze_streams(outdir, kTextConfigId, streams, ns, config, nullptr);
        configs[kTextConfigId] = std::move(entry);
    }

    json report{{"schema", "tokenlaws-report-v1"},
                {"settings", settings_json(config, codec_mode ? "codec" : "text")},
                {"configs", configs}};
    write_text_file(outdir.path("report.json"), report.dump(2) + "\n");
    if (config.format == "csv") write_report_csv(outdir, configs);

    outdir.commit();
}

namespace {

std::vector<StatPoint> stat_points_from_report(const json& report) {
    std::vector<StatPoint> points;
    for (const auto& [config_id, entry] : report.at("configs").items()) {
        for (const auto& row : entry.at("by_n")) {
            const int n = row.at("n").get<int>();
            const auto add = [&](Statistic s, const json& v) {
                points.push_back({config_id, n, s, v.get<double>()});
            };
            add(Statistic::alpha, row.at("zipf").at("alpha"));
            add(Statistic::eta, row.at("zipf").at("eta"));
            add(Statistic::ks, row.at("zipf").at("ks"));
            add(Statistic::K, row.at("heaps").at("K"));
            add(Statistic::beta, row.at("heaps").at("beta"));
            add(Statistic::H, row.at("coding").at("H"));
            add(Statistic::L, row.at("coding").at("L"));
            add(Statistic::R, row.at("coding").at("R"));
            add(Statistic::bit_reduction, row.at("coding").at("bit_reduction"));
        }
    }
    return points;
}

json load_report(const fs::path& report_path) {
    fs::path p = report_path;
    if (fs::is_directory(p)) p /= "report.json";
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ValidationError("cannot open analyze report: " + p.string());
    json report = json::parse(in, nullptr, false);
    if (report.is_discarded() || !report.contains("configs"))
        throw ValidationError("not an analyze report: " + p.string());
    return report;
}

}  // namespace

void run_correlate(const RunConfig& config) {
    if (config.report.empty())
        throw ValidationError("correlate needs --report (analyze output dir or report.json)");
    if (config.benchmarks.empty()) throw ValidationError("correlate needs --benchmarks CSV");

    const json report = load_report(config.report);
    const std::vector<StatPoint> stats = stat_points_from_report(report);
    const std::vector<BenchmarkRecord> records = load_benchmarks(config.benchmarks);
    if (records.empty())
        throw ValidationError("no benchmark records in " + config.benchmarks.string());

    std::set<int> available;
    for (const auto& p : stats) available.insert(p.n);
    std::vector<int> ns;
    for (int n : clean_n_values(config.n_values))
        if (available.count(n)) ns.push_back(n);
    if (ns.empty())
        throw ValidationError("none of the requested n values are present in the report");

    std::set<Metric> metrics;
    for (const auto& r : records) metrics.insert(r.metric);

    static constexpr Statistic kAllStats[] = {
        Statistic::alpha, Statistic::eta, Statistic::ks,
        Statistic::K,     Statistic::beta, Statistic::H,
        Statistic::L,     Statistic::R,    Statistic::bit_reduction};

    AtomicOutputDir outdir(config.out);
    json reports = json::array();
    std::ostringstream flat;
    flat << "statistic,metric,n,r,slope,intercept,n_pairs\n";
    for (Statistic s : kAllStats) {
        for (Metric m : metrics) {
            for (int n : ns) {
                const std::string where = std::string("correlate ") + statistic_name(s) + " vs " +
                                          metric_name(m) + " n=" + std::to_string(n);
                const CorrelationReport rep = with_context(where, [&] {
                    return correlate_metric(stats, records, s, m, n);
                });
                reports.push_back(to_json(rep));

                const std::string stem = std::string(statistic_name(s)) + "_" + metric_name(m) +
                                         "_n" + std::to_string(n);
                std::ostringstream csv;
                write_scatter_csv(rep, csv);
                write_text_file(outdir.path(fs::path("scatter") / (stem + ".csv")), csv.str());
                write_text_file(outdir.path(fs::path("scatter") / (stem + ".json")),
                                to_json(rep).dump(2) + "\n");
                flat << statistic_name(s) << ',' << metric_name(m) << ',' << n << ','
                     << format_number(rep.r) << ',' << format_number(rep.line.slope) << ','
                     << format_number(rep.line.intercept) << ',' << rep.pairs.size() << '\n';
            }
        }
    }
    write_text_file(outdir.path("correlations.json"), reports.dump(2) + "\n");
    if (config.format == "csv") write_text_file(outdir.path("correlations.csv"), flat.str());
    outdir.commit();
}

void run_synth(const RunConfig& config) {
    config.generator.validate();
    if (config.synth_utterances < 1)
        throw ValidationError("synth: need at least one utterance");
    if (config.synth_config_id.empty() ||
        config.synth_config_id.find_first_of("/\\,") != std::string::npos)
        throw ValidationError("synth: config id must be non-empty and free of path separators");

    AtomicOutputDir outdir(config.out);
    std::vector<ManifestEntry> entries;
    for (std::uint32_t i = 0; i < config.synth_utterances; ++i) {
        GeneratorSpec spec = config.generator;
        spec.seed = config.generator.seed + i;  // one independent stream per utterance
        const TokenSequence seq = sample(spec);

        char name[32];
        std::snprintf(name, sizeof(name), "u%04u.json", i);
        CodecUtterance utt;
        utt.utterance_id = config.synth_config_id + "-" + std::to_string(i);
        utt.config_id = config.synth_config_id;
        utt.codebook_size = std::max<int>(2, static_cast<int>(spec.vocab));
        utt.tokens.push_back(seq.items);
        write_utterance(utt, outdir.path(name));
        entries.push_back({name, config.synth_config_id});
    }
    {
        std::ostringstream manifest;
        for (const auto& e : entries)
            manifest << json{{"path", e.path}, {"config_id", e.config_id}}.dump() << '\n';
        write_text_file(outdir.path("manifest.jsonl"), manifest.str());
    }
    outdir.commit();
}

void run_ngram_dump(const RunConfig& config, std::ostream& stdout_stream) {
    const int n = config.dump_n;
    if (n < 1) throw ValidationError("ngram-dump: --n must be >= 1");
    const bool codec_mode = !config.manifest.empty();
    const bool text_mode = !config.text.empty();
    if (codec_mode == text_mode)
        throw ValidationError("ngram-dump needs exactly one of --manifest or --text");

    struct Dump {
        std::string config_id;
        RankedDistribution dist;
    };
    std::vector<Dump> dumps;
    if (codec_mode) {
        const LoadedCorpus corpus = load_codec_utterances(config.manifest);
        if (corpus.utterances.empty())
            throw ValidationError("no utterances in manifest " + config.manifest.string());
        for (const CodecConfig& cfg : corpus.configs) {
            const FlattenScheme scheme{cfg.n_dims, static_cast<TokenId>(cfg.codebook_size)};
            std::vector<Gram> grams;
            for (const auto& u : corpus.utterances) {
                if (u.config_id != cfg.config_id) continue;
                const TokenSequence flat = flatten(u, scheme, config.dedup);
                std::vector<Gram> g = config.exclude_marker_windows
                                          ? extract_ngrams_excluding_markers(flat, n, scheme)
                                          : extract_ngrams(flat, n);
                grams.insert(grams.end(), std::make_move_iterator(g.begin()),
                             std::make_move_iterator(g.end()));
            }
            dumps.push_back({cfg.config_id, count_frequencies(grams)});
        }
    } else {
        auto [seq, vocab] = tokenize_text(config.text);
        const std::vector<Gram> grams = extract_ngrams(seq, n);
        dumps.push_back({kTextConfigId, count_frequencies(grams)});
    }

    if (config.out.empty()) {
        if (dumps.size() > 1)
            throw ValidationError("ngram-dump: multiple configs; pass --out DIR");
        write_rank_frequency_csv(dumps.front().dist, stdout_stream);
        return;
    }
    AtomicOutputDir outdir(config.out);
    for (const auto& d : dumps) {
        std::ostringstream csv;
        write_rank_frequency_csv(d.dist, csv);
        write_text_file(
            outdir.path(d.config_id + "_n" + std::to_string(n) + "_rank_frequency.csv"),
            csv.str());
    }
    outdir.commit();
}

}  // namespace tokenlaws
