#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tokenlaws/pipeline.hpp"

namespace {

using tokenlaws::RunConfig;

void add_common_pipeline_flags(CLI::App* cmd, RunConfig& run) {
    cmd->add_flag("--dedup,!--no-dedup", run.dedup,
                  "collapse runs of equal adjacent tokens per dimension (default on)");
    cmd->add_flag("--exclude-marker-windows", run.exclude_marker_windows,
                  "drop n-gram windows containing dimension start/end markers");
}

int dispatch(const std::function<void()>& fn) {
    try {
        fn();
        return 0;
    } catch (const tokenlaws::NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const tokenlaws::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "tokenlaws — statistical-law analysis of discrete token sequences\n"
        "(Zipf and Heaps fits, entropy/Huffman redundancy, benchmark correlation)"};
    app.require_subcommand(1);

    RunConfig run;

    auto* analyze = app.add_subcommand(
        "analyze", "fit Zipf, Heaps and coding statistics per config and gram order");
    analyze->add_option("--manifest", run.manifest, "JSON Lines manifest of codec utterances");
    analyze->add_option("--text", run.text, "text file for the word 1-gram baseline");
    analyze->add_option("--n", run.n_values, "gram orders (e.g. --n 2,3,4,6)")
        ->delimiter(',');
    add_common_pipeline_flags(analyze, run);
    analyze->add_option("--min-tail", run.min_tail, "minimum power-law tail size (default 10)");
    analyze->add_option("--growth-samples", run.growth_samples,
                        "growth-curve sample positions (default 200)");
    analyze->add_option("--out", run.out, "output directory")->required();
    analyze->add_option("--format", run.format, "report format: json or csv (csv adds report.csv)")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* correlate = app.add_subcommand(
        "correlate", "correlate analyze statistics with WER/CER/UTMOS benchmarks");
    correlate->add_option("--report", run.report, "analyze output dir (or report.json)")
        ->required();
    correlate->add_option("--benchmarks", run.benchmarks, "CSV config_id,metric,value")
        ->required();
    correlate->add_option("--n", run.n_values, "restrict to these gram orders")->delimiter(',');
    correlate->add_option("--out", run.out, "output directory")->required();
    correlate->add_option("--format", run.format,
                          "report format: json or csv (csv adds correlations.csv)")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* synth = app.add_subcommand("synth", "generate a deterministic synthetic token corpus");
    std::string kind = "zipf";
    std::string markov_file;
    synth->add_option("--kind", kind, "generator: zipf, uniform or markov")
        ->check(CLI::IsMember({"zipf", "uniform", "markov"}));
    synth->add_option("--vocab", run.generator.vocab, "vocabulary size")->required();
    synth->add_option("--count", run.generator.count, "tokens per utterance")->required();
    synth->add_option("--seed", run.generator.seed, "base RNG seed (default 0)");
    synth->add_option("--s", run.generator.zipf_exponent, "zipf exponent (default 1.0)");
    synth->add_option("--markov", markov_file,
                      "JSON file with a row-stochastic transition matrix (markov kind)");
    synth->add_option("--config-id", run.synth_config_id, "config id to stamp (default SYN)");
    synth->add_option("--utterances", run.synth_utterances, "utterance count (default 1)");
    synth->add_option("--out", run.out, "output directory")->required();

    auto* dump = app.add_subcommand("ngram-dump", "dump rank,frequency CSV for one gram order");
    dump->add_option("--manifest", run.manifest, "JSON Lines manifest of codec utterances");
    dump->add_option("--text", run.text, "text file input");
    dump->add_option("--n", run.dump_n, "gram order (default 1)");
    add_common_pipeline_flags(dump, run);
    dump->add_option("--out", run.out, "output directory (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) return dispatch([&] { tokenlaws::run_analyze(run); });
    if (correlate->parsed()) return dispatch([&] { tokenlaws::run_correlate(run); });
    if (synth->parsed()) {
        return dispatch([&] {
            run.generator.kind = tokenlaws::parse_generator_kind(kind);
            if (run.generator.kind == tokenlaws::GeneratorKind::markov) {
                if (markov_file.empty())
                    throw tokenlaws::ValidationError("markov kind needs --markov FILE");
                std::ifstream in(markov_file, std::ios::binary);
                if (!in)
                    throw tokenlaws::ValidationError("cannot open transition matrix: " +
                                                     markov_file);
                nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
                if (j.is_discarded() || !j.is_array())
                    throw tokenlaws::ValidationError(
                        "transition matrix must be a JSON array of rows");
                run.generator.transition = j.get<std::vector<std::vector<double>>>();
            }
            tokenlaws::run_synth(run);
        });
    }
    if (dump->parsed()) return dispatch([&] { tokenlaws::run_ngram_dump(run, std::cout); });
    return 1;
}
