#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "tokenlaws/corpus_io.hpp"
#include "tokenlaws/pipeline.hpp"
#include "tokenlaws/synth.hpp"

using namespace tokenlaws;
using nlohmann::json;
using testutil::TempDir;
using testutil::write_file;

namespace {

// Writes a small synthetic corpus: one zipf utterance per (config_id, s).
void write_zipf_corpus(const std::filesystem::path& dir,
                       const std::vector<std::pair<std::string, double>>& configs,
                       std::uint32_t vocab, std::uint64_t count, std::uint64_t seed) {
    std::vector<ManifestEntry> entries;
    int i = 0;
    for (const auto& [id, s] : configs) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::zipf;
        spec.vocab = vocab;
        spec.count = count;
        spec.seed = seed + i;
        spec.zipf_exponent = s;
        const TokenSequence seq = sample_zipf(spec);

        CodecUtterance utt;
        utt.utterance_id = id + "-0";
        utt.config_id = id;
        utt.codebook_size = static_cast<int>(vocab);
        utt.tokens.push_back(seq.items);
        const std::string name = "u" + std::to_string(i) + ".json";
        write_utterance(utt, dir / name);
        entries.push_back({name, id});
        ++i;
    }
    write_manifest(entries, dir / "manifest.jsonl");
}

json read_json(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return json::parse(in);
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("analyze emits the full report tree for a codec corpus") {
    TempDir dir("analyze");
    write_zipf_corpus(dir.path(), {{"Z1", 1.0}}, 512, 20000, 1000);

    RunConfig run;
    run.manifest = dir.path() / "manifest.jsonl";
    run.out = dir.path() / "out";
    run.n_values = {1, 2, 3};
    run_analyze(run);

    const json report = read_json(run.out / "report.json");
    CHECK(report.at("settings").at("mode") == "codec");
    const json& cfg = report.at("configs").at("Z1");
    CHECK(cfg.at("n_dims") == 1);
    CHECK(cfg.at("codebook_size") == 512);
    REQUIRE(cfg.at("by_n").size() == 3);

    // zipf corpus at s=1.0: fitted alpha lands near the ideal value of 2
    const json& n1 = cfg.at("by_n").at(0);
    CHECK(n1.at("n") == 1);
    const double alpha = n1.at("zipf").at("alpha").get<double>();
    CHECK(alpha > 1.8);
    CHECK(alpha < 2.2);
    const double eta = n1.at("zipf").at("eta").get<double>();
    CHECK(eta == doctest::Approx(alpha - 1.0).epsilon(1e-15));

    for (const char* f : {"rank_frequency.csv", "growth_curve.csv", "zipf.json", "heaps.json",
                          "coding.json"}) {
        CHECK(std::filesystem::exists(run.out / "configs" / "Z1" / "n1" / f));
        CHECK(std::filesystem::exists(run.out / "configs" / "Z1" / "n3" / f));
    }
    for (const char* f : {"rank_frequency.csv", "zipf.json", "coding.json", "code_table.csv"}) {
        CHECK(std::filesystem::exists(run.out / "configs" / "Z1" / "mean_pooled" / f));
    }
    CHECK(!std::filesystem::exists(run.out.string() + ".tmp"));
}

TEST_CASE("analyze in text mode reproduces the word baseline path") {
    TempDir dir("text");
    // skewed word distribution so every fit has something to chew on
    GeneratorSpec words;
    words.kind = GeneratorKind::zipf;
    words.vocab = 300;
    words.count = 20000;
    words.seed = 5;
    words.zipf_exponent = 1.0;
    std::ostringstream text;
    for (TokenId t : sample_zipf(words).items) text << 'w' << t << ' ';
    write_file(dir.path() / "corpus.txt", text.str());

    RunConfig run;
    run.text = dir.path() / "corpus.txt";
    run.out = dir.path() / "out";
    run.n_values = {1, 2};
    run_analyze(run);

    const json report = read_json(run.out / "report.json");
    CHECK(report.at("settings").at("mode") == "text");
    CHECK(report.at("configs").contains("GT"));
    CHECK(report.at("configs").at("GT").at("by_n").size() == 2);
    CHECK(std::filesystem::exists(run.out / "configs" / "GT" / "n1" / "rank_frequency.csv"));
}

TEST_CASE("analyze rejects an empty manifest without leaving outputs") {
    TempDir dir("empty");
    write_file(dir.path() / "manifest.jsonl", "");
    RunConfig run;
    run.manifest = dir.path() / "manifest.jsonl";
    run.out = dir.path() / "out";
    try {
        run_analyze(run);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("no utterances") != std::string::npos);
    }
    CHECK(!std::filesystem::exists(run.out));
    CHECK(!std::filesystem::exists(run.out.string() + ".tmp"));
}

TEST_CASE("analyze is deterministic byte for byte") {
    TempDir dir("determinism");
    write_zipf_corpus(dir.path(), {{"D1", 1.0}, {"D2", 0.8}}, 256, 5000, 77);

    RunConfig run;
    run.manifest = dir.path() / "manifest.jsonl";
    run.n_values = {1, 2};
    run.out = dir.path() / "out1";
    run_analyze(run);
    run.out = dir.path() / "out2";
    run_analyze(run);

    std::vector<std::filesystem::path> rel;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir.path() / "out1"))
        if (e.is_regular_file()) rel.push_back(std::filesystem::relative(e.path(), dir.path() / "out1"));
    REQUIRE(!rel.empty());
    for (const auto& r : rel) {
        CHECK(testutil::read_file(dir.path() / "out1" / r) ==
              testutil::read_file(dir.path() / "out2" / r));
    }
}

TEST_CASE("correlate joins analyze output with benchmarks") {
    TempDir dir("correlate");
    write_zipf_corpus(dir.path(),
                      {{"S1", 1.3}, {"S2", 1.15}, {"S3", 1.0}, {"S4", 0.85}, {"S5", 0.7}},
                      512, 20000, 4242);

    RunConfig analyze;
    analyze.manifest = dir.path() / "manifest.jsonl";
    analyze.out = dir.path() / "stats";
    analyze.n_values = {1};
    run_analyze(analyze);

    // metric constructed as an exact linear function of the fitted alpha
    const json report = read_json(analyze.out / "report.json");
    std::vector<BenchmarkRecord> bench;
    for (const auto& [id, cfg] : report.at("configs").items()) {
        const double alpha = cfg.at("by_n").at(0).at("zipf").at("alpha").get<double>();
        bench.push_back({id, Metric::WER, 0.05 * alpha});
    }
    write_benchmarks(bench, dir.path() / "bench.csv");

    RunConfig correlate;
    correlate.report = analyze.out;
    correlate.benchmarks = dir.path() / "bench.csv";
    correlate.out = dir.path() / "corr";
    correlate.n_values = {1};
    run_correlate(correlate);

    const json reports = read_json(correlate.out / "correlations.json");
    bool saw_alpha_wer = false;
    for (const auto& rep : reports) {
        if (rep.at("statistic") == "alpha" && rep.at("metric") == "WER") {
            saw_alpha_wer = true;
            CHECK(rep.at("r").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(rep.at("slope").get<double>() == doctest::Approx(0.05).epsilon(1e-9));
            CHECK(rep.at("pairs").size() == 5);
        }
    }
    CHECK(saw_alpha_wer);
    CHECK(std::filesystem::exists(correlate.out / "scatter" / "alpha_WER_n1.csv"));
}

TEST_CASE("a 15-config suite yields 15-point scatter files per metric") {
    TempDir dir("correlate-15");
    std::vector<std::pair<std::string, double>> configs;
    std::vector<BenchmarkRecord> bench;
    for (int i = 0; i < 15; ++i) {
        const std::string id = "C" + std::to_string(i);
        configs.emplace_back(id, 0.7 + 0.05 * i);
        bench.push_back({id, Metric::UTMOS, 1.5 + 0.2 * i});
        bench.push_back({id, Metric::WER, 0.05 + 0.01 * i});
    }
    write_zipf_corpus(dir.path(), configs, 128, 3000, 600);
    write_benchmarks(bench, dir.path() / "bench.csv");

    RunConfig analyze;
    analyze.manifest = dir.path() / "manifest.jsonl";
    analyze.out = dir.path() / "stats";
    analyze.n_values = {1};
    run_analyze(analyze);

    RunConfig correlate;
    correlate.report = analyze.out;
    correlate.benchmarks = dir.path() / "bench.csv";
    correlate.out = dir.path() / "corr";
    correlate.n_values = {1};
    run_correlate(correlate);

    for (const char* metric : {"UTMOS", "WER"}) {
        const std::string csv = testutil::read_file(
            correlate.out / "scatter" / (std::string("alpha_") + metric + "_n1.csv"));
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 16);  // header + 15 points
    }
}

TEST_CASE("marker-window exclusion drops the windows spanning markers") {
    TempDir dir("markers");
    write_zipf_corpus(dir.path(), {{"W1", 1.0}}, 64, 2000, 14);

    RunConfig run;
    run.manifest = dir.path() / "manifest.jsonl";
    run.n_values = {2};
    run.dedup = false;
    run.out = dir.path() / "with";
    run_analyze(run);
    run.exclude_marker_windows = true;
    run.out = dir.path() / "without";
    run_analyze(run);

    const auto grams_at = [&](const std::filesystem::path& out) {
        return read_json(out / "report.json")
            .at("configs").at("W1").at("by_n").at(0).at("grams").get<double>();
    };
    // one 1-dim utterance: windows touching the start/end markers number 2
    CHECK(grams_at(dir.path() / "with") - grams_at(dir.path() / "without") == 2.0);
}

TEST_CASE("correlate fails cleanly on a missing benchmark file") {
    TempDir dir("correlate-missing");
    write_zipf_corpus(dir.path(), {{"M1", 1.0}}, 256, 5000, 9);
    RunConfig analyze;
    analyze.manifest = dir.path() / "manifest.jsonl";
    analyze.out = dir.path() / "stats";
    analyze.n_values = {1};
    run_analyze(analyze);

    RunConfig correlate;
    correlate.report = analyze.out;
    correlate.benchmarks = dir.path() / "nope.csv";
    correlate.out = dir.path() / "corr";
    CHECK_THROWS_AS(run_correlate(correlate), ValidationError);
    CHECK(!std::filesystem::exists(correlate.out));
}

TEST_CASE("correlate reports disjoint config sets as insufficient pairs") {
    TempDir dir("correlate-disjoint");
    write_zipf_corpus(dir.path(), {{"A1", 1.0}, {"A2", 0.9}, {"A3", 0.8}}, 256, 5000, 11);
    RunConfig analyze;
    analyze.manifest = dir.path() / "manifest.jsonl";
    analyze.out = dir.path() / "stats";
    analyze.n_values = {1};
    run_analyze(analyze);

    write_file(dir.path() / "bench.csv",
               "config_id,metric,value\nB1,WER,0.1\nB2,WER,0.2\nB3,WER,0.3\n");
    RunConfig correlate;
    correlate.report = analyze.out;
    correlate.benchmarks = dir.path() / "bench.csv";
    correlate.out = dir.path() / "corr";
    CHECK_THROWS_AS(run_correlate(correlate), NumericError);
}

TEST_CASE("synth writes a corpus that loads and analyzes cleanly") {
    TempDir dir("synth");
    RunConfig synth;
    synth.generator.kind = GeneratorKind::zipf;
    synth.generator.vocab = 1024;
    synth.generator.count = 5000;
    synth.generator.seed = 42;
    synth.generator.zipf_exponent = 1.0;
    synth.synth_config_id = "SYN";
    synth.synth_utterances = 3;
    synth.out = dir.path() / "corpus";
    run_synth(synth);

    const LoadedCorpus corpus = load_codec_utterances(synth.out / "manifest.jsonl");
    CHECK(corpus.utterances.size() == 3);
    CHECK(corpus.configs.size() == 1);
    CHECK(corpus.configs[0].config_id == "SYN");

    // byte-identical regeneration
    const std::string first = testutil::read_file(synth.out / "u0000.json");
    synth.out = dir.path() / "corpus2";
    run_synth(synth);
    CHECK(testutil::read_file(synth.out / "u0000.json") == first);

    RunConfig analyze;
    analyze.manifest = dir.path() / "corpus" / "manifest.jsonl";
    analyze.out = dir.path() / "out";
    analyze.n_values = {2};
    run_analyze(analyze);
    CHECK(std::filesystem::exists(analyze.out / "report.json"));
}

TEST_CASE("synth validates the generator before writing anything") {
    TempDir dir("synth-bad");
    RunConfig synth;
    synth.generator.kind = GeneratorKind::markov;
    synth.generator.vocab = 2;
    synth.generator.count = 10;
    synth.generator.transition = {{0.9, 0.2}, {0.5, 0.5}};  // bad row sum
    synth.out = dir.path() / "corpus";
    CHECK_THROWS_AS(run_synth(synth), ValidationError);
    CHECK(!std::filesystem::exists(synth.out));
    CHECK(!std::filesystem::exists(synth.out.string() + ".tmp"));
}

TEST_CASE("ngram-dump writes rank,frequency CSVs") {
    TempDir dir("dump");
    write_zipf_corpus(dir.path(), {{"G1", 1.0}}, 64, 500, 3);
    RunConfig dump;
    dump.manifest = dir.path() / "manifest.jsonl";
    dump.dump_n = 2;

    std::ostringstream out;
    run_ngram_dump(dump, out);
    const std::string csv = out.str();
    CHECK(csv.rfind("rank,frequency\n", 0) == 0);
    CHECK(csv.find("1,") != std::string::npos);

    dump.out = dir.path() / "dumps";
    std::ostringstream ignored;
    run_ngram_dump(dump, ignored);
    CHECK(std::filesystem::exists(dump.out / "G1_n2_rank_frequency.csv"));
}

}  // TEST_SUITE
