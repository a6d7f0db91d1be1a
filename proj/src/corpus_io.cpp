#include "tokenlaws/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tokenlaws {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::error_code ec;
        const auto abs = std::filesystem::absolute(path, ec);
        throw ValidationError("cannot open file: " + (ec ? path : abs).string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("malformed JSON in " + what);
    return j;
}

// Config IDs name output files and directories, so they must be sane path
// components.
void validate_config_id(const std::string& id, const std::string& source) {
    if (id.empty() || id == "." || id == ".." ||
        id.find_first_of("/\\\n\r,") != std::string::npos)
        throw ValidationError(source + ": config_id '" + id +
                              "' must be non-empty and free of path separators");
}

CodecUtterance utterance_from_json(const json& j, const std::string& source) {
    if (!j.is_object() || !j.contains("utterance_id") || !j.contains("config_id") ||
        !j.contains("codebook_size") || !j.contains("tokens"))
        throw ValidationError("utterance file " + source +
                              ": expected keys utterance_id, config_id, codebook_size, tokens");
    CodecUtterance utt;
    try {
        utt.utterance_id = j.at("utterance_id").get<std::string>();
        utt.config_id = j.at("config_id").get<std::string>();
        utt.codebook_size = j.at("codebook_size").get<int>();
    } catch (const json::exception& e) {
        throw ValidationError("utterance file " + source + ": bad field type (" + e.what() + ")");
    }
    if (utt.utterance_id.empty())
        throw ValidationError("utterance file " + source + ": utterance_id must be non-empty");
    validate_config_id(utt.config_id, source);
    if (utt.codebook_size < 2)
        throw ValidationError("utterance '" + utt.utterance_id + "': codebook_size must be >= 2");

    const json& rows = j.at("tokens");
    if (!rows.is_array() || rows.empty())
        throw ValidationError("utterance '" + utt.utterance_id +
                              "': tokens must be a non-empty array of rows");
    for (std::size_t d = 0; d < rows.size(); ++d) {
        const json& row = rows[d];
        if (!row.is_array())
            throw ValidationError("utterance '" + utt.utterance_id + "' row " + std::to_string(d) +
                                  ": expected an array of token IDs");
        std::vector<TokenId> out;
        out.reserve(row.size());
        for (const json& v : row) {
            if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
                throw ValidationError("utterance '" + utt.utterance_id + "' row " +
                                      std::to_string(d) + ": tokens must be non-negative integers");
            const auto t = v.get<std::int64_t>();
            if (t >= utt.codebook_size)
                throw ValidationError("utterance '" + utt.utterance_id + "' row " +
                                      std::to_string(d) + ": token " + std::to_string(t) +
                                      " >= codebook_size " + std::to_string(utt.codebook_size));
            out.push_back(static_cast<TokenId>(t));
        }
        utt.tokens.push_back(std::move(out));
    }
    for (std::size_t d = 1; d < utt.tokens.size(); ++d) {
        if (utt.tokens[d].size() != utt.tokens[0].size())
            throw ValidationError("utterance '" + utt.utterance_id + "' row " + std::to_string(d) +
                                  ": ragged token matrix (length " +
                                  std::to_string(utt.tokens[d].size()) + " vs " +
                                  std::to_string(utt.tokens[0].size()) + ")");
    }
    return utt;
}

json utterance_to_json(const CodecUtterance& utt) {
    json rows = json::array();
    for (const auto& row : utt.tokens) rows.push_back(row);
    return json{{"utterance_id", utt.utterance_id},
                {"config_id", utt.config_id},
                {"codebook_size", utt.codebook_size},
                {"tokens", std::move(rows)}};
}

}  // namespace

LoadedCorpus load_codec_utterances(const std::filesystem::path& manifest_path) {
    const std::string text = read_file(manifest_path);
    const auto base_dir = manifest_path.parent_path();

    std::vector<ManifestEntry> entries;
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        json j = parse_json(line, manifest_path.string() + " line " + std::to_string(line_no));
        if (!j.is_object() || !j.contains("path") || !j.contains("config_id") ||
            !j.at("path").is_string() || !j.at("config_id").is_string())
            throw ValidationError("manifest " + manifest_path.string() + " line " +
                                  std::to_string(line_no) +
                                  ": expected {\"path\": str, \"config_id\": str}");
        entries.push_back({j.at("path").get<std::string>(), j.at("config_id").get<std::string>()});
    }

    LoadedCorpus corpus;
    std::map<std::string, std::size_t> config_index;
    for (const auto& entry : entries) {
        std::filesystem::path p(entry.path);
        if (p.is_relative()) p = base_dir / p;
        CodecUtterance utt = utterance_from_json(parse_json(read_file(p), p.string()), p.string());
        if (utt.config_id != entry.config_id)
            throw ValidationError("utterance '" + utt.utterance_id + "': config_id '" +
                                  utt.config_id + "' does not match manifest entry '" +
                                  entry.config_id + "'");

        auto [it, inserted] = config_index.emplace(utt.config_id, corpus.configs.size());
        if (inserted) {
            CodecConfig cfg;
            cfg.config_id = utt.config_id;
            cfg.n_dims = utt.n_dims();
            cfg.codebook_size = utt.codebook_size;
            corpus.configs.push_back(std::move(cfg));
        } else {
            const CodecConfig& cfg = corpus.configs[it->second];
            if (cfg.n_dims != utt.n_dims() || cfg.codebook_size != utt.codebook_size)
                throw ValidationError("utterance '" + utt.utterance_id + "': config '" +
                                      utt.config_id +
                                      "' dimensions/codebook differ from earlier utterances");
        }
        corpus.utterances.push_back(std::move(utt));
    }
    return corpus;
}

std::pair<TokenSequence, VocabMap> tokenize_text(const std::filesystem::path& text_path) {
    const std::string text = read_file(text_path);
    TokenSequence seq;
    VocabMap vocab;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) seq.items.push_back(vocab.intern(text.substr(start, i - start)));
    }
    seq.alphabet_bound = static_cast<TokenId>(vocab.size());
    return {std::move(seq), std::move(vocab)};
}

std::vector<BenchmarkRecord> load_benchmarks(const std::filesystem::path& csv_path) {
    const std::string text = read_file(csv_path);
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<BenchmarkRecord> records;
    std::set<std::pair<std::string, Metric>> seen;
    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "config_id,metric,value")
                throw ValidationError("benchmark CSV " + csv_path.string() +
                                      ": expected header 'config_id,metric,value'");
            continue;
        }
        const auto where = csv_path.string() + " line " + std::to_string(line_no);
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos ||
            line.find(',', c2 + 1) != std::string::npos)
            throw ValidationError("benchmark CSV " + where + ": expected 3 comma-separated fields");

        BenchmarkRecord rec;
        rec.config_id = line.substr(0, c1);
        rec.metric = parse_metric(line.substr(c1 + 1, c2 - c1 - 1));
        const std::string value_str = line.substr(c2 + 1);
        const char* begin = value_str.data();
        const char* end = begin + value_str.size();
        auto [ptr, ec] = std::from_chars(begin, end, rec.value);
        if (ec != std::errc{} || ptr != end)
            throw ValidationError("benchmark CSV " + where + ": bad numeric value '" + value_str +
                                  "'");
        validate_metric_value(rec.metric, rec.value);
        if (!seen.emplace(rec.config_id, rec.metric).second)
            throw ValidationError("benchmark CSV " + where + ": duplicate (" + rec.config_id +
                                  ", " + metric_name(rec.metric) + ") pair");
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<CodecConfig> load_config_table(const std::filesystem::path& json_path) {
    const json j = parse_json(read_file(json_path), json_path.string());
    if (!j.is_array())
        throw ValidationError("config table " + json_path.string() + ": expected a JSON array");
    std::vector<CodecConfig> configs;
    std::set<std::string> ids;
    for (const json& c : j) {
        CodecConfig cfg;
        try {
            cfg.config_id = c.at("config_id").get<std::string>();
            cfg.model_name = c.value("model_name", std::string{});
            cfg.n_dims = c.at("n_dims").get<int>();
            cfg.codebook_size = c.at("codebook_size").get<int>();
            cfg.sample_rate_hz = c.value("sample_rate_hz", 0);
            cfg.kbps = c.value("kbps", 0.0);
        } catch (const json::exception& e) {
            throw ValidationError("config table " + json_path.string() + ": bad entry (" +
                                  e.what() + ")");
        }
        if (cfg.n_dims < 1 || cfg.codebook_size < 2)
            throw ValidationError("config '" + cfg.config_id +
                                  "': need n_dims >= 1 and codebook_size >= 2");
        if (!ids.insert(cfg.config_id).second)
            throw ValidationError("config table " + json_path.string() + ": duplicate config_id '" +
                                  cfg.config_id + "'");
        configs.push_back(std::move(cfg));
    }
    return configs;
}

void write_utterance(const CodecUtterance& utt, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    out << utterance_to_json(utt).dump() << '\n';
}

void write_manifest(const std::vector<ManifestEntry>& entries,
                    const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    for (const auto& e : entries)
        out << json{{"path", e.path}, {"config_id", e.config_id}}.dump() << '\n';
}

void write_benchmarks(const std::vector<BenchmarkRecord>& records,
                      const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    out << "config_id,metric,value\n";
    for (const auto& r : records) {
        out << r.config_id << ',' << metric_name(r.metric) << ','
            << json(r.value).dump() << '\n';
    }
}

void write_config_table(const std::vector<CodecConfig>& configs,
                        const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    json arr = json::array();
    for (const auto& c : configs) {
        arr.push_back(json{{"config_id", c.config_id},
                           {"model_name", c.model_name},
                           {"n_dims", c.n_dims},
                           {"codebook_size", c.codebook_size},
                           {"sample_rate_hz", c.sample_rate_hz},
                           {"kbps", c.kbps}});
    }
    out << arr.dump(2) << '\n';
}

}  // namespace tokenlaws
