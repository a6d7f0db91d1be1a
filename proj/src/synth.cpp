#include "tokenlaws/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tokenlaws {

const char* generator_kind_name(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::zipf: return "zipf";
        case GeneratorKind::uniform: return "uniform";
        case GeneratorKind::markov: return "markov";
    }
    return "?";
}

GeneratorKind parse_generator_kind(const std::string& name) {
    if (name == "zipf") return GeneratorKind::zipf;
    if (name == "uniform") return GeneratorKind::uniform;
    if (name == "markov") return GeneratorKind::markov;
    throw ValidationError("unknown generator kind: '" + name + "'");
}

void GeneratorSpec::validate() const {
    if (vocab < 1) throw ValidationError("generator: vocab must be >= 1");
    switch (kind) {
        case GeneratorKind::zipf:
            if (!(zipf_exponent > 0.0) || !std::isfinite(zipf_exponent))
                throw ValidationError("generator: zipf exponent must be > 0");
            if (vocab > 1'000'000)
                throw ValidationError("generator: zipf vocab capped at 1e6 (cumulative table)");
            break;
        case GeneratorKind::uniform:
            break;
        case GeneratorKind::markov: {
            if (transition.size() != vocab)
                throw ValidationError("generator: markov transition matrix must have vocab rows");
            for (std::size_t i = 0; i < transition.size(); ++i) {
                const auto& row = transition[i];
                if (row.size() != vocab)
                    throw ValidationError("generator: markov transition row " + std::to_string(i) +
                                          " must have vocab entries");
                double sum = 0.0;
                for (double p : row) {
                    if (p < 0.0 || !std::isfinite(p))
                        throw ValidationError("generator: markov transition row " +
                                              std::to_string(i) + " has a negative entry");
                    sum += p;
                }
                if (std::abs(sum - 1.0) > 1e-12)
                    throw ValidationError("generator: markov transition row " + std::to_string(i) +
                                          " sums to " + std::to_string(sum) + ", expected 1");
            }
            break;
        }
    }
}

TokenSequence sample_zipf(const GeneratorSpec& spec) {
    spec.validate();
    if (spec.kind != GeneratorKind::zipf)
        throw ValidationError("sample_zipf: spec kind is not zipf");

    // Exact cumulative table over k = 1..vocab, normalised once.
    std::vector<double> cdf(spec.vocab);
    double acc = 0.0;
    for (std::uint32_t k = 1; k <= spec.vocab; ++k) {
        acc += std::pow(static_cast<double>(k), -spec.zipf_exponent);
        cdf[k - 1] = acc;
    }
    for (double& c : cdf) c /= acc;
    cdf.back() = 1.0;

    SplitMix64 rng(spec.seed);
    TokenSequence out;
    out.alphabet_bound = spec.vocab;
    out.items.reserve(spec.count);
    for (std::uint64_t i = 0; i < spec.count; ++i) {
        const double u = rng.next_unit();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        out.items.push_back(static_cast<TokenId>(it - cdf.begin()));
    }
    return out;
}

TokenSequence sample_uniform(const GeneratorSpec& spec) {
    spec.validate();
    if (spec.kind != GeneratorKind::uniform)
        throw ValidationError("sample_uniform: spec kind is not uniform");
    SplitMix64 rng(spec.seed);
    TokenSequence out;
    out.alphabet_bound = spec.vocab;
    out.items.reserve(spec.count);
    for (std::uint64_t i = 0; i < spec.count; ++i) {
        const auto k = static_cast<TokenId>(rng.next_unit() * spec.vocab);
        out.items.push_back(std::min(k, spec.vocab - 1));
    }
    return out;
}

TokenSequence sample_markov(const GeneratorSpec& spec) {
    spec.validate();
    if (spec.kind != GeneratorKind::markov)
        throw ValidationError("sample_markov: spec kind is not markov");
    SplitMix64 rng(spec.seed);

    // Fallback per row for the (rounding-only) case u >= accumulated sum:
    // the last state with positive probability.
    std::vector<TokenId> last_positive(spec.vocab, 0);
    for (std::uint32_t i = 0; i < spec.vocab; ++i) {
        for (std::uint32_t j = 0; j < spec.vocab; ++j)
            if (spec.transition[i][j] > 0.0) last_positive[i] = static_cast<TokenId>(j);
    }

    TokenSequence out;
    out.alphabet_bound = spec.vocab;
    out.items.reserve(spec.count);
    TokenId state = 0;
    for (std::uint64_t i = 0; i < spec.count; ++i) {
        out.items.push_back(state);
        const auto& row = spec.transition[state];
        const double u = rng.next_unit();
        double acc = 0.0;
        TokenId next = last_positive[state];
        for (std::uint32_t j = 0; j < spec.vocab; ++j) {
            acc += row[j];
            if (u < acc) {
                next = static_cast<TokenId>(j);
                break;
            }
        }
        state = next;
    }
    return out;
}

TokenSequence sample(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::zipf: return sample_zipf(spec);
        case GeneratorKind::uniform: return sample_uniform(spec);
        case GeneratorKind::markov: return sample_markov(spec);
    }
    throw ValidationError("sample: unknown generator kind");
}

}  // namespace tokenlaws
