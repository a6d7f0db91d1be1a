#pragma once

#include <cstdint>
#include <vector>

#include "tokenlaws/types.hpp"

namespace tokenlaws {

// SplitMix64 (Steele, Lea & Flood; reference implementation by Vigna).
// Chosen over platform generators so seeded streams are bit-identical
// everywhere; published test vectors are asserted in the unit tests.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 usable bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

enum class GeneratorKind { zipf, uniform, markov };

const char* generator_kind_name(GeneratorKind k);
GeneratorKind parse_generator_kind(const std::string& name);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::uniform;
    std::uint32_t vocab = 1;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    double zipf_exponent = 1.0;                    // zipf only, s > 0
    std::vector<std::vector<double>> transition;   // markov only, row-stochastic

    void validate() const;
};

// I.i.d. draws from p(k) proportional to k^-s over k = 1..vocab, emitted as
// 0-based IDs. Exact cumulative-table inversion; identical seeds give
// identical sequences.
TokenSequence sample_zipf(const GeneratorSpec& spec);

// I.i.d. uniform draws over 0..vocab-1.
TokenSequence sample_uniform(const GeneratorSpec& spec);

// Markov chain started at state 0; each step draws the next state from the
// current row of the transition matrix.
TokenSequence sample_markov(const GeneratorSpec& spec);

// Dispatch on spec.kind.
TokenSequence sample(const GeneratorSpec& spec);

}  // namespace tokenlaws
