#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tokenlaws/types.hpp"

namespace tokenlaws {

// Optimal prefix-code lengths for a weight table. lengths[i] is the
// codeword length of symbol i in bits; zero-weight symbols get length 0
// (no codeword). Kraft equality holds over the support. Explicit canonical
// bitstrings are derivable via canonical_codes().
struct HuffmanCode {
    std::vector<std::uint32_t> lengths;

    std::size_t support_size() const;
    std::uint32_t max_length() const;
};

// Canonical codeword for one symbol: the low `length` bits of `bits`,
// most-significant bit first.
struct Codeword {
    std::uint64_t bits = 0;
    std::uint32_t length = 0;
};

// Shannon entropy in bits per symbol: H = -sum p_i log2 p_i over p_i > 0.
// Zero-weight entries contribute nothing. Throws NumericError on an empty
// or all-zero table, ValidationError on negative weights.
double entropy(std::span<const double> weights);

// Huffman code lengths with a fixed tie-break: always merge the two
// least-weight nodes, ties resolved toward the node containing the lowest
// symbol ID. Single-symbol support gets length 1 by convention (a codeword
// must still be transmittable). Fractional weights are fine; Huffman
// operates on weights, not integer counts.
HuffmanCode build_huffman(std::span<const double> weights);

// Canonical bit assignment for the lengths (sorted by length, then symbol).
std::vector<Codeword> canonical_codes(const HuffmanCode& code);

struct CodingStats {
    double H = 0.0;              // entropy, bits/symbol
    double L = 0.0;              // Huffman average code length, bits/symbol
    double R = 0.0;              // redundancy (L - H) / L
    double bit_reduction = 0.0;  // (L_fixed - L) / L_fixed
    std::size_t V = 0;           // support size

    bool degenerate() const { return V < 2; }
};

// Entropy, Huffman average length, redundancy and the bit reduction rate
// against fixed-length coding of the observed support,
// L_fixed = max(1, ceil(log2 V)). fixed_bits overrides that baseline (e.g.
// the nominal 10-bit codebook) for sensitivity checks.
CodingStats coding_stats(std::span<const double> weights,
                         std::optional<double> fixed_bits = std::nullopt);

}  // namespace tokenlaws
