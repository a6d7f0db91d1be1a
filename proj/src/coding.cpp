#include "tokenlaws/coding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>

namespace tokenlaws {

namespace {

void validate_weights(std::span<const double> weights, const char* who) {
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w))
            throw ValidationError(std::string(who) + ": weights must be finite and >= 0");
    }
}

double total_weight(std::span<const double> weights) {
    double t = 0.0;
    for (double w : weights) t += w;
    return t;
}

}  // namespace

std::size_t HuffmanCode::support_size() const {
    return std::count_if(lengths.begin(), lengths.end(), [](std::uint32_t l) { return l > 0; });
}

std::uint32_t HuffmanCode::max_length() const {
    std::uint32_t m = 0;
    for (std::uint32_t l : lengths) m = std::max(m, l);
    return m;
}

double entropy(std::span<const double> weights) {
    validate_weights(weights, "entropy");
    const double total = total_weight(weights);
    if (total <= 0.0) throw NumericError("entropy: empty or all-zero frequency table");
    double h = 0.0;
    for (double w : weights) {
        if (w > 0.0) {
            const double p = w / total;
            h -= p * std::log2(p);
        }
    }
    return h;
}

HuffmanCode build_huffman(std::span<const double> weights) {
    validate_weights(weights, "build_huffman");

    struct Node {
        double weight;
        std::size_t min_symbol;  // lowest symbol ID contained; unique per live node
        int left = -1, right = -1;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) nodes.push_back({weights[i], i});
    }
    const std::size_t support = nodes.size();
    if (support == 0) throw NumericError("build_huffman: empty or all-zero frequency table");

    HuffmanCode code;
    code.lengths.assign(weights.size(), 0);
    if (support == 1) {
        code.lengths[nodes[0].min_symbol] = 1;
        return code;
    }

    auto by_weight_then_symbol = [&nodes](int a, int b) {
        if (nodes[a].weight != nodes[b].weight) return nodes[a].weight > nodes[b].weight;
        return nodes[a].min_symbol > nodes[b].min_symbol;
    };
    std::priority_queue<int, std::vector<int>, decltype(by_weight_then_symbol)> queue(
        by_weight_then_symbol);
    for (std::size_t i = 0; i < support; ++i) queue.push(static_cast<int>(i));

    while (queue.size() > 1) {
        const int a = queue.top(); queue.pop();
        const int b = queue.top(); queue.pop();
        nodes.push_back({nodes[a].weight + nodes[b].weight,
                         std::min(nodes[a].min_symbol, nodes[b].min_symbol), a, b});
        queue.push(static_cast<int>(nodes.size() - 1));
    }

    // Depths by iterative walk from the root.
    std::vector<std::pair<int, std::uint32_t>> stack{{queue.top(), 0}};
    while (!stack.empty()) {
        auto [idx, depth] = stack.back();
        stack.pop_back();
        const Node& node = nodes[idx];
        if (node.left < 0) {
            code.lengths[node.min_symbol] = depth;
        } else {
            stack.push_back({node.left, depth + 1});
            stack.push_back({node.right, depth + 1});
        }
    }
    return code;
}

std::vector<Codeword> canonical_codes(const HuffmanCode& code) {
    std::vector<std::size_t> symbols;
    for (std::size_t i = 0; i < code.lengths.size(); ++i)
        if (code.lengths[i] > 0) symbols.push_back(i);
    std::sort(symbols.begin(), symbols.end(), [&](std::size_t a, std::size_t b) {
        if (code.lengths[a] != code.lengths[b]) return code.lengths[a] < code.lengths[b];
        return a < b;
    });

    std::vector<Codeword> out(code.lengths.size());
    std::uint64_t next = 0;
    std::uint32_t prev_len = 0;
    for (std::size_t s : symbols) {
        const std::uint32_t len = code.lengths[s];
        if (len > 63) throw NumericError("canonical_codes: code length exceeds 63 bits");
        next <<= (len - prev_len);
        out[s] = Codeword{next, len};
        ++next;
        prev_len = len;
    }
    return out;
}

CodingStats coding_stats(std::span<const double> weights, std::optional<double> fixed_bits) {
    const HuffmanCode code = build_huffman(weights);
    CodingStats stats;
    stats.V = code.support_size();
    stats.H = entropy(weights);

    const double total = total_weight(weights);
    double l = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) l += (weights[i] / total) * code.lengths[i];
    }
    stats.L = l;
    stats.R = l > 0.0 ? (l - stats.H) / l : 0.0;

    double l_fixed;
    if (fixed_bits) {
        if (!(*fixed_bits > 0.0))
            throw ValidationError("coding_stats: fixed_bits override must be positive");
        l_fixed = *fixed_bits;
    } else {
        l_fixed = stats.V < 2 ? 1.0
                              : static_cast<double>(std::bit_width(stats.V - 1));
    }
    stats.bit_reduction = (l_fixed - l) / l_fixed;
    return stats;
}

}  // namespace tokenlaws
