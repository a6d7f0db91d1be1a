#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "tokenlaws/coding.hpp"
#include "tokenlaws/synth.hpp"
#include "tokenlaws/types.hpp"

namespace testutil {

// Scratch directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("tokenlaws-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& contents) {
    std::ofstream out(p, std::ios::binary);
    out << contents;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Independent sampling oracle for fit validation: continuous power-law draws
// via inverse-CDF, x = x_min * (1-u)^(-1/(alpha-1)), u uniform in [0,1).
inline std::vector<double> continuous_power_law(double alpha, double x_min, std::size_t count,
                                                std::uint64_t seed) {
    tokenlaws::SplitMix64 rng(seed);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = rng.next_unit();
        out.push_back(x_min * std::pow(1.0 - u, -1.0 / (alpha - 1.0)));
    }
    return out;
}

// Exact Kraft sum check: sum over support of 2^-len == 1, evaluated as
// integers with common denominator 2^max_len.
inline bool kraft_equality(const std::vector<std::uint32_t>& lengths) {
    std::uint32_t max_len = 0;
    for (auto l : lengths) max_len = std::max(max_len, l);
    if (max_len == 0 || max_len > 126) return false;
    unsigned __int128 sum = 0;
    for (auto l : lengths)
        if (l > 0) sum += static_cast<unsigned __int128>(1) << (max_len - l);
    return sum == static_cast<unsigned __int128>(1) << max_len;
}

// Brute-force oracle: minimum weighted code length over all Kraft-feasible
// length multisets with lengths in [1, V-1], best length paired to the
// largest weight (rearrangement inequality). Exact in integer arithmetic.
inline std::uint64_t min_weighted_length_bruteforce(std::vector<std::uint64_t> weights) {
    std::sort(weights.begin(), weights.end(), std::greater<>());
    const int v = static_cast<int>(weights.size());
    const int max_len = std::max(1, v - 1);
    std::vector<int> lengths(v);
    std::uint64_t best = ~0ull;

    auto kraft_ok = [&]() {
        double sum = 0.0;
        for (int l : lengths) sum += std::ldexp(1.0, -l);  // exact for l <= 5
        return sum <= 1.0;
    };
    auto recurse = [&](auto&& self, int pos, int min_len) -> void {
        if (pos == v) {
            if (!kraft_ok()) return;
            std::uint64_t total = 0;
            for (int i = 0; i < v; ++i) total += weights[i] * lengths[i];
            best = std::min(best, total);
            return;
        }
        for (int l = min_len; l <= max_len; ++l) {
            lengths[pos] = l;
            self(self, pos + 1, l);
        }
    };
    recurse(recurse, 0, 1);
    return best;
}

// Huffman total weighted length in exact integer arithmetic.
inline std::uint64_t huffman_weighted_length(const std::vector<std::uint64_t>& weights) {
    std::vector<double> w(weights.begin(), weights.end());
    const tokenlaws::HuffmanCode code = tokenlaws::build_huffman(w);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) total += weights[i] * code.lengths[i];
    return total;
}

}  // namespace testutil
