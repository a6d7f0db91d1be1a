#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tokenlaws/coding.hpp"

using namespace tokenlaws;

using testutil::huffman_weighted_length;
using testutil::min_weighted_length_bruteforce;

TEST_SUITE("coding") {

TEST_CASE("entropy closed forms") {
    CHECK(entropy(std::vector<double>{1, 1, 1, 1}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(entropy(std::vector<double>{5}) == 0.0);
    CHECK(entropy(std::vector<double>{0.5, 0.25, 0.25}) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(entropy(std::vector<double>{}), NumericError);
    CHECK_THROWS_AS(entropy(std::vector<double>{0, 0}), NumericError);
    CHECK_THROWS_AS(entropy(std::vector<double>{-1, 2}), ValidationError);
}

TEST_CASE("entropy ignores zero-frequency entries and scaling") {
    const double h = entropy(std::vector<double>{4, 2, 2});
    CHECK(entropy(std::vector<double>{4, 0, 2, 0, 2}) == doctest::Approx(h).epsilon(1e-15));
    CHECK(entropy(std::vector<double>{400, 200, 200}) == doctest::Approx(h).epsilon(1e-15));
    CHECK(entropy(std::vector<double>{2, 2, 4}) == doctest::Approx(h).epsilon(1e-15));
}

TEST_CASE("huffman lengths for hand-built examples") {
    auto lengths_sorted = [](std::vector<double> w) {
        auto l = build_huffman(w).lengths;
        std::sort(l.begin(), l.end());
        return l;
    };
    CHECK(lengths_sorted({0.5, 0.25, 0.25}) == std::vector<std::uint32_t>{1, 2, 2});
    CHECK(lengths_sorted({0.4, 0.3, 0.3}) == std::vector<std::uint32_t>{1, 2, 2});
    CHECK(build_huffman(std::vector<double>{7.0}).lengths == std::vector<std::uint32_t>{1});
    CHECK_THROWS_AS(build_huffman(std::vector<double>{}), NumericError);
}

TEST_CASE("kraft equality holds on random distributions") {
    std::mt19937 gen(31);
    std::uniform_int_distribution<int> vocab(2, 300);
    std::uniform_real_distribution<double> weight(0.01, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> w(vocab(gen));
        for (auto& x : w) x = weight(gen);
        const HuffmanCode code = build_huffman(w);
        CHECK(testutil::kraft_equality(code.lengths));
        CHECK(code.support_size() == w.size());
    }
}

TEST_CASE("canonical codes are prefix-free") {
    std::mt19937 gen(37);
    std::uniform_real_distribution<double> weight(0.01, 10.0);
    std::vector<double> w(64);
    for (auto& x : w) x = weight(gen);
    const HuffmanCode code = build_huffman(w);
    const auto codes = canonical_codes(code);
    for (std::size_t a = 0; a < codes.size(); ++a) {
        for (std::size_t b = 0; b < codes.size(); ++b) {
            if (a == b) continue;
            const auto& ca = codes[a];
            const auto& cb = codes[b];
            if (ca.length > cb.length) continue;
            // ca must not be a prefix of cb
            CHECK((cb.bits >> (cb.length - ca.length)) != ca.bits);
        }
    }
}

TEST_CASE("huffman is optimal against the brute-force oracle on small alphabets") {
    std::mt19937 gen(41);
    std::uniform_int_distribution<int> vocab(2, 6);
    std::uniform_int_distribution<std::uint64_t> weight(1, 100);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<std::uint64_t> w(vocab(gen));
        for (auto& x : w) x = weight(gen);
        CHECK(huffman_weighted_length(w) == min_weighted_length_bruteforce(w));
    }
}

TEST_CASE("coding stats on the dyadic example") {
    const CodingStats s = coding_stats(std::vector<double>{0.5, 0.25, 0.25});
    CHECK(s.H == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(s.L == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(s.R == 0.0);
    CHECK(s.bit_reduction == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(s.V == 3);
    CHECK(!s.degenerate());
}

TEST_CASE("coding stats on the skewed 3-symbol example") {
    const CodingStats s = coding_stats(std::vector<double>{0.4, 0.3, 0.3});
    CHECK(s.H == doctest::Approx(1.57095).epsilon(1e-5));
    CHECK(s.L == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(s.R == doctest::Approx(0.01816).epsilon(1e-3));
}

TEST_CASE("uniform power-of-two support has zero bit reduction") {
    const std::vector<double> w(1024, 1.0);
    const CodingStats s = coding_stats(w);
    CHECK(s.H == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(s.L == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(s.bit_reduction == 0.0);
}

TEST_CASE("single-symbol support is degenerate by convention") {
    const CodingStats s = coding_stats(std::vector<double>{42.0});
    CHECK(s.V == 1);
    CHECK(s.L == 1.0);
    CHECK(s.H == 0.0);
    CHECK(s.R == 1.0);
    CHECK(s.degenerate());
}

TEST_CASE("nominal-codebook override changes only the baseline") {
    const std::vector<double> w{8, 4, 2, 2};
    const CodingStats observed = coding_stats(w);
    const CodingStats nominal = coding_stats(w, 10.0);
    CHECK(observed.H == nominal.H);
    CHECK(observed.L == nominal.L);
    CHECK(nominal.bit_reduction == doctest::Approx((10.0 - nominal.L) / 10.0));
}

TEST_CASE("entropy-bound and redundancy-range properties") {
    std::mt19937 gen(43);
    std::uniform_int_distribution<int> vocab(2, 512);
    std::uniform_real_distribution<double> weight(0.001, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> w(vocab(gen));
        for (auto& x : w) x = weight(gen);
        const CodingStats s = coding_stats(w);
        CHECK(s.H <= s.L);
        CHECK(s.L < s.H + 1.0);
        CHECK(s.R >= 0.0);
        CHECK(s.R < 1.0);
        CHECK(s.H <= std::log2(static_cast<double>(s.V)) + 1e-9);
        CHECK(s.R == doctest::Approx((s.L - s.H) / s.L).epsilon(1e-15));
    }
}

}  // TEST_SUITE
