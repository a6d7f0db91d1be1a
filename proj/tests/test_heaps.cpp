#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "tokenlaws/heaps.hpp"

using namespace tokenlaws;

TEST_SUITE("heaps") {

TEST_CASE("growth curve counts distinct tokens per prefix") {
    const TokenSequence s{{1, 2, 1, 3}, 4};
    const GrowthCurve curve = vocab_growth(s, 100);  // n_samples >= |seq| keeps every prefix
    REQUIRE(curve.points.size() == 4);
    CHECK(curve.points[0] == GrowthPoint{1, 1.0});
    CHECK(curve.points[1] == GrowthPoint{2, 2.0});
    CHECK(curve.points[2] == GrowthPoint{3, 2.0});
    CHECK(curve.points[3] == GrowthPoint{4, 3.0});
}

TEST_CASE("growth curve extremes: constant and all-distinct sequences") {
    TokenSequence constant{std::vector<TokenId>(100, 7), 8};
    for (const auto& p : vocab_growth(constant, 20).points) CHECK(p.vocab == 1.0);

    TokenSequence distinct;
    distinct.alphabet_bound = 50;
    for (TokenId i = 0; i < 50; ++i) distinct.items.push_back(i);
    for (const auto& p : vocab_growth(distinct, 20).points)
        CHECK(p.vocab == static_cast<double>(p.tokens_seen));
}

TEST_CASE("growth curve sampling always ends at the full length") {
    TokenSequence s;
    s.alphabet_bound = 3;
    for (int i = 0; i < 54321; ++i) s.items.push_back(static_cast<TokenId>(i % 3));
    const GrowthCurve curve = vocab_growth(s, 50);
    CHECK(curve.points.size() <= 51);
    CHECK(curve.points.back().tokens_seen == 54321);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].tokens_seen > curve.points[i - 1].tokens_seen);
        CHECK(curve.points[i].vocab >= curve.points[i - 1].vocab);
        CHECK(curve.points[i].vocab <= static_cast<double>(curve.points[i].tokens_seen));
    }
    CHECK_THROWS_AS(vocab_growth(TokenSequence{}, 10), NumericError);
}

TEST_CASE("exact power-law curves are recovered to machine precision") {
    GrowthCurve curve;
    for (std::uint64_t m : {10, 100, 1000, 10000})
        curve.points.push_back({m, 3.0 * std::pow(static_cast<double>(m), 0.7)});
    const HeapsFit fit = fit_heaps(curve);
    CHECK(fit.K == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.beta == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(fit.rmse_log < 1e-12);
}

TEST_CASE("degenerate fits: all-distinct gives beta=1, constant gives beta=0") {
    TokenSequence distinct;
    distinct.alphabet_bound = 200;
    for (TokenId i = 0; i < 200; ++i) distinct.items.push_back(i);
    const HeapsFit lin = fit_heaps(vocab_growth(distinct, 50));
    CHECK(lin.K == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lin.beta == doctest::Approx(1.0).epsilon(1e-12));

    TokenSequence constant{std::vector<TokenId>(200, 3), 4};
    const HeapsFit flat = fit_heaps(vocab_growth(constant, 50));
    CHECK(flat.K == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(flat.beta == doctest::Approx(0.0));
}

TEST_CASE("fit validates its curve") {
    CHECK_THROWS_AS(fit_heaps(GrowthCurve{{{10, 5.0}}}), NumericError);
    CHECK_THROWS_AS(fit_heaps(GrowthCurve{{{10, 5.0}, {10, 6.0}}}), ValidationError);
    CHECK_THROWS_AS(fit_heaps(GrowthCurve{{{10, 0.0}, {20, 6.0}}}), NumericError);
}

TEST_CASE("beta is invariant under subsampling an exact power-law curve") {
    GrowthCurve curve;
    for (std::uint64_t m = 2; m <= 1 << 20; m *= 2)
        curve.points.push_back({m, 2.5 * std::pow(static_cast<double>(m), 0.62)});
    const double beta = fit_heaps(curve).beta;
    GrowthCurve subset{{curve.points[0], curve.points[7], curve.points[15]}};
    CHECK(fit_heaps(subset).beta == doctest::Approx(beta).epsilon(1e-9));
    GrowthCurve pair{{curve.points[3], curve.points[12]}};
    CHECK(fit_heaps(pair).beta == doctest::Approx(beta).epsilon(1e-9));
}

TEST_CASE("saturated random sequences stay sublinear") {
    std::mt19937 gen(17);
    std::uniform_int_distribution<TokenId> tok(0, 19);
    TokenSequence s;
    s.alphabet_bound = 20;
    for (int i = 0; i < 2000; ++i) s.items.push_back(tok(gen));  // final m = 100 * alphabet
    const HeapsFit fit = fit_heaps(vocab_growth(s, 200));
    CHECK(fit.beta <= 1.0 + 1e-9);
    CHECK(std::isfinite(fit.rmse_log));
}

TEST_CASE("identical curves produce bit-identical fits") {
    std::mt19937 gen(23);
    std::uniform_int_distribution<TokenId> tok(0, 99);
    TokenSequence s;
    s.alphabet_bound = 100;
    for (int i = 0; i < 5000; ++i) s.items.push_back(tok(gen));
    const HeapsFit a = fit_heaps(vocab_growth(s, 137));
    const HeapsFit b = fit_heaps(vocab_growth(s, 137));
    CHECK(std::memcmp(&a, &b, sizeof(HeapsFit)) == 0);
}

}  // TEST_SUITE
