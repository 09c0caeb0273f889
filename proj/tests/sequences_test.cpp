#include <gtest/gtest.h>

#include "addcomp/sequences.hpp"

namespace addcomp {
namespace {

std::vector<nat> gen(std::string_view spec, nat horizon) { return generate(parse_sequence_spec(spec, horizon)).elements(); }

TEST(Generate, Families) {
    EXPECT_EQ(gen("powers:2", 20), (std::vector<nat>{1, 2, 4, 8, 16}));
    EXPECT_EQ(gen("powers:3", 100), (std::vector<nat>{1, 3, 9, 27, 81}));
    EXPECT_EQ(gen("composites", 12), (std::vector<nat>{4, 6, 8, 9, 10, 12}));
    EXPECT_EQ(gen("primes", 30), (std::vector<nat>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
    EXPECT_EQ(gen("fib", 40), (std::vector<nat>{1, 2, 3, 5, 8, 13, 21, 34}));
    EXPECT_EQ(gen("squares", 50), (std::vector<nat>{1, 4, 9, 16, 25, 36, 49}));
    EXPECT_EQ(gen("explicit:1,10,100", 50), (std::vector<nat>{1, 10}));
}

TEST(Generate, GeometricFloorsAndDeduplicates) {
    // floor(3 * 1.5^i): 3, 4, 6, 10, 15, 22, 34, 51, 76
    EXPECT_EQ(gen("geometric:c=3,alpha=1.5", 80), (std::vector<nat>{3, 4, 6, 10, 15, 22, 34, 51, 76}));
    // floor(0.5 * 1.1^i) starts at 0 (dropped) and repeats 1 several times.
    auto v = gen("geometric:c=0.5,alpha=1.1", 10);
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_LT(v[i - 1], v[i]);
    EXPECT_EQ(v.front(), 1u);
}

TEST(Generate, PrimeCountsMatchKnownValues) {
    EXPECT_EQ(generate({family::Primes{}, 1000000}).size(), 78498u);
    EXPECT_EQ(generate({family::Composites{}, 1000000}).size(), 1000000u - 78498u - 1u);
}

TEST(Generate, Errors) {
    EXPECT_THROW(generate({family::Explicit{{3, 1, 2}}, 10}), InvalidInput);
    EXPECT_THROW(parse_family("geometric:c=1,alpha=1"), InvalidInput);
    EXPECT_THROW(parse_family("geometric:c=1,alpha=0.5"), InvalidInput);
    EXPECT_THROW(parse_family("geometric:c=0,alpha=2"), InvalidInput);
    EXPECT_THROW(parse_family("geometric:c=1"), InvalidInput);
    EXPECT_THROW(parse_family("powers:1"), InvalidInput);
    EXPECT_THROW(parse_family("nonsense"), InvalidInput);
    EXPECT_THROW(parse_family("file:/definitely/not/here.set"), InvalidInput);
}

TEST(AnalyzeRatio, PowersOfTwo) {
    auto ra = analyze_ratio(parse_sequence_spec("powers:2", nat{1} << 20), std::nullopt);
    EXPECT_DOUBLE_EQ(ra.alpha, 2.0);
    EXPECT_EQ(ra.n0, 1u);
    EXPECT_EQ(ra.r, 2u);
    EXPECT_EQ(ra.p, 17u);
    EXPECT_EQ(ra.gamma, 6u);
    EXPECT_EQ(ra.threshold, 128u);
    EXPECT_TRUE(ra.certified);
}

TEST(AnalyzeRatio, ExplicitWithHint) {
    std::vector<nat> seq{1, 10, 100, 1000};
    auto ra = analyze_ratio(seq, 10.0);
    EXPECT_EQ(ra.n0, 1u);
    EXPECT_EQ(ra.r, 1u);
    EXPECT_EQ(ra.p, 101u);
    EXPECT_EQ(ra.gamma, 8u);
    EXPECT_EQ(ra.threshold, 512u);
    EXPECT_FALSE(ra.certified);
}

TEST(AnalyzeRatio, CompositesAndSquaresFail) {
    EXPECT_THROW(analyze_ratio(parse_sequence_spec("composites", 10000), std::nullopt), RatioNotSatisfied);
    EXPECT_THROW(analyze_ratio(parse_sequence_spec("squares", 10000), std::nullopt), RatioNotSatisfied);
    EXPECT_THROW(analyze_ratio(parse_sequence_spec("primes", 10000), std::nullopt), RatioNotSatisfied);
}

TEST(AnalyzeRatio, HintThatNeverHolds) {
    std::vector<nat> seq{1, 2, 3, 4, 5, 6};
    EXPECT_THROW(analyze_ratio(seq, 1.5), RatioNotSatisfied);
    EXPECT_THROW(analyze_ratio(seq, 0.9), InvalidInput);
}

TEST(AnalyzeRatio, TooShortForR) {
    std::vector<nat> seq{1, 2, 4, 8, 16};  // r = 2 needs 6 elements
    EXPECT_THROW(analyze_ratio(seq, std::nullopt), IndexOutOfRange);
    std::vector<nat> empty;
    EXPECT_THROW(analyze_ratio(empty, std::nullopt), RatioNotSatisfied);
}

TEST(AnalyzeRatio, EventualRatioPicksMinimalTail) {
    // 1..10 then doubling: 10 -> 20 is the first pair with ratio 2.
    std::vector<nat> seq{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 40, 80, 160, 320, 640, 1280};
    auto ra = analyze_ratio(seq, std::nullopt);
    EXPECT_DOUBLE_EQ(ra.alpha, 2.0);
    EXPECT_EQ(ra.n0, 10u);
    EXPECT_EQ(ra.r, 2u);
    EXPECT_EQ(ra.p, 11u);  // 1 + max(a_10 = 10, a_5 = 5)
    EXPECT_EQ(ra.gamma, 5u);
}

TEST(AnalyzeRatio, DecimalGridRatiosAreExact) {
    // 21/20 is exactly 1.05.
    std::vector<nat> seq{20, 21};
    EXPECT_EQ(minimal_tail_index(seq, 1.05), std::optional<std::size_t>(1));
}

TEST(AnalyzeRatio, RatioExponent) {
    EXPECT_EQ(ratio_exponent(2.0), 2u);
    EXPECT_EQ(ratio_exponent(1.5), 4u);   // 1.5^3 = 3.375, 1.5^4 = 5.06
    EXPECT_EQ(ratio_exponent(1.25), 7u);  // 1.25^6 = 3.81
    EXPECT_EQ(ratio_exponent(1.1), 15u);  // 1.1^14 = 3.80, 1.1^15 = 4.18
    EXPECT_EQ(ratio_exponent(1.05), 29u); // 1.05^28 = 3.92, 1.05^29 = 4.12
    EXPECT_EQ(ratio_exponent(4.0), 1u);
    EXPECT_EQ(ratio_exponent(10.0), 1u);
}

// Every returned analysis satisfies the ratio condition on its tail and the
// parameter relations; powers:k uses alpha = min(k, 2).
TEST(AnalyzeRatioProperties, ReturnedParametersAreConsistent) {
    for (nat k = 2; k <= 9; ++k) {
        for (nat h : {nat{1} << 16, nat{1} << 24}) {
            auto spec = SequenceSpec{family::Powers{k}, h};
            auto seq = generate(spec).elements();
            RatioAnalysis ra;
            try {
                ra = analyze_ratio(spec, std::nullopt);
            } catch (const IndexOutOfRange&) {
                continue;
            }
            EXPECT_DOUBLE_EQ(ra.alpha, 2.0) << k;
            EXPECT_TRUE(ratio_condition_holds(seq, ra.alpha, ra.n0));
            EXPECT_GE(std::pow(ra.alpha, ra.r), 4.0 - 1e-9);
            EXPECT_LT(std::pow(ra.alpha, ra.r - 1), 4.0);
            EXPECT_GT(ra.p, std::max(seq[ra.n0 - 1], seq[2 * ra.r]));
            EXPECT_EQ(ra.threshold, nat{1} << (ra.gamma + 1));
            EXPECT_EQ(nat{1} << (ra.gamma - 2), std::bit_floor(ra.p));
            // deterministic
            auto again = analyze_ratio(spec, std::nullopt);
            EXPECT_EQ(again.p, ra.p);
            EXPECT_EQ(again.n0, ra.n0);
        }
    }
    for (const char* spec : {"geometric:c=3,alpha=1.5", "geometric:c=1,alpha=1.3", "fib", "geometric:c=7,alpha=3"}) {
        auto s = parse_sequence_spec(spec, 1u << 22);
        auto seq = generate(s).elements();
        auto ra = analyze_ratio(s, std::nullopt);
        EXPECT_TRUE(ratio_condition_holds(seq, ra.alpha, ra.n0)) << spec;
        if (ra.n0 > 1) {
            EXPECT_FALSE(ratio_condition_holds(seq, ra.alpha, ra.n0 - 1)) << spec;
        }
    }
}

} // namespace
} // namespace addcomp
