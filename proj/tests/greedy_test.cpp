#include <gtest/gtest.h>

#include <cmath>

#include "addcomp/greedy.hpp"
#include "addcomp/sequences.hpp"
#include "test_support.hpp"

namespace addcomp {
namespace {

using testing::Rng;

TEST(GreedyCover, WorkedInstance) {
    // f(3)={5}, f(4)={5,6}, f(5)={6,7}, f(6)={7,8}, f(7)={8}
    NatSet A(8, {1, 2});
    NatSet B(8, {3, 4, 5, 6, 7});
    auto sel = greedy_cover(A, B, 4, 4);
    EXPECT_EQ(sel.chosen, (std::vector<nat>{4, 6}));
    EXPECT_EQ(sel.gains, (std::vector<nat>{2, 2}));
    auto ref = greedy_cover_reference(A, B, 4, 4);
    EXPECT_EQ(ref.chosen, sel.chosen);
}

TEST(GreedyThin, WorkedInstanceHasNonPositiveD) {
    GreedyInstance inst{NatSet(8, {1, 2}), NatSet(8, {3, 4, 5, 6, 7}), 4, 4, 2, 8};
    EXPECT_EQ(thinning_denominator(inst), 0);
    try {
        greedy_thin(inst);
        FAIL();
    } catch (const PreconditionViolated& e) {
        EXPECT_EQ(e.clause(), "D > 0");
    }
}

TEST(GreedyCover, SingletonForced) {
    // A = [1,10], B = {20}: A+20 = (20,30] covers (20,30] by itself.
    NatSet A = from_interval(Interval::closed(1, 10), 40);
    auto sel = greedy_cover(A, NatSet(40, {20}), 20, 10);
    EXPECT_EQ(sel.chosen, (std::vector<nat>{20}));
    EXPECT_EQ(sel.gains, (std::vector<nat>{10}));
}

TEST(GreedyCover, MissingCoverIsReported) {
    EXPECT_THROW(greedy_cover(NatSet(10, {1, 2, 3}), NatSet(10, {1, 2}), 7, 1), PreconditionViolated);
    EXPECT_TRUE(greedy_cover(NatSet(10, {1}), NatSet(10), 3, 0).chosen.empty());
}

TEST(GreedyThin, PreconditionClauses) {
    NatSet A = from_interval(Interval::closed(1, 20), 20);
    NatSet B = from_interval(Interval::open_closed(0, 20), 20);
    auto clause = [](const GreedyInstance& inst) {
        try {
            greedy_thin(inst);
        } catch (const PreconditionViolated& e) {
            return e.clause();
        }
        return std::string("none");
    };
    EXPECT_EQ(clause({A, B, 10, 10, 0, 20}), "none");
    EXPECT_EQ(clause({A, B, 10, 10, 1, 20}), "B subset of (x1,x2]");
    EXPECT_EQ(clause({A, B, 10, 11, 0, 20}), "m+n <= x2");
    EXPECT_EQ(clause({A, NatSet(20), 10, 10, 0, 20}), "B nonempty");
    EXPECT_EQ(clause({NatSet(20), B, 10, 10, 0, 20}), "A nonempty");
    EXPECT_EQ(clause({A, NatSet(20, {5}), 10, 10, 0, 20}), "D > 0");
    EXPECT_EQ(clause({A.with_horizon(15), B, 10, 10, 0, 20}), "horizon >= m+n");
}

TEST(GreedyThin, FullBlockTrace) {
    NatSet A = from_interval(Interval::closed(1, 20), 20);
    NatSet B = from_interval(Interval::open_closed(0, 20), 20);
    auto res = greedy_thin({A, B, 10, 10, 0, 20});
    // b = 1 reaches every target (a = t - 1 <= 19).
    EXPECT_EQ(res.trace.chosen, (std::vector<nat>{1}));
    EXPECT_EQ(res.trace.gains, (std::vector<nat>{10}));
    EXPECT_EQ(res.trace.D, 9);
    EXPECT_EQ(res.trace.q0, 4u);  // floor(9 / ln 9) = floor(4.096)
    EXPECT_EQ(res.trace.K.at(10), 1u);
    EXPECT_EQ(res.trace.covered_total, 10u);
}

TEST(ChooseQ0, Examples) {
    EXPECT_EQ(choose_q0(100).q0, 21u);
    EXPECT_FALSE(choose_q0(100).degenerate);
    EXPECT_EQ(choose_q0(3).q0, 2u);
    EXPECT_EQ(choose_q0(1).q0, 1u);
    EXPECT_TRUE(choose_q0(1).degenerate);
    EXPECT_TRUE(choose_q0(2).degenerate);
}

TEST(BoundTwoTerm, Examples) {
    EXPECT_DOUBLE_EQ(bound_two_term(10, 5, 8, 2), 7.0);
    EXPECT_DOUBLE_EQ(bound_two_term(10, 5, 8, 1), 10.0 / 5.0 + 8.0);
    // q0 = n with D = |B|: H(n) + 1
    EXPECT_NEAR(bound_two_term(1000, 1000, 50, 50), harmonic(50) + 1.0, 1e-12);
    EXPECT_THROW(bound_two_term(10, 5, 8, 0), InvalidInput);
}

TEST(Harmonic, ExactAndLargeAgree) {
    EXPECT_DOUBLE_EQ(harmonic(1), 1.0);
    EXPECT_DOUBLE_EQ(harmonic(2), 1.5);
    EXPECT_DOUBLE_EQ(harmonic(4), 25.0 / 12.0);
    // Euler-Maclaurin: H(n) ~ ln n + gamma + 1/(2n) - 1/(12 n^2)
    for (nat n : {nat{1000}, nat{1024}, nat{1025}, nat{100000}}) {
        double nn = static_cast<double>(n);
        double approx = std::log(nn) + 0.57721566490153286 + 1 / (2 * nn) - 1 / (12 * nn * nn);
        EXPECT_NEAR(harmonic(n), approx, 1e-12) << n;
    }
}

TEST(DyadicBlockThin, PowersOfTwoSmallBlockIsDegenerate) {
    NatSet A = generate({family::Powers{2}, 64});
    auto res = dyadic_block_thin(A, 8);
    EXPECT_EQ(res.trace.D, 1);  // |{1,2,4}| - |{16,32}|
    EXPECT_TRUE(res.trace.degenerate);
    EXPECT_TRUE(res.trace.fallback);
    EXPECT_EQ(res.S, set_difference(from_interval(Interval::open_closed(8, 32), 64), A));
    EXPECT_TRUE(translates_cover(A, res.S, 16, 16));
}

TEST(DyadicBlockThin, PowersOfTwoThins) {
    NatSet A = generate({family::Powers{2}, 256});
    auto res = dyadic_block_thin(A, 64);
    EXPECT_EQ(res.trace.D, 4);  // |{1,...,32}| = 6 minus |{128,256}| = 2
    EXPECT_EQ(res.trace.q0, 2u);
    EXPECT_FALSE(res.trace.degenerate);
    EXPECT_FALSE(res.trace.fallback);
    EXPECT_TRUE(translates_cover(A, res.S, 128, 128));
    EXPECT_TRUE(disjoint(res.S, A));
    EXPECT_LT(res.S.size(), set_difference(from_interval(Interval::open_closed(64, 256), 256), A).size());
    EXPECT_LE(static_cast<double>(res.S.size()), res.trace.bound_two_term);
}

TEST(DyadicBlockThin, RejectsSmallLowerPart) {
    NatSet A(100, {1, 10, 11, 12});
    EXPECT_THROW(dyadic_block_thin(A, 5), PreconditionViolated);
    EXPECT_THROW(dyadic_block_thin(A, 30), PreconditionViolated);  // 4q > horizon
}

// Instances with D >= 3: B dense inside (x1, x2], A dense at the bottom.
GreedyInstance random_instance(Rng& rng) {
    for (;;) {
        nat x1 = testing::uniform(rng, 0, 40);
        nat width = testing::uniform(rng, 20, 400);
        nat x2 = x1 + width;
        nat m = testing::uniform(rng, x1 + 1, x2 - 1);
        nat n = testing::uniform(rng, 1, x2 - m);
        nat h = x2;
        NatSet A = testing::random_set(rng, h, testing::uniform_real(rng, 0.05, 0.9));
        double keep = testing::uniform_real(rng, 0.6, 1.0);
        NatSet B = testing::random_set(rng, h, keep, x1 + 1, x2);
        if (B.empty()) continue;
        GreedyInstance inst{A, B, m, n, x1, x2};
        if (A.empty() || thinning_denominator(inst) < 3) continue;
        // D > 0 already forces every target to be reachable.
        EXPECT_TRUE(translates_cover(A, B, m, n));
        return inst;
    }
}

TEST(GreedyProperties, IncrementalMatchesReferenceAndTraceIdentities) {
    Rng rng(31337);
    for (int iter = 0; iter < 150; ++iter) {
        auto inst = random_instance(rng);
        auto res = greedy_thin(inst);
        auto ref = greedy_cover_reference(inst.A, inst.B, inst.m, inst.n);
        ASSERT_EQ(res.trace.chosen, ref.chosen) << "iter " << iter;
        ASSERT_EQ(res.trace.gains, ref.gains);
        EXPECT_TRUE(translates_cover(inst.A, res.S, inst.m, inst.n));
        for (std::size_t j = 1; j < res.trace.gains.size(); ++j) EXPECT_LE(res.trace.gains[j], res.trace.gains[j - 1]);
        nat weighted = 0, steps = 0;
        for (auto [x, k] : res.trace.K) {
            weighted += x * k;
            steps += k;
        }
        EXPECT_EQ(weighted, inst.n);
        EXPECT_EQ(steps, res.S.size());
        // first gain is the best single translate
        nat best = 0;
        inst.B.for_each([&](nat b) {
            nat g = 0;
            inst.A.for_each([&](nat a) { g += (a + b > inst.m && a + b <= inst.m + inst.n); });
            best = std::max(best, g);
        });
        EXPECT_EQ(res.trace.q, best);
        EXPECT_LE(static_cast<double>(res.S.size()), res.trace.bound_two_term);
        EXPECT_LE(res.trace.bound_two_term, res.trace.bound_closed_form + 1e-9);
    }
}

} // namespace
} // namespace addcomp
