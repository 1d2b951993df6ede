#include "fixtures.hpp"
#include "oracles.hpp"
#include "qhp/birational.hpp"

#include <gtest/gtest.h>

using namespace qhp;

using fixtures::entries;
using fixtures::scramble;

TEST(ElementaryTransform, InnerMove) {
    const auto b = Chain{3, 0, 2}.to_forest();
    const auto once = elementary_transform(b, {"v2", "v3"});
    EXPECT_EQ(entries(once), (std::vector<long long>{2, 0, 3}));
    EXPECT_EQ(discriminant(once), discriminant(b));
}

TEST(ElementaryTransform, OuterMoveAndErrors) {
    const auto b = Chain{0, 2}.to_forest();
    EXPECT_EQ(entries(elementary_transform(b, {"v1", ""})), (std::vector<long long>{0, 1}));
    EXPECT_EQ(entries(elementary_transform(b, {"v1", "v2"})), (std::vector<long long>{0, 3}));

    WeightedForest star;
    star.add_vertex("c", 0);
    for (auto id : {"x", "y", "z"}) {
        star.add_vertex(id, -2);
        star.add_edge("c", id);
    }
    EXPECT_THROW(elementary_transform(star, {"c", "x"}), DomainError);
    EXPECT_THROW(elementary_transform(b, {"v2", "v1"}), DomainError);
}

TEST(Flow, ReversionAcrossDoubleZero) {
    const auto r = reversion(Chain{0, 0, 3, 2});
    EXPECT_EQ(r.result, (Chain{3, 2, 0, 0}));
    EXPECT_EQ(entries(flow(Chain{0, 0, 3, 2}.to_forest(), r.moves)), (std::vector<long long>{3, 2, 0, 0}));
    EXPECT_EQ(reversion(Chain{0, 0, 3}).result, (Chain{3, 0, 0}));
    EXPECT_EQ(reversion(Chain{0, 0, 2, 3}).result, (Chain{2, 3, 0, 0}));
    EXPECT_THROW(reversion(Chain{0, 0}), DomainError);
    EXPECT_EQ(flow(Chain{2, 0, 3}.to_forest(), {}), (Chain{2, 0, 3}.to_forest()));
}

TEST(Flow, AnyMiddleEntryReachable) {
    // outer moves on the 0-tip move the second entry freely; inner moves alone cannot
    const auto base = Chain{0, 0, 2, 3}.to_forest();
    for (long long b = -4; b <= 4; ++b) {
        std::vector<FlowMove> moves;
        for (long long i = 0; i < (b < 0 ? -b : b); ++i) moves.push_back({"v1", b > 0 ? "v2" : ""});
        const auto out = flow(base, moves);
        EXPECT_EQ(entries(out), (std::vector<long long>{0, b, 2, 3})) << b;
        EXPECT_EQ(discriminant(out), discriminant(base));
        EXPECT_EQ(flow_equivalent(base, out), b == 0) << b;
    }
}

TEST(Predicates, Examples) {
    EXPECT_TRUE(is_standard(Chain{0, 0, 2, 3}.to_forest()));
    EXPECT_FALSE(is_balanced(Chain{0, 1, 2}.to_forest()));
    EXPECT_TRUE(is_balanced(Chain{1}.to_forest()));

    // fork with rays [2], [2], [0] around a center of weight -b
    for (long long b : {-1, 0, 3}) {
        WeightedForest f;
        f.add_vertex("c", -b);
        f.add_vertex("x", -2);
        f.add_vertex("y", -2);
        f.add_vertex("z", 0);
        for (auto id : {"x", "y", "z"}) f.add_edge("c", id);
        EXPECT_TRUE(is_standard(f));
        EXPECT_EQ(is_strongly_balanced(f), b == 0) << b;
    }
}

TEST(StandardForm, ChainWithInteriorZero) {
    const auto in = Chain{2, 0, 3, 2}.to_forest();
    const auto nf = to_standard_form(in);
    EXPECT_TRUE(is_standard(nf.forest));
    EXPECT_EQ(flow(in, nf.moves), nf.forest);
    ASSERT_TRUE(nf.chain);
    // inner flows preserve d = -10, so the standard chain is [0,0,2,5] up to reversion
    EXPECT_EQ(*nf.chain, (Chain{0, 0, 2, 5}));
    EXPECT_EQ(discriminant(nf.forest), discriminant(in));
    EXPECT_EQ(*nf.reversed_candidate, (Chain{0, 0, 5, 2}));
}

TEST(StandardForm, Idempotent) {
    const auto b = Chain{0, 0, 2, 3}.to_forest();
    const auto nf = to_standard_form(b);
    EXPECT_EQ(nf.forest, b);
    EXPECT_TRUE(nf.moves.empty());
    const auto again = to_standard_form(nf.forest);
    EXPECT_EQ(again.forest, nf.forest);
}

TEST(StandardForm, StrongModeClearsZeroTip) {
    const auto b = Chain{0, 2, 2, 2}.to_forest();
    EXPECT_THROW(to_standard_form(b), DomainError);
    const auto nf = to_standard_form(b, true);
    ASSERT_TRUE(nf.chain);
    EXPECT_EQ(*nf.chain, (Chain{0, 0, 2, 2}));
    EXPECT_EQ(flow(b, nf.moves), nf.forest);
    EXPECT_EQ(discriminant(nf.forest), discriminant(b));
}

TEST(StandardForm, ScramblesReturnToBase) {
    std::mt19937_64 rng(31);
    const auto base = Chain{0, 0, 2, 2, 3}.to_forest();
    for (int t = 0; t < 500; ++t) {
        const auto s = scramble(base, 1 + t % 15, rng);
        const auto nf = to_standard_form(s);
        ASSERT_EQ(flow(s, nf.moves), nf.forest);
        ASSERT_TRUE(nf.chain);
        ASSERT_TRUE(*nf.chain == (Chain{0, 0, 2, 2, 3}) || *nf.chain == (Chain{0, 0, 3, 2, 2}));
    }
}

TEST(FlowEquivalent, Examples) {
    EXPECT_TRUE(flow_equivalent(Chain{0, 0, 2, 3}.to_forest(), Chain{2, 3, 0, 0}.to_forest()));
    EXPECT_TRUE(flow_equivalent(Chain{2, 0, 3, 2}.to_forest(), Chain{0, 0, 2, 5}.to_forest()));
    EXPECT_FALSE(flow_equivalent(Chain{2, 0, 3, 2}.to_forest(), Chain{0, 0, 2, 2, 3}.to_forest()));
    // [0,0,2,3] and [0,0,3,2] are reversions of each other
    EXPECT_TRUE(flow_equivalent(Chain{0, 0, 2, 3}.to_forest(), Chain{0, 0, 3, 2}.to_forest()));
}

TEST(FlowEquivalent, AgreesWithBreadthFirstSearch) {
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<long long> w(2, 4);
    int decided = 0;
    for (int t = 0; t < 300; ++t) {
        std::vector<long long> a{0, 0}, b{0, 0};
        const int n = 1 + t % 4;
        for (int i = 0; i < n; ++i) {
            a.push_back(w(rng));
            b.push_back(w(rng));
        }
        if (t % 3 == 0) b = a;
        if (t % 3 == 1) std::reverse(b.begin(), b.end());
        const auto fa = scramble(Chain(a).to_forest(), 6, rng);
        const auto fb = scramble(Chain(b).to_forest(), 6, rng);
        const bool eq = flow_equivalent(fa, fb);
        const auto v = oracle::bfs_flow(entries(fa), entries(fb));
        if (v == oracle::Verdict::Abstain) continue;
        ++decided;
        EXPECT_EQ(eq, v == oracle::Verdict::Equivalent) << to_string(Chain(entries(fa))) << " vs "
                                                         << to_string(Chain(entries(fb)));
    }
    EXPECT_GT(decided, 100);
}
