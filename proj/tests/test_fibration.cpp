#include "oracles.hpp"
#include "qhp/fibration.hpp"

#include <gtest/gtest.h>

using namespace qhp;

namespace {

/// Weights along the path, read from the natural-least tip.
std::vector<long long> path_weights(const FiberTree& f) {
    auto order = f.forest.path_order();
    if (!order) return {};
    std::vector<long long> w;
    for (const auto& v : *order) w.push_back(f.forest.weight(v));
    return w;
}

std::vector<long long> path_mults(const FiberTree& f) {
    auto order = f.forest.path_order();
    std::vector<long long> m;
    for (const auto& v : *order) m.push_back(f.mu(v));
    return m;
}

oracle::Tree as_tree(const FiberTree& f, std::vector<long long>& mu) {
    oracle::Tree t;
    const auto ids = f.forest.ids();
    std::map<VertexId, int> idx;
    for (const auto& v : ids) {
        idx[v] = static_cast<int>(t.w.size());
        t.w.push_back(f.forest.weight(v));
        mu.push_back(f.mu(v));
    }
    for (const auto& [a, b] : f.forest.edges()) t.edges.push_back({idx[a], idx[b]});
    return t;
}

}  // namespace

TEST(Fiber, SmoothFiber) {
    const FiberTree f = new_fiber();
    EXPECT_EQ(f.forest.size(), 1u);
    EXPECT_EQ(f.forest.weight("c0"), 0);
    EXPECT_EQ(f.mu("c0"), 1);
    EXPECT_EQ(discriminant(f.forest), 0);
    EXPECT_TRUE(kernel_law_holds(f));
}

TEST(Fiber, StepsFromSmoothFiber) {
    FiberTree f = apply_step(new_fiber(), Step::sprout("c0"));
    EXPECT_EQ(path_weights(f), (std::vector<long long>{-1, -1}));
    EXPECT_EQ(path_mults(f), (std::vector<long long>{1, 1}));
    f = apply_step(f, Step::subdivide("c0", "c1"));
    EXPECT_EQ(path_weights(f), (std::vector<long long>{-2, -1, -2}));
    EXPECT_EQ(path_mults(f), (std::vector<long long>{1, 2, 1}));
    f = apply_step(f, Step::subdivide("c2", "c1"));
    EXPECT_EQ(path_weights(f), (std::vector<long long>{-2, -2, -1, -3}));
    EXPECT_EQ(path_mults(f), (std::vector<long long>{1, 2, 3, 1}));
    EXPECT_TRUE(kernel_law_holds(f));
}

TEST(Fiber, BlowDownInvertsSteps) {
    const FiberTree f1 = apply_step(new_fiber(), Step::sprout("c0"));
    const FiberTree f2 = apply_step(f1, Step::subdivide("c0", "c1"));
    EXPECT_EQ(path_weights(blow_down(f2, "c2")), (std::vector<long long>{-1, -1}));
    EXPECT_EQ(blow_down(f1, "c1").forest.weight("c0"), 0);
    EXPECT_EQ(blow_down(f1, "c0").forest.size(), 1u);

    FiberTree fork = apply_step(f2, Step::sprout("c2"));
    fork = apply_step(fork, Step::sprout("c2"));
    EXPECT_THROW(blow_down(fork, "c0"), DomainError);
}

TEST(Fiber, ValidateExamples) {
    const FiberTree f212 = replay(new_fiber(), {{Step::sprout("c0"), Step::subdivide("c0", "c1")}});
    const auto v = validate_fiber(f212);
    EXPECT_TRUE(v.ok());
    ASSERT_TRUE(v.unique_minus_one);
    EXPECT_EQ(f212.mu(*v.unique_minus_one), 2);

    // [2,2,2] with a (-1)-tip of multiplicity 2 on its center
    const FiberTree fork = replay(new_fiber(), {{Step::sprout("c0"), Step::subdivide("c0", "c1"), Step::sprout("c2")}});
    EXPECT_TRUE(validate_fiber(fork).ok());
    EXPECT_EQ(fork.mu("c3"), 2);
    EXPECT_EQ(fork.forest.weight("c2"), -2);

    // [2,2,2,1] with multiplicities that cannot satisfy the kernel law
    FiberTree bad;
    const std::vector<long long> w{-2, -2, -2, -1};
    for (int i = 0; i < 4; ++i) {
        const VertexId id = "c" + std::to_string(i);
        bad.forest.add_vertex(id, w[i]);
        bad.mult[id] = i + 1;
        bad.role[id] = Role::E;
        if (i > 0) bad.forest.add_edge("c" + std::to_string(i - 1), id);
    }
    EXPECT_FALSE(validate_fiber(bad).kernel_law);
    EXPECT_FALSE(validate_fiber(bad).ok());
}

TEST(Columnar, Splits) {
    FiberTree f = replay(new_fiber({"S1", "S2"}), {{Step::sprout("c0", "S1"), Step::subdivide("c0", "c1")}});
    f.set_role({"c0", "c1"}, Role::D);
    f.set_role({"c2"}, Role::S0);
    auto s = columnar_split(f);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->A, (Chain{2}));
    EXPECT_EQ(s->B, (Chain{2}));
    EXPECT_EQ(s->mu_c, 2);

    FiberTree g = apply_step(f, Step::subdivide("c2", "c1"));
    g.set_role({"c0", "c1", "c2"}, Role::D);
    g.set_role({"c3"}, Role::S0);
    s = columnar_split(g);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->mu_c, 3);
    const Chain a = s->A.size() == 2 ? s->A : s->B;
    const Chain b = s->A.size() == 2 ? s->B : s->A;
    EXPECT_EQ(a, (Chain{2, 2}));
    EXPECT_EQ(b, (Chain{3}));
    EXPECT_EQ(inductance(a) + inductance(b), 1);

    FiberTree one = replay(new_fiber({"S1"}), {{Step::sprout("c0", "S1"), Step::subdivide("c0", "c1")}});
    one.set_role({"c0", "c1"}, Role::D);
    one.set_role({"c2"}, Role::S0);
    EXPECT_FALSE(columnar_split(one));
}

TEST(MuS, Examples) {
    FiberTree f = replay(new_fiber({"H"}), {{Step::sprout("c0", "H"), Step::subdivide("c0", "c1")}});
    f.set_role({"c0", "c1"}, Role::D);
    f.set_role({"c2"}, Role::S0);
    EXPECT_EQ(mu_S(f), 2);

    FiberTree g = new_fiber({"H"});
    g.set_role({"c0"}, Role::S0);
    EXPECT_EQ(mu_S(g), 1);
}

TEST(Trace, Examples) {
    FiberTree f = replay(new_fiber(), {{Step::sprout("c0"), Step::subdivide("c0", "c1")}});
    const auto all = contraction_trace(f, {"c0", "c1", "c2"});
    ASSERT_EQ(all.steps.size(), 2u);
    EXPECT_FALSE(all.steps[0].sprouting);
    EXPECT_EQ(all.image.forest.size(), 1u);

    // a (-1)-tip meeting one marked component: the first contraction is sprouting
    FiberTree g = replay(new_fiber(), {{Step::sprout("c0"), Step::sprout("c1")}});
    const auto tg = contraction_trace(g, {"c0", "c1", "c2"});
    ASSERT_FALSE(tg.steps.empty());
    EXPECT_TRUE(tg.steps[0].sprouting);

    EXPECT_TRUE(contraction_trace(new_fiber(), {"c0"}).steps.empty());
}

TEST(Fiber, KernelLawOverAllPrograms) {
    for (int depth = 1; depth <= 5; ++depth) {
        for (const auto& p : all_programs(new_fiber(), depth, false)) {
            const FiberTree f = replay(new_fiber(), p);
            std::vector<long long> mu;
            const auto t = as_tree(f, mu);
            ASSERT_TRUE(oracle::kernel_law(t, mu)) << p.encode();
            ASSERT_EQ(oracle::det_minus_q(t), 0) << p.encode();
        }
    }
}

TEST(Fiber, RandomDeepProgramsKeepKernelLaw) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 200; ++k) {
        FiberTree f = new_fiber({"S"});
        for (int d = 0; d < 12; ++d) {
            const auto steps = possible_steps(f, true);
            f = apply_step(f, steps[std::uniform_int_distribution<std::size_t>(0, steps.size() - 1)(rng)]);
            ASSERT_TRUE(kernel_law_holds(f));
        }
        // contract back down to a smooth fiber
        while (f.forest.size() > 1) {
            const auto minus = f.minus_one_vertices();
            VertexId pick;
            for (const auto& v : minus)
                if (f.forest.degree(v) <= 2) pick = v;
            ASSERT_FALSE(pick.empty());
            f = blow_down(f, pick);
            ASSERT_TRUE(kernel_law_holds(f));
        }
        EXPECT_EQ(f.forest.weight(f.forest.ids().front()), 0);
    }
}

TEST(Trace, SproutingVerdictIndependentOfOrderOnUniqueMinusOneFibers) {
    std::mt19937_64 rng(22);
    for (int k = 0; k < 200; ++k) {
        FiberTree f = new_fiber({"S"});
        for (int d = 0; d < 7; ++d) {
            const auto steps = possible_steps(f, true);
            f = apply_step(f, steps[std::uniform_int_distribution<std::size_t>(0, steps.size() - 1)(rng)]);
        }
        if (f.minus_one_vertices().size() != 1) continue;
        const auto ids = f.forest.ids();
        const std::set<VertexId> marked(ids.begin(), ids.end());
        const bool base = contraction_trace(f, marked).eta_nontrivial();
        for (int r = 0; r < 5; ++r) EXPECT_EQ(contraction_trace(f, marked, &rng).eta_nontrivial(), base);
    }
}
