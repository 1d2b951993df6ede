#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace qhp;

namespace {

constexpr RulingKind kKinds[] = {RulingKind::Affine, RulingKind::Twisted, RulingKind::UntwistedC1,
                                 RulingKind::UntwistedP1};

/// Product of d over the D-parts of the fibers other than F_inf.
Int fiber_d_product(const RulingModel& m) {
    Int p = 1;
    for (const auto* nf : m.other_fibers()) {
        const auto ids = nf->fiber.with_role(Role::D);
        p *= discriminant(nf->fiber.forest.induced({ids.begin(), ids.end()}));
    }
    return p;
}

}  // namespace

TEST(Properties, StructuralMatchesDeterminant) {
    std::mt19937_64 rng(41);
    for (auto kind : kKinds) {
        for (int i = 0; i < 200; ++i) {
            const auto inst = random_instance(kind, rng, 7);
            const auto s = dD_structural(inst.model);
            ASSERT_TRUE(s.agree()) << kind_name(kind) << " " << inst.key;
            ASSERT_EQ(s.determinant, qhp_criterion(inst.model).dD != 0);
        }
    }
}

TEST(Properties, SigmaAndFujitaConsistent) {
    std::mt19937_64 rng(42);
    for (auto kind : kKinds) {
        for (int i = 0; i < 100; ++i) {
            const auto inst = random_instance(kind, rng, 7);
            const auto t = sigma_and_fujita(inst.model);
            ASSERT_TRUE(t.consistent) << inst.key;
            ASSERT_EQ(t.Sigma, t.h + t.nu - 2) << inst.key;
        }
    }
}

TEST(Properties, AffineDiscriminantIsMinusProduct) {
    for (const auto& inst : enumerate_instances(RulingKind::Affine, 6)) {
        ASSERT_EQ(qhp_criterion(inst.model).dD, -fiber_d_product(inst.model)) << inst.key;
    }
}

TEST(Properties, HomologyOrderSquared) {
    std::mt19937_64 rng(43);
    for (auto kind : kKinds) {
        for (int i = 0; i < 100; ++i) {
            const auto inst = random_instance(kind, rng, 7);
            const auto v = qhp_criterion(inst.model);
            if (!v.passes()) continue;
            const auto h = h1(inst.model);
            ASSERT_EQ(h.order * h.order * v.dE, abs_int(v.dD)) << inst.key;
            if (h.decomposition) {
                Int p = 1;
                for (const auto& c : *h.decomposition) p *= c;
                ASSERT_EQ(p, h.order);
            }
        }
    }
}

TEST(Properties, KodZeroTableMatchesKappa0) {
    long long checked = 0;
    for (auto kind : {RulingKind::Twisted, RulingKind::UntwistedC1, RulingKind::UntwistedP1}) {
        for (const auto& inst : enumerate_instances(kind, 5)) {
            const auto r = classify(inst.model);
            if (!r.kod || r.singularities.empty()) continue;
            ++checked;
            ASSERT_EQ(r.k0_zero_case.has_value(), r.kod->kappa0 == 0) << inst.key;
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(Properties, EtaIndependentOfContractionOrder) {
    std::mt19937_64 rng(44);
    for (const auto& inst : enumerate_instances(RulingKind::Twisted, 5)) {
        const auto& f0 = inst.model.fiber(inst.model.F0);
        const auto ids = f0.forest.ids();
        const std::set<VertexId> marked(ids.begin(), ids.end());
        const bool base = classify_F0(inst.model).eta_nontrivial;
        for (int k = 0; k < 3; ++k)
            ASSERT_EQ(contraction_trace(f0, marked, &rng).eta_nontrivial(), base) << inst.key;
    }
}

TEST(Properties, ColumnarIdentities) {
    for (const auto& p : columnar_programs("S", 6)) {
        FiberTree f = replay(new_fiber({"S", "T"}), p);
        const auto minus = f.minus_one_vertices();
        ASSERT_EQ(minus.size(), 1u);
        for (const auto& v : f.forest.ids()) f.role[v] = v == minus.front() ? Role::S0 : Role::D;
        const auto s = columnar_split(f);
        ASSERT_TRUE(s) << p.encode();
        ASSERT_EQ(inductance(s->A) + inductance(s->B), 1) << p.encode();
        ASSERT_EQ(co_inductance(s->A) + co_inductance(s->B), 1) << p.encode();
        ASSERT_EQ(discriminant(s->A), s->mu_c);
        ASSERT_EQ(discriminant(s->B), s->mu_c);
    }
}
