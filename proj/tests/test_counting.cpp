#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace qhp;
using namespace fixtures;

namespace {

RulingFlags kod_zero() {
    RulingFlags f;
    f.kod_S0 = 0;
    return f;
}

}  // namespace

TEST(Patterns, Recognition) {
    const auto i = match_boundary_pattern(double_fork(-1, -3, false));
    EXPECT_EQ(i.pattern, BoundaryPattern::I);
    EXPECT_EQ(i.k, -3);
    EXPECT_EQ(match_boundary_pattern(double_fork(-4, -1, false)).pattern, BoundaryPattern::I);
    EXPECT_EQ(match_boundary_pattern(double_fork(-1, -1, false)).pattern, BoundaryPattern::II);
    const auto iii = match_boundary_pattern(double_fork(-2, -5, true));
    EXPECT_EQ(iii.pattern, BoundaryPattern::III);
    EXPECT_EQ(iii.k, -5);
    EXPECT_EQ(iii.m, -2);

    EXPECT_EQ(match_boundary_pattern(double_fork(-2, -3, false)).pattern, BoundaryPattern::None);
    EXPECT_EQ(match_boundary_pattern(double_fork(-1, 0, false)).pattern, BoundaryPattern::None);
    EXPECT_EQ(match_boundary_pattern(Chain{0, 0, 2, 3}.to_forest()).pattern, BoundaryPattern::None);
    auto bent = double_fork(-2, -3, true);
    bent.set_weight("z", -1);
    EXPECT_EQ(match_boundary_pattern(bent).pattern, BoundaryPattern::None);
}

TEST(Rulings, PatternsUnderKodZero) {
    const struct {
        WeightedForest d;
        long long r;
    } cases[] = {{double_fork(-1, -2, false), 1}, {double_fork(-1, -1, false), 2}, {double_fork(-3, -3, true), 3}};
    for (const auto& c : cases) {
        const auto rc = count_cstar_rulings(kod_zero(), c.d, {});
        ASSERT_TRUE(rc.r);
        EXPECT_EQ(*rc.r, c.r);
        EXPECT_EQ(static_cast<long long>(rc.rulings.size()), c.r);
    }
    const auto iii = count_cstar_rulings(kod_zero(), double_fork(-3, -3, true), {});
    EXPECT_EQ(iii.rulings.back().kind, "untwisted-C1");
}

TEST(Rulings, ForksUnderMinusInfinity) {
    RulingFlags f;
    f.kod_S0 = std::nullopt;
    for (long long k : {3, 4, 7}) {
        const auto rc = count_cstar_rulings(f, Chain{2}.to_forest(), {fork_22k(k)});
        EXPECT_EQ(rc.r, 2) << k;
    }
    const auto d4 = count_cstar_rulings(f, Chain{2}.to_forest(), {fork_22k(2)});
    EXPECT_EQ(d4.r, 4);
    EXPECT_EQ(count_cstar_rulings(f, Chain{2}.to_forest(), {}).r, 1);
}

TEST(Rulings, OtherRegimes) {
    RulingFlags affine;
    affine.affine_ruled = true;
    EXPECT_FALSE(count_cstar_rulings(affine, Chain{2}.to_forest(), {}).applicable);

    RulingFlags general;
    general.kod_S0 = 2;
    EXPECT_EQ(count_cstar_rulings(general, Chain{2}.to_forest(), {}).r, 0);

    RulingFlags one;
    one.kod_S0 = 1;
    EXPECT_EQ(count_cstar_rulings(one, Chain{2}.to_forest(), {}).r, 1);

    RulingFlags bad = kod_zero();
    bad.kod_S0 = 1;
    bad.exceptional = true;
    EXPECT_THROW(count_cstar_rulings(bad, Chain{2}.to_forest(), {}), DomainError);
}

TEST(Contractible, Table) {
    const auto count = [](const WeightedForest& d, int candidates) {
        const auto rc = count_cstar_rulings(kod_zero(), d, {});
        return count_contractible(kod_zero(), rc, candidates);
    };
    EXPECT_EQ(count(double_fork(-1, -2, false), 2).value, 1);
    EXPECT_EQ(count(double_fork(-3, -4, true), 2).value, 2);
    const auto iv = count(Chain{0, 0, 2, 3}.to_forest(), 2);
    EXPECT_TRUE(iv.applicable);
    EXPECT_EQ(iv.value, 2);
    EXPECT_FALSE(iv.upper_bound);
    EXPECT_TRUE(count(Chain{0, 0, 2, 3}.to_forest(), 1).upper_bound);

    RulingFlags ex = kod_zero();
    ex.exceptional = true;
    const auto e = count_contractible(ex, count_cstar_rulings(ex, Chain{2}.to_forest(), {}));
    EXPECT_TRUE(e.applicable);
    EXPECT_EQ(e.value, 0);

    RulingFlags minus;
    EXPECT_FALSE(count_contractible(minus, count_cstar_rulings(minus, Chain{2}.to_forest(), {})).applicable);
}

TEST(AffineRuling, Uniqueness) {
    EXPECT_EQ(affine_ruling_unique(double_fork(-1, -2, false)), true);
    EXPECT_EQ(affine_ruling_unique(Chain{0, 0, 2, 3}.to_forest()), false);
    EXPECT_FALSE(affine_ruling_unique(Chain{1}.to_forest()).has_value());
}
