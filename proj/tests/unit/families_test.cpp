#include "promov/families.hpp"

#include <gtest/gtest.h>

using namespace promov;

namespace {
using Ab = AbelianCategory;
using Pt = PointedSetCategory;
}  // namespace

TEST(Families, DyadicObjectsAndBonds) {
    const auto ex = dyadic_example();
    EXPECT_EQ(ex.quotients.object(3), FgAbelianObject::cyclic(8));
    EXPECT_EQ(ex.doubling.object(5), FgAbelianObject::integers());
    EXPECT_EQ(ex.doubling.bond(1, 4).matrix(), (IntMatrix{{8}}));
    EXPECT_EQ(ex.reduction.component(1).matrix(), (IntMatrix{{1}}));
    EXPECT_EQ(ex.reduction.component(1).target(), FgAbelianObject::cyclic(2));
    EXPECT_TRUE(ex.quotients.flags().all_bonds_epimorphic);
    EXPECT_FALSE(ex.doubling.flags().all_bonds_epimorphic);
}

TEST(Families, SeedDeterminism) {
    const auto a = random_abelian_sequence(11, 2, 8);
    const auto b = random_abelian_sequence(11, 2, 8);
    for (Index n = 1; n <= 8; ++n) {
        EXPECT_EQ(a.object(n), b.object(n));
        EXPECT_EQ(a.step(n), b.step(n));
    }
    Rng r1(5), r2(5);
    EXPECT_EQ(random_poset(r1, 5), random_poset(r2, 5));
}

TEST(Families, RandomSystemsValidate) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed);
        const auto p = random_poset(rng, 5);
        EXPECT_TRUE(validate_poset(p).empty()) << seed;
        EXPECT_TRUE(validate_system(random_finite_abelian_system(rng, p, 16), Horizon{}).empty()) << seed;
        EXPECT_TRUE(validate_system(random_finite_set_system(rng, p, 4), Horizon{}).empty()) << seed;
        EXPECT_TRUE(validate_system(random_set_sequence(seed, 1 + seed % 3, 3), Horizon{}).empty()) << seed;
    }
}

TEST(Families, PerturbationsAreEquivalent) {
    const auto ex = dyadic_example();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = perturb_equivalent(ex.reduction, seed);
        EXPECT_TRUE(validate_morphism(g, Horizon{}).empty()) << seed;
        EXPECT_TRUE(are_equivalent(ex.reduction, g, Horizon{}).equivalent) << seed;
        for (Index mu = 1; mu <= 6; ++mu) EXPECT_GE(g.phi()(mu), ex.reduction.phi()(mu));
    }
}

TEST(Families, DominationPairSplits) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto d = domination_pair(seed);
        const auto gf = compose_morphisms(d.g, d.f);
        EXPECT_TRUE(are_equivalent(gf, identity_morphism(d.f.source()), Horizon{}).equivalent) << seed;
    }
}

TEST(Families, ConstantSystems) {
    const auto x = constant_system<Pt>(PointedFiniteSet(3), 5);
    EXPECT_EQ(x.index().poset().size(), 5u);
    EXPECT_EQ(x.bond(0, 4), PointedMap::identity(PointedFiniteSet(3)));
    EXPECT_TRUE(constant_sequence<Ab>(FgAbelianObject::cyclic(6)).flags().all_bonds_epimorphic);
}

TEST(Families, RecipesRebuildSequences) {
    const auto x = abelian_sequence_from_recipe(Recipe{"prime-power", {{"p", "3"}}});
    EXPECT_EQ(x.object(2), FgAbelianObject::cyclic(9));
    const auto z = abelian_sequence_from_recipe(Recipe{"doubling", {{"factor", "2"}}});
    const auto f = abelian_morphism_from_recipe(Recipe{"reduction", {}}, z, abelian_sequence_from_recipe(Recipe{"prime-power", {{"p", "2"}}}));
    EXPECT_EQ(f.component(3).target(), FgAbelianObject::cyclic(8));
    EXPECT_THROW(abelian_sequence_from_recipe(Recipe{"no-such-family", {}}), std::invalid_argument);
}
