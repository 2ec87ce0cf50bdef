#include "reference.hpp"

#include "promov/abelian.hpp"
#include "promov/families.hpp"
#include "promov/forgetful.hpp"
#include "promov/pointed.hpp"

#include <gtest/gtest.h>

using namespace promov;

namespace {

using Ab = AbelianCategory;
using Pt = PointedSetCategory;

const FgAbelianObject Z = FgAbelianObject::integers();

FgAbelianObject cyc(long n) { return FgAbelianObject::cyclic(n); }

FgAbelianMorphism times(const FgAbelianObject& s, const FgAbelianObject& t, long k) {
    return FgAbelianMorphism(s, t, IntMatrix{{k}});
}

}  // namespace

TEST(Abelian, CompositionAndEquality) {
    EXPECT_EQ(compose(times(Z, Z, 2), times(Z, Z, 2)), times(Z, Z, 4));
    const auto pi = times(Z, cyc(4), 1);
    const auto c = compose(pi, times(Z, Z, 2));
    EXPECT_EQ(c.apply({Integer(1)}), IntVector{Integer(2)});
    EXPECT_TRUE(morphisms_equal(times(Z, cyc(4), 6), times(Z, cyc(4), 2)));
    EXPECT_FALSE(morphisms_equal(times(Z, cyc(4), 1), times(Z, cyc(4), 3)));
    EXPECT_THROW(compose(times(Z, Z, 1), times(Z, cyc(4), 1)), TypeMismatch);
}

TEST(Abelian, IllDefinedMatrixRejected) {
    // Z/2 -> Z sending the generator to 1 does not respect 2x = 0.
    EXPECT_THROW(FgAbelianMorphism(cyc(2), Z, IntMatrix{{1}}), std::invalid_argument);
    EXPECT_NO_THROW(FgAbelianMorphism(cyc(2), cyc(4), IntMatrix{{2}}));
    EXPECT_THROW(FgAbelianMorphism(cyc(2), cyc(4), IntMatrix{{1}}), std::invalid_argument);
}

TEST(Abelian, ImagesAndSubgroups) {
    const auto im = image_subobject(times(Z, cyc(4), 2));
    EXPECT_TRUE(subobjects_equal(im, generated_subgroup(cyc(4), {{Integer(2)}})));
    EXPECT_FALSE(subobjects_equal(im, Ab::whole(cyc(4))));
    EXPECT_TRUE(contains(Ab::whole(cyc(4)), im));
    EXPECT_FALSE(contains(im, Ab::whole(cyc(4))));
    EXPECT_TRUE(subobjects_equal(image_subobject(times(Z, cyc(4), 3)), Ab::whole(cyc(4))));
}

TEST(Abelian, HomEnumeration) {
    EXPECT_EQ(enumerate_homs(cyc(2), cyc(2)).size(), 2u);
    const auto to3 = enumerate_homs(cyc(2), cyc(3));
    ASSERT_EQ(to3.size(), 1u);
    EXPECT_TRUE(Ab::is_zero(to3[0]));
    EXPECT_EQ(enumerate_homs(cyc(4), cyc(6)).size(), 2u);
    EXPECT_EQ(enumerate_homs(Z, cyc(5)).size(), 5u);
    EXPECT_EQ(enumerate_homs(cyc(2), Z).size(), 1u);
    EXPECT_THROW(enumerate_homs(Z, Z), InfiniteObject);
    EXPECT_THROW(enumerate_homs(cyc(256), FgAbelianObject({Integer(256), Integer(256)}), 16), EnumerationCapExceeded);
}

TEST(Abelian, ElementNumbering) {
    const FgAbelianObject g({Integer(2), Integer(3)});
    EXPECT_EQ(element_count(g), 6u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(element_index(g, element_at(g, i)), i);
    EXPECT_EQ(element_at(g, 0), (IntVector{Integer(0), Integer(0)}));
    EXPECT_EQ(g.canonical(), cyc(6));
}

TEST(Abelian, FactorizationExamples) {
    // u : Z -> Z/4 with u∘(×2) = ×2 (Pre side): u = 1 or u = 3.
    Ab::Problem p{Z, cyc(4), {{Side::Pre, times(Z, Z, 2), times(Z, cyc(4), 2)}}};
    const auto u = Ab::solve(p);
    ASSERT_TRUE(u);
    EXPECT_TRUE(morphisms_equal(compose(*u, times(Z, Z, 2)), times(Z, cyc(4), 2)));

    // Post side: (reduction Z/8 -> Z/2) ∘ u = the generator map Z -> Z/2.
    Ab::Problem q{Z, cyc(8), {{Side::Post, times(cyc(8), cyc(2), 1), times(Z, cyc(2), 1)}}};
    const auto v = Ab::solve(q);
    ASSERT_TRUE(v);
    EXPECT_TRUE(morphisms_equal(compose(times(cyc(8), cyc(2), 1), *v), times(Z, cyc(2), 1)));

    // No u on Z with u∘(×2) = 1.
    Ab::Problem none{Z, Z, {{Side::Pre, times(Z, Z, 2), times(Z, Z, 1)}}};
    EXPECT_FALSE(Ab::solve(none));
    // Same equation on Z/8, confirmed by enumerating all eight endomorphisms.
    Ab::Problem shadow{cyc(8), cyc(8), {{Side::Pre, times(cyc(8), cyc(8), 2), times(cyc(8), cyc(8), 1)}}};
    EXPECT_FALSE(Ab::solve(shadow));
    EXPECT_FALSE(promov::testing::factorization_exists_by_search<Ab>(shadow));
}

TEST(Abelian, SolverAgreesWithEnumeration) {
    Rng rng(77);
    std::size_t solvable = 0;
    for (int k = 0; k < 500; ++k) {
        const auto a = random_small_group(rng, 32, true);
        const auto b = random_small_group(rng, 32, true);
        const auto c = random_small_group(rng, 32, true);
        const auto ab = enumerate_homs(a, b);
        const auto bc = enumerate_homs(b, c);
        // u : b -> c with u ∘ g = h for random g : a -> b and h : a -> c,
        // or k ∘ u = h with u : a -> b for random k : b -> c.
        Ab::Problem p;
        if (k % 2 == 0) {
            const auto ac = enumerate_homs(a, c);
            p = Ab::Problem{b, c, {{Side::Pre, ab[draw(rng, ab.size())], ac[draw(rng, ac.size())]}}};
            if (k % 4 == 0) p.constraints[0].result = compose(bc[draw(rng, bc.size())], p.constraints[0].known);
        } else {
            const auto ac = enumerate_homs(a, c);
            p = Ab::Problem{a, b, {{Side::Post, bc[draw(rng, bc.size())], ac[draw(rng, ac.size())]}}};
            if (k % 4 == 1) p.constraints[0].result = compose(p.constraints[0].known, ab[draw(rng, ab.size())]);
        }
        const auto u = Ab::solve(p);
        const bool exists = promov::testing::factorization_exists_by_search<Ab>(p);
        ASSERT_EQ(u.has_value(), exists) << "instance " << k;
        if (u) {
            for (const auto& con : p.constraints) {
                const auto lhs = con.side == Side::Post ? compose(con.known, *u) : compose(*u, con.known);
                ASSERT_TRUE(morphisms_equal(lhs, con.result)) << "instance " << k;
            }
        }
        solvable += exists;
    }
    EXPECT_GT(solvable, 100u);
    EXPECT_LT(solvable, 500u);
}

TEST(Pointed, MapsAndHoms) {
    const PointedFiniteSet two(2);
    EXPECT_EQ(enumerate_homs(two, two).size(), 2u);
    EXPECT_EQ(enumerate_homs(PointedFiniteSet(3), PointedFiniteSet(2)).size(), 4u);
    EXPECT_THROW(PointedMap(two, two, {1, 0}), std::invalid_argument);
    EXPECT_THROW(PointedMap(two, two, {0, 2}), std::invalid_argument);
    const PointedMap f(PointedFiniteSet(3), two, {0, 1, 1});
    EXPECT_EQ(image_subobject(f).elements, (std::vector<std::size_t>{0, 1}));
    EXPECT_TRUE(Pt::is_zero(PointedMap::constant(two, PointedFiniteSet(3))));
}

TEST(Pointed, SolverAgreesWithEnumeration) {
    Rng rng(91);
    for (int k = 0; k < 500; ++k) {
        const PointedFiniteSet a(1 + draw(rng, 4)), b(1 + draw(rng, 4)), c(1 + draw(rng, 4));
        const auto ab = enumerate_homs(a, b);
        const auto bc = enumerate_homs(b, c);
        const auto ac = enumerate_homs(a, c);
        Pt::Problem p = k % 2 == 0 ? Pt::Problem{b, c, {{Side::Pre, ab[draw(rng, ab.size())], ac[draw(rng, ac.size())]}}}
                                   : Pt::Problem{a, b, {{Side::Post, bc[draw(rng, bc.size())], ac[draw(rng, ac.size())]}}};
        const auto u = Pt::solve(p);
        ASSERT_EQ(u.has_value(), promov::testing::factorization_exists_by_search<Pt>(p)) << "instance " << k;
    }
}

TEST(Forgetful, UnderlyingMaps) {
    const auto f = forgetful_to_sets(times(cyc(4), cyc(4), 2));
    EXPECT_EQ(f.images(), (std::vector<std::size_t>{0, 2, 0, 2}));
    EXPECT_EQ(forgetful_to_sets(cyc(6)).size, 6u);
    const auto g = times(cyc(4), cyc(2), 1);
    const auto h = times(cyc(2), cyc(6), 3);
    EXPECT_EQ(forgetful_to_sets(compose(h, g)), compose(forgetful_to_sets(h), forgetful_to_sets(g)));
    EXPECT_EQ(forgetful_to_sets(FgAbelianMorphism::identity(cyc(5))), PointedMap::identity(PointedFiniteSet(5)));
}
