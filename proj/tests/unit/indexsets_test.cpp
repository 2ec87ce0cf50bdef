#include "promov/indexsets.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace promov;

namespace {

bool has_axiom(const std::vector<PosetViolation>& vs, PosetViolation::Axiom a) {
    return std::any_of(vs.begin(), vs.end(), [&](const auto& v) { return v.axiom == a; });
}

FiniteDirectedPoset diamond() {
    return FiniteDirectedPoset::from_pairs({"bot", "l", "r", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

}  // namespace

TEST(Poset, ChainAndDiamondValidate) {
    EXPECT_TRUE(validate_poset(FiniteDirectedPoset::chain(4)).empty());
    EXPECT_TRUE(validate_poset(diamond()).empty());
    EXPECT_TRUE(validate_poset(FiniteDirectedPoset::singleton()).empty());
    EXPECT_EQ(diamond().top(), 3u);
    EXPECT_EQ(diamond().upper_bound(1, 2), 3u);
    EXPECT_EQ(diamond().upper_bound(0, 1), 1u);
    EXPECT_EQ(diamond().find("r"), std::optional<Index>(2));
    EXPECT_FALSE(diamond().find("x"));
}

TEST(Poset, ViolationsNamed) {
    // Two maximal elements: not directed.
    const auto vee = FiniteDirectedPoset::from_pairs({"a", "b", "c"}, {{0, 1}, {0, 2}});
    EXPECT_TRUE(has_axiom(validate_poset(vee), PosetViolation::Axiom::Directed));

    std::vector<std::vector<bool>> cyc{{true, true}, {true, true}};
    EXPECT_TRUE(has_axiom(validate_poset(FiniteDirectedPoset({"a", "b"}, cyc)), PosetViolation::Axiom::Antisymmetric));

    std::vector<std::vector<bool>> irreflexive{{false}};
    EXPECT_TRUE(has_axiom(validate_poset(FiniteDirectedPoset({"a"}, irreflexive)), PosetViolation::Axiom::Reflexive));

    std::vector<std::vector<bool>> gap{{true, true, false}, {false, true, true}, {false, false, true}};
    EXPECT_TRUE(has_axiom(validate_poset(FiniteDirectedPoset({"a", "b", "c"}, gap)), PosetViolation::Axiom::Transitive));
}

// Every relation on at most three elements, compared with a direct reading of the axioms.
TEST(Poset, AllSmallRelationsAgreeWithAxioms) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::size_t cells = n * n;
        for (unsigned mask = 0; mask < (1u << cells); ++mask) {
            std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) leq[i][j] = (mask >> (i * n + j)) & 1u;
            bool refl = true, anti = true, trans = true, dir = true;
            for (std::size_t a = 0; a < n; ++a) {
                refl = refl && leq[a][a];
                for (std::size_t b = 0; b < n; ++b) {
                    if (a != b && leq[a][b] && leq[b][a]) anti = false;
                    bool bound = false;
                    for (std::size_t c = 0; c < n; ++c) {
                        if (leq[a][b] && leq[b][c] && !leq[a][c]) trans = false;
                        bound = bound || (leq[a][c] && leq[b][c]);
                    }
                    dir = dir && bound;
                }
            }
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
            const auto vs = validate_poset(FiniteDirectedPoset(labels, leq));
            ASSERT_EQ(has_axiom(vs, PosetViolation::Axiom::Reflexive), !refl) << mask;
            ASSERT_EQ(has_axiom(vs, PosetViolation::Axiom::Antisymmetric), !anti) << mask;
            ASSERT_EQ(has_axiom(vs, PosetViolation::Axiom::Transitive), !trans) << mask;
            ASSERT_EQ(vs.empty(), refl && anti && trans && dir) << mask;
        }
    }
}

TEST(IndexSet, ChainBehaviour) {
    const IndexSet nat(NatIndex{1});
    EXPECT_FALSE(nat.is_finite());
    EXPECT_EQ(nat.first(), 1u);
    EXPECT_FALSE(nat.contains(0));
    EXPECT_TRUE(nat.leq(2, 5));
    EXPECT_EQ(nat.upper_bound(3, 7), 7u);
    EXPECT_EQ(nat.elements(4), (std::vector<Index>{1, 2, 3, 4}));
    EXPECT_EQ(nat.at_least(3, 5), (std::vector<Index>{3, 4, 5}));
}

TEST(IndexMap, AffineAndTable) {
    const auto twice = IndexMap::affine(2, 0);
    EXPECT_EQ(twice(3), 6u);
    const auto shift = IndexMap::affine(1, 1);
    EXPECT_EQ(twice.after(shift, IndexSet(NatIndex{1}))(3), 8u);
    EXPECT_EQ(IndexMap::constant(5)(100), 5u);

    const auto t = IndexMap::table({3, 3, 3, 3});
    EXPECT_TRUE(t.check(IndexSet(FiniteDirectedPoset::chain(4)), IndexSet(diamond())).empty());
    EXPECT_FALSE(IndexMap::table({4}).check(IndexSet(FiniteDirectedPoset::singleton()), IndexSet(diamond())).empty());
}
