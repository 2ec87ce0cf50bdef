#include "promov/families.hpp"
#include "promov/systems.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace promov;

namespace {

using Ab = AbelianCategory;

const FgAbelianObject Z = FgAbelianObject::integers();

FgAbelianObject cyc(long n) { return FgAbelianObject::cyclic(n); }

FgAbelianMorphism times(const FgAbelianObject& s, const FgAbelianObject& t, long k) {
    return FgAbelianMorphism(s, t, IntMatrix{{k}});
}

bool has_kind(const std::vector<Violation>& vs, const std::string& kind, std::vector<Index> at = {}) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind && (at.empty() || v.at == at); });
}

AbelianSystem diamond(long right_top) {
    const auto p = FiniteDirectedPoset::from_pairs({"bot", "l", "r", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    const auto g = cyc(4);
    AbelianSystem::BondTable b;
    b.emplace(std::make_pair(Index{0}, Index{1}), times(g, g, 1));
    b.emplace(std::make_pair(Index{0}, Index{2}), times(g, g, 1));
    b.emplace(std::make_pair(Index{1}, Index{3}), times(g, g, 1));
    b.emplace(std::make_pair(Index{2}, Index{3}), times(g, g, right_top));
    b.emplace(std::make_pair(Index{0}, Index{3}), times(g, g, 1));
    return AbelianSystem::finite(p, {g, g, g, g}, b);
}

// f_μ ∘ p_{μλ} and q_{μμ'} ∘ f_{μ'λ} agree only once λ >= μ + μ', so twelve
// stages need a probe of 24.
const Horizon kLong{12, 24, 25, 8};

}  // namespace

TEST(InverseSystem, ConstantSystemsValidate) {
    EXPECT_TRUE(validate_system(constant_sequence<Ab>(Z), Horizon{}).empty());
    EXPECT_TRUE(validate_system(constant_system<Ab>(cyc(2)), Horizon{}).empty());
    EXPECT_TRUE(validate_system(rudimentary<Ab>(cyc(3)), Horizon{}).empty());
    EXPECT_EQ(constant_sequence<Ab>(Z).index().first(), 1u);
}

TEST(InverseSystem, NonCommutingDiamond) {
    EXPECT_TRUE(validate_system(diamond(1), Horizon{}).empty());
    const auto vs = validate_system(diamond(3), Horizon{});
    ASSERT_FALSE(vs.empty());
    EXPECT_TRUE(has_kind(vs, "functoriality", {0, 2, 3}));
}

TEST(InverseSystem, MissingBondReported) {
    const auto g = cyc(2);
    AbelianSystem::BondTable b;
    b.emplace(std::make_pair(Index{0}, Index{1}), times(g, g, 1));
    const auto x = AbelianSystem::finite(FiniteDirectedPoset::chain(3), {g, g, g}, b);
    EXPECT_TRUE(has_kind(validate_system(x, Horizon{}), "missing-bond"));
}

TEST(InverseSystem, DyadicSystemsValidate) {
    const auto ex = dyadic_example();
    EXPECT_TRUE(validate_system(ex.doubling, kLong).empty());
    EXPECT_TRUE(validate_system(ex.quotients, kLong).empty());
    EXPECT_TRUE(validate_morphism(ex.reduction, kLong).empty());
    EXPECT_TRUE(has_kind(validate_morphism(ex.reduction, Horizon{12, 12, 13, 8}), "coherence"));
    EXPECT_EQ(ex.quotients.object(3), cyc(8));
    EXPECT_EQ(ex.doubling.bond(1, 4).matrix(), (IntMatrix{{8}}));
    EXPECT_THROW(ex.doubling.bond(4, 1), std::invalid_argument);
}

TEST(InverseSystem, WrongEpimorphicFlagReported) {
    const auto x = AbelianSystem::sequence(
        NatIndex{1}, [](Index) { return FgAbelianObject::integers(); },
        [](Index) { return FgAbelianMorphism(FgAbelianObject::integers(), FgAbelianObject::integers(), IntMatrix{{2}}); },
        SystemFlags{true, std::nullopt});
    EXPECT_TRUE(has_kind(validate_system(x, Horizon{}), "flag-epimorphic"));
}

TEST(SystemMorphism, MiscolouredReductionIncoherent) {
    const auto vs = validate_morphism(miscoloured_reduction(), Horizon{});
    ASSERT_FALSE(vs.empty());
    EXPECT_TRUE(has_kind(vs, "coherence", {2, 3}));
    EXPECT_FALSE(has_kind(vs, "coherence", {1, 2}));
}

TEST(SystemMorphism, RestrictionFactorsThroughBonds) {
    const auto ex = dyadic_example();
    // f_{2,4} = f_2 ∘ p_{24} sends 1 to 4 mod 4 = 0.
    EXPECT_TRUE(Ab::is_zero(restrict(ex.reduction, 2, 4)));
    EXPECT_EQ(restrict(ex.reduction, 3, 4).matrix(), (IntMatrix{{2}}));
    EXPECT_THROW(restrict(ex.reduction, 3, 2), std::invalid_argument);
}

TEST(SystemMorphism, IdentityAndCompositionLaws) {
    const auto ex = dyadic_example();
    const auto& f = ex.reduction;
    const Horizon h{6, 12, 13, 8};
    const auto left = compose_morphisms(identity_morphism(ex.quotients), f);
    const auto right = compose_morphisms(f, identity_morphism(ex.doubling));
    for (Index mu = 1; mu <= 6; ++mu) {
        EXPECT_TRUE(Ab::equal(left.component(mu), f.component(mu)));
        EXPECT_TRUE(Ab::equal(right.component(mu), f.component(mu)));
    }
    const auto s1 = shift_morphism(ex.doubling, 1);
    const auto s2 = shift_morphism(ex.doubling, 2);
    const auto a = compose_morphisms(f, compose_morphisms(s1, s2));
    const auto b = compose_morphisms(compose_morphisms(f, s1), s2);
    EXPECT_TRUE(validate_morphism(a, h).empty());
    for (Index mu = 1; mu <= 6; ++mu) {
        EXPECT_EQ(a.phi()(mu), b.phi()(mu));
        EXPECT_TRUE(Ab::equal(a.component(mu), b.component(mu)));
    }
    EXPECT_THROW(compose_morphisms(f, f), TypeMismatch);
}

TEST(SystemMorphism, Equivalence) {
    const auto ex = dyadic_example();
    const Horizon h;
    EXPECT_TRUE(are_equivalent(ex.reduction, ex.reduction, h).equivalent);
    // The shift p_{n,n+1} is equivalent to the identity on any sequence.
    const auto r = are_equivalent(shift_morphism(ex.doubling, 1), identity_morphism(ex.doubling), h);
    EXPECT_TRUE(r.equivalent);
    EXPECT_FALSE(r.exact);

    const auto x = constant_system<Ab>(cyc(2));
    const auto zero = AbelianMorphism::rule(x, x, IndexMap::identity(), [](Index) { return times(cyc(2), cyc(2), 0); });
    const auto rep = are_equivalent(zero, identity_morphism(x), h);
    EXPECT_FALSE(rep.equivalent);
    EXPECT_TRUE(rep.exact);
    EXPECT_TRUE(rep.failing_mu.has_value());
}

TEST(Cone, CompatibilityChecked) {
    const auto ex = dyadic_example();
    ConeMorphism<Ab> good{Z, {{1, times(Z, cyc(2), 1)}, {2, times(Z, cyc(4), 1)}, {3, times(Z, cyc(8), 1)}}};
    EXPECT_TRUE(validate_cone(good, ex.quotients).empty());
    ConeMorphism<Ab> bad{Z, {{1, times(Z, cyc(2), 1)}, {2, times(Z, cyc(4), 2)}}};
    EXPECT_TRUE(has_kind(validate_cone(bad, ex.quotients), "cone", {1, 2}));
}

TEST(Horizon, CheckRejectsInconsistentBounds) {
    EXPECT_NO_THROW(Horizon{}.check());
    EXPECT_THROW((Horizon{6, 12, 5, 8}.check()), std::invalid_argument);
    EXPECT_THROW((Horizon{0, 12, 13, 8}.check()), std::invalid_argument);
}
