#pragma once

// Named example systems and seeded generators for instance corpora.

#include "promov/systems.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace promov {

using AbelianSystem = InverseSystem<AbelianCategory>;
using AbelianMorphism = SystemMorphism<AbelianCategory>;
using SetSystem = InverseSystem<PointedSetCategory>;
using SetMorphism = SystemMorphism<PointedSetCategory>;
using Rng = std::mt19937_64;

/// Uniform-ish draw in [0, n); portable across standard libraries.
inline std::size_t draw(Rng& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

// ---------------------------------------------------------------------------
// The dyadic example: F = (Z, ×2), G = (Z/2^n, reduction), f_n : Z -> Z/2^n.
// All three are indexed from 1.

/// (Z, ×factor) from index 1.
AbelianSystem doubling_sequence(long factor = 2);
/// (Z/p^n, reduction) from index 1; all bonds are onto.
AbelianSystem prime_power_quotients(long p = 2);
/// f_n sends the generator of Z to the generator of Z/p^n.
AbelianMorphism power_reduction(const AbelianSystem& integers, const AbelianSystem& quotients);

struct DyadicExample {
    AbelianSystem doubling;
    AbelianSystem quotients;
    AbelianMorphism reduction;
};
DyadicExample dyadic_example();

/// (Z, id) -> (Z/2^n) with f_n the generator map except f_2 = ×3; coherence
/// first fails at the pair (2, 3).
AbelianMorphism miscoloured_reduction();

// ---------------------------------------------------------------------------
// Small constant and degenerate systems.

template <CategoryBackend C>
InverseSystem<C> rudimentary(const typename C::Object& x) {
    return InverseSystem<C>::rudimentary(x);
}

/// x with identity bonds over the finite chain 0 < 1 < ... < length-1.
template <CategoryBackend C>
InverseSystem<C> constant_system(const typename C::Object& x, std::size_t length = 4);

/// x with identity bonds over the natural numbers from 1.
template <CategoryBackend C>
InverseSystem<C> constant_sequence(const typename C::Object& x);
template <>
InverseSystem<AbelianCategory> constant_sequence<AbelianCategory>(const FgAbelianObject& x);
template <>
InverseSystem<PointedSetCategory> constant_sequence<PointedSetCategory>(const PointedFiniteSet& x);

/// Pointed sets over the chain 0 < 1 < 2: every object has two points,
/// p_01 = p_12 = id but p_02 is constant. Not an inverse system.
SetSystem corrupted_bond_chain();

// ---------------------------------------------------------------------------
// Random finite instances (at most max_indices indices, at most max_size elements).

FiniteDirectedPoset random_poset(Rng& rng, std::size_t max_indices);
/// A finite abelian group of order at most max_order from a fixed list of small groups.
FgAbelianObject random_small_group(Rng& rng, std::size_t max_order, bool allow_trivial);
SetSystem random_finite_set_system(Rng& rng, const FiniteDirectedPoset& poset, std::size_t max_size);
AbelianSystem random_finite_abelian_system(Rng& rng, const FiniteDirectedPoset& poset, std::size_t max_order);

/// A coherent morphism between finite systems: components factor the legs of
/// a random cone X_top -> Y through a random index below the top.
template <CategoryBackend C>
SystemMorphism<C> random_finite_morphism(Rng& rng, const InverseSystem<C>& x, const InverseSystem<C>& y);

/// Same, with φ order-reversing and the top of M as designated cofinal subset.
template <CategoryBackend C>
SystemMorphism<C> random_decreasing_phi_morphism(Rng& rng, const InverseSystem<C>& x, const InverseSystem<C>& y);

// ---------------------------------------------------------------------------
// Random eventually periodic sequences.

struct PeriodicShape {
    Index first = 1;
    Periodicity periodicity{1, 1};
};

/// Objects drawn by `object`, steps drawn uniformly from the hom-sets.
template <CategoryBackend C>
InverseSystem<C> random_periodic_sequence(Rng& rng, const PeriodicShape& shape,
                                          const std::function<typename C::Object(Rng&)>& object,
                                          const std::string& family);

PeriodicShape random_shape(Rng& rng, std::size_t period);
SetSystem random_set_sequence(std::uint64_t seed, std::size_t period, std::size_t max_size);
AbelianSystem random_abelian_sequence(std::uint64_t seed, std::size_t period, std::size_t max_order);

/// Periodic sequence of Z (torsion == 0) or Z + Z/torsion. Each step scales
/// the free part by one of 0, 1, -1, 2, 3, the torsion part by any residue,
/// and may send the free generator into the torsion part.
AbelianSystem random_integral_sequence(Rng& rng, const PeriodicShape& shape, long torsion);

/// n -> c · p_{n,n+k} : X -> X.
AbelianMorphism scaled_shift(const AbelianSystem& x, long c, Index k);

/// A level morphism (φ = id) between periodic sequences sharing first index
/// and periodicity; nullopt if none was found.
template <CategoryBackend C>
std::optional<SystemMorphism<C>> random_level_morphism(Rng& rng, const InverseSystem<C>& x,
                                                       const InverseSystem<C>& y);

/// φ(n) = n + k, f_n = p_{n,n+k}: X -> X. k = 0 gives the identity.
template <CategoryBackend C>
SystemMorphism<C> shift_morphism(const InverseSystem<C>& x, Index k);

/// f′ with φ′(μ) >= φ(μ) and f′_μ = f_μ ∘ p_{φ(μ)φ′(μ)}, equivalent to f.
template <CategoryBackend C>
SystemMorphism<C> perturb_equivalent(const SystemMorphism<C>& f, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Constructed instances for transfer statements (abelian backend).

/// Finite X, sequence Y constant from some index on, φ constant at the top of X.
AbelianMorphism bounded_phi_morphism(std::uint64_t seed);

/// Levelwise direct sum; both systems over the same index set (same poset,
/// or periodic sequences with equal shape).
AbelianSystem direct_sum(const AbelianSystem& x, const AbelianSystem& w);
/// Inclusion X -> X ⊕ W and projection X ⊕ W -> X.
AbelianMorphism summand_inclusion(const AbelianSystem& x, const AbelianSystem& sum);
AbelianMorphism summand_projection(const AbelianSystem& sum, const AbelianSystem& x);

struct DominationPair {
    AbelianMorphism f;  // X -> Y
    AbelianMorphism g;  // Y -> X, g ∘ f = 1_X
};
/// X is a direct summand of Y. Even seeds use finite posets, odd seeds periodic
/// sequences of finite groups, except seeds 3 mod 4, which use integral sequences.
DominationPair domination_pair(std::uint64_t seed);

/// Seeds 3 mod 4 use integral sequences with g a scaled shift.
struct RightInverseInstance {
    AbelianMorphism f;  // X -> Y, onto a summand
    AbelianMorphism s;  // Y -> X, f ∘ s = 1_Y
    AbelianMorphism g;  // Y -> Z
};
std::optional<RightInverseInstance> right_inverse_instance(std::uint64_t seed);

// ---------------------------------------------------------------------------
// Sequences and morphisms described by a recipe (used by file formats).

/// Families: "doubling"(factor), "prime-power"(p), "constant"(factors).
AbelianSystem abelian_sequence_from_recipe(const Recipe& r);
/// Families: "reduction", "identity", "shift"(k).
AbelianMorphism abelian_morphism_from_recipe(const Recipe& r, const AbelianSystem& source,
                                             const AbelianSystem& target);

}  // namespace promov
