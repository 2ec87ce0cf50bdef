#pragma once

// Inverse systems over a category backend, morphisms between them, cones,
// and the equivalence relation on morphisms.

#include "promov/abelian.hpp"
#include "promov/categories.hpp"
#include "promov/indexsets.hpp"
#include "promov/pointed.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace promov {

/// Bounds under which statements about sequences are checked.
///   mu_max       last μ examined (outer quantifier)
///   lambda_max   the probed candidate index λ
///   muprime_max  last deeper index (μ′ for movability, λ′ for co-movability)
///   cone_max     depth of truncated cones and of the λ* search
struct Horizon {
    Index mu_max = 6;
    Index lambda_max = 12;
    Index muprime_max = 13;
    Index cone_max = 8;

    /// Throws std::invalid_argument when muprime_max < mu_max or a bound is zero.
    void check() const;
    friend bool operator==(const Horizon&, const Horizon&) = default;
};

/// Provenance of a generated sequence or morphism, kept for reports and serialization.
struct Recipe {
    std::string family;
    std::vector<std::pair<std::string, std::string>> params;

    bool empty() const { return family.empty(); }
    std::string to_string() const;
    friend bool operator==(const Recipe&, const Recipe&) = default;
};

struct Periodicity {
    Index offset = 0;
    Index period = 1;
    friend bool operator==(const Periodicity&, const Periodicity&) = default;
};

struct SystemFlags {
    bool all_bonds_epimorphic = false;
    std::optional<Periodicity> eventually_periodic;
    friend bool operator==(const SystemFlags&, const SystemFlags&) = default;
};

/// One failed condition found while validating a system or a morphism.
struct Violation {
    std::string kind;
    std::vector<Index> at;
    std::string message;
};

template <CategoryBackend C>
class InverseSystem {
public:
    using Object = typename C::Object;
    using Morphism = typename C::Morphism;
    using BondTable = std::map<std::pair<Index, Index>, Morphism>;

    InverseSystem();

    /// bonds[(a, b)] = p_ab : X_b -> X_a for a <= b; reflexive entries may be omitted.
    static InverseSystem finite(FiniteDirectedPoset poset, std::vector<Object> objects, BondTable bonds,
                                SystemFlags flags = {});
    /// step(n) = p_{n,n+1} : X_{n+1} -> X_n.
    static InverseSystem sequence(NatIndex index, std::function<Object(Index)> object,
                                  std::function<Morphism(Index)> step, SystemFlags flags = {}, Recipe recipe = {});
    /// Table-backed eventually periodic sequence: objects[i] and steps[i] describe
    /// index first + i for first + i < offset + period, and repeat with the period after offset.
    static InverseSystem periodic(NatIndex index, Periodicity periodicity, std::vector<Object> objects,
                                  std::vector<Morphism> steps, bool all_bonds_epimorphic = false,
                                  Recipe recipe = {});
    /// The rudimentary system (X) on a one-element index set.
    static InverseSystem rudimentary(Object x);

    const IndexSet& index() const;
    bool is_sequence() const { return !index().is_finite(); }
    Object object(Index i) const;
    /// p_{lo,hi} : X_hi -> X_lo. Throws std::invalid_argument unless lo <= hi.
    Morphism bond(Index lo, Index hi) const;
    Morphism step(Index n) const;

    const SystemFlags& flags() const;
    const Recipe& recipe() const;
    /// Finite systems: the bond table as supplied (without defaulted identities).
    const BondTable& bond_table() const;
    /// Periodic sequences: the defining tables.
    const std::vector<Object>& periodic_objects() const;
    const std::vector<Morphism>& periodic_steps() const;
    bool is_periodic_table() const;

    bool same_as(const InverseSystem& other) const;

private:
    struct Impl;
    explicit InverseSystem(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

template <CategoryBackend C>
std::vector<Violation> validate_system(const InverseSystem<C>& x, const Horizon& h);

/// (f_μ, φ): X -> Y with φ : M -> Λ and f_μ : X_{φ(μ)} -> Y_μ.
template <CategoryBackend C>
class SystemMorphism {
public:
    using Morphism = typename C::Morphism;

    SystemMorphism() = default;
    static SystemMorphism table(InverseSystem<C> source, InverseSystem<C> target, IndexMap phi,
                                std::vector<Morphism> components);
    static SystemMorphism rule(InverseSystem<C> source, InverseSystem<C> target, IndexMap phi,
                               std::function<Morphism(Index)> component, Recipe recipe = {});
    /// components[i] is f at first + i, repeating with the period from offset on.
    static SystemMorphism periodic(InverseSystem<C> source, InverseSystem<C> target, IndexMap phi,
                                   Periodicity periodicity, std::vector<Morphism> components);

    const InverseSystem<C>& source() const { return source_; }
    const InverseSystem<C>& target() const { return target_; }
    const IndexMap& phi() const { return phi_; }
    const Recipe& recipe() const { return recipe_; }
    /// Table entries for tables and periodic morphisms; empty for rules.
    const std::vector<Morphism>& table_components() const { return table_; }
    const std::optional<Periodicity>& periodicity() const { return periodicity_; }

    Morphism component(Index mu) const;
    /// f_{μλ} = f_μ ∘ p_{φ(μ)λ}. Throws std::invalid_argument unless φ(μ) <= λ.
    Morphism restricted(Index mu, Index lambda) const;

private:
    InverseSystem<C> source_;
    InverseSystem<C> target_;
    IndexMap phi_ = IndexMap::identity();
    std::function<Morphism(Index)> component_;
    std::vector<Morphism> table_;
    std::optional<Periodicity> periodicity_;
    Recipe recipe_;
};

/// A finite piece of a cone from an object into a system: legs at chosen indices.
template <CategoryBackend C>
struct ConeMorphism {
    typename C::Object source;
    std::vector<std::pair<Index, typename C::Morphism>> legs;
};

/// Leg compatibility q_{ab} ∘ leg(b) = leg(a) for every comparable pair of legs.
template <CategoryBackend C>
std::vector<Violation> validate_cone(const ConeMorphism<C>& cone, const InverseSystem<C>& y);

/// Thrown by checkers and operations that receive an invalid morphism.
class InvalidMorphism : public std::invalid_argument {
public:
    InvalidMorphism(const std::string& what, std::vector<Violation> violations)
        : std::invalid_argument(what), violations_(std::move(violations)) {}
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

template <CategoryBackend C>
std::vector<Violation> validate_morphism(const SystemMorphism<C>& f, const Horizon& h);

/// The μ values a horizon-bounded check visits: all of a finite M, first..mu_max on the chain.
std::vector<Index> mu_range(const IndexSet& m, const Horizon& h);

template <CategoryBackend C>
typename C::Morphism restrict(const SystemMorphism<C>& f, Index mu, Index lambda) {
    return f.restricted(mu, lambda);
}

template <CategoryBackend C>
SystemMorphism<C> identity_morphism(const InverseSystem<C>& x);

/// (g ∘ f): χ = φ ∘ ψ, h_ν = g_ν ∘ f_{ψ(ν)}. Throws TypeMismatch unless target(f) is source(g).
template <CategoryBackend C>
SystemMorphism<C> compose_morphisms(const SystemMorphism<C>& g, const SystemMorphism<C>& f);

struct EquivalenceReport {
    bool equivalent = false;
    bool exact = false;
    /// For each μ checked: the λ′ at which f_{μλ′} = f′_{μλ′}, if any.
    std::vector<std::pair<Index, std::optional<Index>>> indices;
    std::optional<Index> failing_mu;
};

/// Equal restrictions at some λ′ >= φ(μ), φ′(μ) for every μ. Finite posets are
/// searched exhaustively in element order; on sequences only the largest λ′ in
/// range is tested, since equality at λ′ persists at every larger index.
template <CategoryBackend C>
EquivalenceReport are_equivalent(const SystemMorphism<C>& f, const SystemMorphism<C>& g, const Horizon& h);

}  // namespace promov
