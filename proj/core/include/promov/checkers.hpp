#pragma once

// Decision procedures for movability-type properties of morphisms of inverse
// systems, with witness certificates and horizon-bounded refutations.

#include "promov/systems.hpp"

#include <optional>
#include <string>
#include <vector>

namespace promov {

enum class Property {
    Movable,
    StronglyMovable,
    UniformlyMovable,
    CoMovable,
    StronglyCoMovable,
    UniformlyCoMovable,
    MittagLeffler,
    C0Movable,
    C0UniformlyMovable,
};

enum class Status { Holds, HoldsStabilized, HoldsAtHorizon, FailsAtHorizon, Fails, Unknown };

/// How a per-μ result was certified beyond the indices actually examined.
enum class Rule {
    None,
    Exhaustive,           // every quantifier ranged over a finite set
    ZeroMap,              // f_{μλ} = 0, so zero witnesses solve every deeper equation
    EpimorphicBonds,      // onto bonds plus a projective source give every lift
    EventualPeriodicity,  // the solvability chain is constant from a computed index on
    BoundedIndex,         // a finite source index set has a greatest element
    Vacuous,              // nothing to check
};

std::string to_string(Property p);
std::string to_string(Status s);
std::string to_string(Rule r);
std::optional<Property> parse_property(const std::string& name);
std::optional<Status> parse_status(const std::string& name);
std::optional<Rule> parse_rule(const std::string& name);
const std::vector<Property>& all_properties();

bool holds(Status s);
/// 0 Holds/HoldsStabilized, 1 Fails/FailsAtHorizon, 3 Unknown/HoldsAtHorizon.
int exit_code(Status s);

/// Printed next to every status that was not decided exactly.
extern const char* const kHorizonDisclaimer;

template <CategoryBackend C>
struct Witness {
    /// μ′ for movability, λ′ for co-movability, λ″ for C0 checks, leg index for cones.
    Index deep = 0;
    std::optional<Index> lambda_star;
    /// C0 checks: position of X0 in the C0 list and of h in the enumerated hom-set.
    std::optional<std::size_t> c0_object;
    std::optional<std::size_t> c0_hom;
    typename C::Morphism morphism;

    friend bool operator==(const Witness&, const Witness&) = default;
};

template <CategoryBackend C>
struct MuRecord {
    Index mu = 0;
    Status status = Status::Unknown;
    std::optional<Index> lambda;
    Rule rule = Rule::None;
    std::vector<Witness<C>> witnesses;
    /// Finite source index sets: every index λ >= φ(μ) that works, in element order.
    std::vector<Index> index_set;
    /// Mittag-Leffler: the image f_{μλ′}(X_{λ′}) for each λ′ examined.
    std::vector<std::pair<Index, typename C::Subobject>> chain;
    std::string note;

    friend bool operator==(const MuRecord&, const MuRecord&) = default;
};

struct Refutation {
    Index mu = 0;
    Index lambda = 0;
    Index deep = 0;
    std::optional<std::size_t> c0_object;
    std::optional<std::size_t> c0_hom;
    std::string reason;

    friend bool operator==(const Refutation&, const Refutation&) = default;
};

template <CategoryBackend C>
struct Verdict {
    Property property = Property::Movable;
    Status status = Status::Unknown;
    Horizon horizon;
    bool exact = false;
    std::vector<MuRecord<C>> records;
    std::optional<Refutation> refutation;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct CheckOptions {
    /// Run without validating the morphism first (inputs known to be broken).
    bool skip_validation = false;
    /// Worker threads for independent μ; 1 runs inline.
    unsigned threads = 1;
};

template <CategoryBackend C>
Verdict<C> check_morphism(Property p, const SystemMorphism<C>& f, const Horizon& h, const CheckOptions& o = {});

template <CategoryBackend C>
Verdict<C> movable_morphism(const SystemMorphism<C>& f, const Horizon& h, const CheckOptions& o = {}) {
    return check_morphism(Property::Movable, f, h, o);
}
template <CategoryBackend C>
Verdict<C> strongly_movable_morphism(const SystemMorphism<C>& f, const Horizon& h, const CheckOptions& o = {}) {
    return check_morphism(Property::StronglyMovable, f, h, o);
}
template <CategoryBackend C>
Verdict<C> uniformly_movable_morphism(const SystemMorphism<C>& f, const Horizon& h, const CheckOptions& o = {}) {
    return check_morphism(Property::UniformlyMovable, f, h, o);
}
template <CategoryBackend C>
Verdict<C> co_movable_morphism(const SystemMorphism<C>& f, const Horizon& h, const CheckOptions& o = {}) {
    return check_morphism(Property::CoMovable, f, h, o);
}
template <CategoryBackend C>
Verdict<C> strongly_co_movable_morphism(const SystemMorphism<C>& f, const Horizon& h, const CheckOptions& o = {}) {
    return check_morphism(Property::StronglyCoMovable, f, h, o);
}
template <CategoryBackend C>
Verdict<C> uniformly_co_movable_morphism(const SystemMorphism<C>& f, const Horizon& h, const CheckOptions& o = {}) {
    return check_morphism(Property::UniformlyCoMovable, f, h, o);
}
template <CategoryBackend C>
Verdict<C> mittag_leffler(const SystemMorphism<C>& f, const Horizon& h, const CheckOptions& o = {}) {
    return check_morphism(Property::MittagLeffler, f, h, o);
}

/// System-level properties are the morphism properties of the identity.
template <CategoryBackend C>
Verdict<C> check_system(Property p, const InverseSystem<C>& x, const Horizon& h, const CheckOptions& o = {}) {
    return check_morphism(p, identity_morphism(x), h, o);
}
template <CategoryBackend C>
Verdict<C> movable_system(const InverseSystem<C>& x, const Horizon& h, const CheckOptions& o = {}) {
    return check_system(Property::Movable, x, h, o);
}
template <CategoryBackend C>
Verdict<C> strongly_movable_system(const InverseSystem<C>& x, const Horizon& h, const CheckOptions& o = {}) {
    return check_system(Property::StronglyMovable, x, h, o);
}
template <CategoryBackend C>
Verdict<C> uniformly_movable_system(const InverseSystem<C>& x, const Horizon& h, const CheckOptions& o = {}) {
    return check_system(Property::UniformlyMovable, x, h, o);
}

/// C0-movability of X with respect to the given test objects.
template <CategoryBackend C>
Verdict<C> c0_movable_system(const InverseSystem<C>& x, const std::vector<typename C::Object>& c0, const Horizon& h,
                             const CheckOptions& o = {});
template <CategoryBackend C>
Verdict<C> c0_uniformly_movable_system(const InverseSystem<C>& x, const std::vector<typename C::Object>& c0,
                                       const Horizon& h, const CheckOptions& o = {});

/// For an eventually periodic sequence with finite objects from max(offset, base)
/// on: the least n0 + k·period after which the image chain of the period
/// endomorphism P = p_{n0,n0+period} is constant, n0 = max(offset, base).
/// Every solvability or image chain fed through the tail of z is constant from
/// this index on. nullopt when the flag is absent or an object is infinite.
template <CategoryBackend C>
std::optional<Index> stabilization_index(const InverseSystem<C>& z, Index base);

/// Re-check every witness in the verdict against the defining equations.
/// Returns a description of each witness that fails.
template <CategoryBackend C>
std::vector<std::string> verify_witnesses(const Verdict<C>& v, const SystemMorphism<C>& f,
                                          const std::vector<typename C::Object>& c0 = {});

/// Human-readable report; restates the horizon for every non-exact status.
template <CategoryBackend C>
std::string render_text(const Verdict<C>& v);

}  // namespace promov
