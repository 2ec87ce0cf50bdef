#pragma once

// Finitely generated abelian groups presented as Z/e_1 + ... + Z/e_k (e_i = 0
// meaning Z) and homomorphisms given by integer matrices.

#include "promov/categories.hpp"
#include "promov/intlinalg.hpp"
#include "promov/pointed.hpp"

#include <optional>
#include <string>
#include <vector>

namespace promov {

class FgAbelianObject {
public:
    FgAbelianObject() = default;
    /// Throws std::invalid_argument on a negative factor.
    explicit FgAbelianObject(IntVector factors);

    static FgAbelianObject integers() { return FgAbelianObject({Integer(0)}); }
    static FgAbelianObject cyclic(const Integer& n) { return FgAbelianObject({n}); }
    static FgAbelianObject trivial() { return {}; }

    std::size_t rank() const { return factors_.size(); }
    const Integer& factor(std::size_t i) const { return factors_[i]; }
    const IntVector& factors() const { return factors_; }

    bool is_finite() const;
    /// Number of elements, or nullopt for infinite groups.
    std::optional<Integer> order() const;
    /// Invariant factor form: nontrivial torsion factors d_1 | d_2 | ... then Z's.
    FgAbelianObject canonical() const;

    std::string to_string() const;

    friend bool operator==(const FgAbelianObject&, const FgAbelianObject&) = default;

private:
    IntVector factors_;
};

/// Matrix acts on column vectors: target.rank() rows, source.rank() columns.
/// Entries are kept reduced modulo the target factor of their row.
class FgAbelianMorphism {
public:
    FgAbelianMorphism() = default;
    /// Throws std::invalid_argument on a shape mismatch or when the matrix
    /// does not respect the source relations.
    FgAbelianMorphism(FgAbelianObject source, FgAbelianObject target, IntMatrix matrix);

    static FgAbelianMorphism identity(const FgAbelianObject& a);
    static FgAbelianMorphism zero(const FgAbelianObject& a, const FgAbelianObject& b);

    const FgAbelianObject& source() const { return source_; }
    const FgAbelianObject& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    IntVector apply(const IntVector& x) const;

    friend bool operator==(const FgAbelianMorphism&, const FgAbelianMorphism&) = default;

private:
    FgAbelianObject source_;
    FgAbelianObject target_;
    IntMatrix matrix_;
};

/// A subgroup H of A, stored as the canonical row basis of its preimage
/// lattice in Z^rank (which always contains the relation lattice).
struct AbelianSubgroup {
    FgAbelianObject ambient;
    IntMatrix basis;

    friend bool operator==(const AbelianSubgroup&, const AbelianSubgroup&) = default;
};

/// Reduce coordinates of an element into canonical range.
IntVector reduce_element(const FgAbelianObject& a, IntVector x);

FgAbelianMorphism compose(const FgAbelianMorphism& g, const FgAbelianMorphism& f);
bool morphisms_equal(const FgAbelianMorphism& f, const FgAbelianMorphism& g);

/// Subgroup generated by the given elements (as rows).
AbelianSubgroup generated_subgroup(const FgAbelianObject& a, const std::vector<IntVector>& generators);
AbelianSubgroup image_subobject(const FgAbelianMorphism& f);
AbelianSubgroup image_of(const FgAbelianMorphism& f, const AbelianSubgroup& h);
bool subobjects_equal(const AbelianSubgroup& a, const AbelianSubgroup& b);
bool contains(const AbelianSubgroup& big, const AbelianSubgroup& small);

/// Reduces every constraint, and well-definedness of u, to one congruence system.
std::optional<FgAbelianMorphism> solve_factorization(
    const FactorizationProblem<FgAbelianObject, FgAbelianMorphism>& problem);

/// Throws InfiniteObject when Hom(a, b) is infinite, EnumerationCapExceeded above cap.
std::vector<FgAbelianMorphism> enumerate_homs(const FgAbelianObject& a, const FgAbelianObject& b,
                                              std::size_t cap = kHomEnumerationCap);

/// Element numbering for finite groups: mixed radix, first coordinate fastest;
/// index 0 is the identity.
std::size_t element_count(const FgAbelianObject& a);
std::size_t element_index(const FgAbelianObject& a, const IntVector& x);
IntVector element_at(const FgAbelianObject& a, std::size_t index);
/// The underlying map of pointed sets; requires finite source and target.
PointedMap forget(const FgAbelianMorphism& f);

struct AbelianCategory {
    using Object = FgAbelianObject;
    using Morphism = FgAbelianMorphism;
    using Subobject = AbelianSubgroup;
    using Problem = FactorizationProblem<Object, Morphism>;

    static constexpr const char* name = "abelian";

    static Morphism identity(const Object& a) { return FgAbelianMorphism::identity(a); }
    static Morphism zero(const Object& a, const Object& b) { return FgAbelianMorphism::zero(a, b); }
    static Morphism compose(const Morphism& g, const Morphism& f) { return promov::compose(g, f); }
    static bool equal(const Morphism& f, const Morphism& g) { return morphisms_equal(f, g); }
    static bool is_zero(const Morphism& f) { return f.matrix().is_zero(); }
    static const Object& source(const Morphism& f) { return f.source(); }
    static const Object& target(const Morphism& f) { return f.target(); }
    static bool is_finite(const Object& a) { return a.is_finite(); }
    /// Free groups only; any nontrivial torsion factor rules projectivity out.
    static bool is_projective(const Object& a) {
        for (const auto& e : a.factors())
            if (e != 0 && e != 1) return false;
        return true;
    }
    static std::optional<Morphism> solve(const Problem& p) { return solve_factorization(p); }
    static Subobject image(const Morphism& f) { return image_subobject(f); }
    static Subobject image_of(const Morphism& f, const Subobject& s) { return promov::image_of(f, s); }
    static Subobject whole(const Object& a);
    static bool subobjects_equal(const Subobject& a, const Subobject& b) {
        return promov::subobjects_equal(a, b);
    }
    static bool contains(const Subobject& big, const Subobject& small) { return promov::contains(big, small); }
    static std::vector<Morphism> enumerate_homs(const Object& a, const Object& b, std::size_t cap) {
        return promov::enumerate_homs(a, b, cap);
    }
    static PointedMap underlying(const Morphism& f) { return forget(f); }

    static std::string to_string(const Object& a) { return a.to_string(); }
    static std::string to_string(const Morphism& f);
    static std::string to_string(const Subobject& s);
};

static_assert(CategoryBackend<AbelianCategory>);

}  // namespace promov
