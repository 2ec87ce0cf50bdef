#pragma once

// Pointed finite sets {0 = *, 1, ..., n-1} and basepoint-preserving maps.

#include "promov/categories.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace promov {

struct PointedFiniteSet {
    std::size_t size = 1;

    PointedFiniteSet() = default;
    explicit PointedFiniteSet(std::size_t n);

    friend bool operator==(const PointedFiniteSet&, const PointedFiniteSet&) = default;
};

class PointedMap {
public:
    PointedMap() = default;
    /// Throws std::invalid_argument unless images[0] == 0 and every image is in range.
    PointedMap(PointedFiniteSet source, PointedFiniteSet target, std::vector<std::size_t> images);

    static PointedMap identity(PointedFiniteSet s);
    static PointedMap constant(PointedFiniteSet s, PointedFiniteSet t);

    const PointedFiniteSet& source() const { return source_; }
    const PointedFiniteSet& target() const { return target_; }
    const std::vector<std::size_t>& images() const { return images_; }
    std::size_t operator()(std::size_t x) const { return images_[x]; }

    friend bool operator==(const PointedMap&, const PointedMap&) = default;

private:
    PointedFiniteSet source_;
    PointedFiniteSet target_;
    std::vector<std::size_t> images_{0};
};

/// A subset of a pointed set; always contains the basepoint, kept sorted.
struct PointedSubset {
    PointedFiniteSet ambient;
    std::vector<std::size_t> elements;

    friend bool operator==(const PointedSubset&, const PointedSubset&) = default;
};

PointedMap compose(const PointedMap& g, const PointedMap& f);
bool morphisms_equal(const PointedMap& f, const PointedMap& g);
PointedSubset image_subobject(const PointedMap& f);
bool subobjects_equal(const PointedSubset& a, const PointedSubset& b);

/// Constraints only ever fix u at a single point (u(L(v)) = R(v)) or restrict
/// the value at a single point (L(u(s)) = R(s)), so each point is solved
/// independently; the least admissible value is chosen.
std::optional<PointedMap> solve_factorization(
    const FactorizationProblem<PointedFiniteSet, PointedMap>& problem);

std::vector<PointedMap> enumerate_homs(const PointedFiniteSet& a, const PointedFiniteSet& b,
                                       std::size_t cap = kHomEnumerationCap);

struct PointedSetCategory {
    using Object = PointedFiniteSet;
    using Morphism = PointedMap;
    using Subobject = PointedSubset;
    using Problem = FactorizationProblem<Object, Morphism>;

    static constexpr const char* name = "pointed_set";

    static Morphism identity(const Object& a) { return PointedMap::identity(a); }
    static Morphism zero(const Object& a, const Object& b) { return PointedMap::constant(a, b); }
    static Morphism compose(const Morphism& g, const Morphism& f) { return promov::compose(g, f); }
    static bool equal(const Morphism& f, const Morphism& g) { return morphisms_equal(f, g); }
    static bool is_zero(const Morphism& f);
    static const Object& source(const Morphism& f) { return f.source(); }
    static const Object& target(const Morphism& f) { return f.target(); }
    static bool is_finite(const Object&) { return true; }
    /// Every onto map of pointed sets splits.
    static bool is_projective(const Object&) { return true; }
    static std::optional<Morphism> solve(const Problem& p) { return solve_factorization(p); }
    static Subobject image(const Morphism& f) { return image_subobject(f); }
    static Subobject image_of(const Morphism& f, const Subobject& s);
    static Subobject whole(const Object& a);
    static bool subobjects_equal(const Subobject& a, const Subobject& b) {
        return promov::subobjects_equal(a, b);
    }
    /// big ⊇ small
    static bool contains(const Subobject& big, const Subobject& small);
    static std::vector<Morphism> enumerate_homs(const Object& a, const Object& b, std::size_t cap) {
        return promov::enumerate_homs(a, b, cap);
    }
    static PointedMap underlying(const Morphism& f) { return f; }

    static std::string to_string(const Object& a);
    static std::string to_string(const Morphism& f);
    static std::string to_string(const Subobject& s);
};

static_assert(CategoryBackend<PointedSetCategory>);

}  // namespace promov
