#pragma once

// Shared vocabulary for the category backends.

#include <concepts>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace promov {

/// Morphisms that do not fit together (wrong source/target).
class TypeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a hom-set or element enumeration would not terminate.
class InfiniteObject : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised instead of silently truncating an enumeration.
class EnumerationCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hard upper bound on the size of any enumerated hom-set.
inline constexpr std::size_t kHomEnumerationCap = std::size_t{1} << 16;

/// Which side of the unknown a known morphism sits on.
///   Post: known ∘ u = result
///   Pre:  u ∘ known = result
enum class Side { Post, Pre };

template <class Morphism>
struct Constraint {
    Side side;
    Morphism known;
    Morphism result;
};

/// Find u : source -> target satisfying every constraint.
template <class Object, class Morphism>
struct FactorizationProblem {
    Object source;
    Object target;
    std::vector<Constraint<Morphism>> constraints;
};

// clang-format off
template <class C>
concept CategoryBackend = requires(const typename C::Object& a,
                                   const typename C::Morphism& f,
                                   const typename C::Subobject& s,
                                   const FactorizationProblem<typename C::Object, typename C::Morphism>& p) {
    { C::name } -> std::convertible_to<std::string>;
    { C::identity(a) } -> std::same_as<typename C::Morphism>;
    { C::zero(a, a) } -> std::same_as<typename C::Morphism>;
    { C::compose(f, f) } -> std::same_as<typename C::Morphism>;
    { C::equal(f, f) } -> std::same_as<bool>;
    { C::is_zero(f) } -> std::same_as<bool>;
    { C::source(f) } -> std::convertible_to<typename C::Object>;
    { C::target(f) } -> std::convertible_to<typename C::Object>;
    { C::is_finite(a) } -> std::same_as<bool>;
    { C::is_projective(a) } -> std::same_as<bool>;
    { C::solve(p) } -> std::same_as<std::optional<typename C::Morphism>>;
    { C::image(f) } -> std::same_as<typename C::Subobject>;
    { C::image_of(f, s) } -> std::same_as<typename C::Subobject>;
    { C::whole(a) } -> std::same_as<typename C::Subobject>;
    { C::subobjects_equal(s, s) } -> std::same_as<bool>;
    { C::contains(s, s) } -> std::same_as<bool>;
    { C::enumerate_homs(a, a, std::size_t{}) } -> std::same_as<std::vector<typename C::Morphism>>;
    { C::to_string(a) } -> std::same_as<std::string>;
    { C::to_string(f) } -> std::same_as<std::string>;
    { C::to_string(s) } -> std::same_as<std::string>;
};
// clang-format on

}  // namespace promov
