#pragma once

// Instance documents: a JSON object tree describing an inverse system and,
// optionally, morphisms out of it.
//
//   backend       "abelian" | "pointed_set"
//   index         {"kind": "finite", "elements": [...], "order": [[lo, hi], ...]}
//                 {"kind": "nat", "first": "1"}
//   objects       finite: {label: object}; nat with step tables: [object, ...]
//   bonds         finite: [{"from": hi, "to": lo, "map": map}, ...]
//                 nat: {"family": name, "params": {...}} or {"steps": [map, ...]}
//   flags         {"epimorphic": bool, "periodic": {"offset": n, "period": n}}
//   morphism      {"target": system, "phi": ..., "f": ...}   (optional)
//   second        a second morphism, for compose and equiv    (optional)
//   test_objects  [object, ...]                               (C0 properties)
//
// Objects are factor lists ["0", "4"] (0 meaning Z) or pointed-set sizes "3".
// Maps are integer matrices [["1", "0"], ...] or image lists ["0", "2", "1"].
// Integers are decimal strings; plain JSON integers are accepted as well.

#include "promov/checkers.hpp"
#include "promov/families.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace promov::cli {

using json = nlohmann::json;

/// A malformed document. `where` is a JSON pointer or "line L, column C".
class InputError : public std::runtime_error {
public:
    InputError(std::string where, const std::string& message)
        : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

/// What the optional "second" morphism means.
enum class SecondRole {
    Compose,     // g : Y -> Z out of the target of the first morphism
    Equivalent,  // another morphism X -> Y
    Auto,        // Compose when "second" names its own target, else Equivalent
};

template <CategoryBackend C>
struct Instance {
    InverseSystem<C> system;
    std::optional<SystemMorphism<C>> morphism;
    std::optional<SystemMorphism<C>> second;
    std::vector<typename C::Object> test_objects;

    /// The given morphism, or the identity of the system.
    SystemMorphism<C> primary() const { return morphism ? *morphism : identity_morphism(system); }
};

using AnyInstance = std::variant<Instance<AbelianCategory>, Instance<PointedSetCategory>>;

/// Parses text; syntax errors carry line and column.
json parse_text(const std::string& text);
AnyInstance load_instance(const json& doc, SecondRole role = SecondRole::Auto);
AnyInstance load_instance_file(const std::string& path, SecondRole role = SecondRole::Auto);

/// "name" or "name:key=value;key=value".
Recipe parse_family_spec(const std::string& spec);

/// Abelian instance built from family specs; the morphism needs a target family.
Instance<AbelianCategory> family_instance(const std::string& system, const std::string& target,
                                          const std::string& morphism);

// Encoding of objects, maps and subobjects, shared with the report writer.
json encode_integer(const Integer& n);
json encode_object(const FgAbelianObject& a);
json encode_object(const PointedFiniteSet& a);
json encode_map(const FgAbelianMorphism& f);
json encode_map(const PointedMap& f);

}  // namespace promov::cli
