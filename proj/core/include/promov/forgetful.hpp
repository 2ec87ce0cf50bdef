#pragma once

// The forgetful functor from finite abelian groups to pointed sets, on
// objects, morphisms, systems and system morphisms.

#include "promov/systems.hpp"

namespace promov {

PointedFiniteSet forgetful_to_sets(const FgAbelianObject& a);
PointedMap forgetful_to_sets(const FgAbelianMorphism& f);

/// Sequences are forgotten lazily; every object visited must be finite.
InverseSystem<PointedSetCategory> forgetful_to_sets(const InverseSystem<AbelianCategory>& x);
SystemMorphism<PointedSetCategory> forgetful_to_sets(const SystemMorphism<AbelianCategory>& f);

/// Overload taking already forgotten source and target, so that shared
/// systems stay shared (composition requires the same target object).
SystemMorphism<PointedSetCategory> forgetful_to_sets(const SystemMorphism<AbelianCategory>& f,
                                                     const InverseSystem<PointedSetCategory>& source,
                                                     const InverseSystem<PointedSetCategory>& target);

}  // namespace promov
