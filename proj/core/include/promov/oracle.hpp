#pragma once

// Reference decision procedures by literal quantifier expansion over
// enumerated hom-sets. No factorization solver and no stabilization rule is
// used. Finite index sets and finite objects only.

#include "promov/checkers.hpp"

namespace promov {

/// Exact Holds/Fails with the full per-μ index sets. Throws
/// std::invalid_argument on sequences and EnumerationCapExceeded when a
/// hom-set exceeds kHomEnumerationCap.
template <CategoryBackend C>
Verdict<C> oracle_check(Property p, const SystemMorphism<C>& f, const std::vector<typename C::Object>& c0 = {});

template <CategoryBackend C>
Verdict<C> oracle_check_system(Property p, const InverseSystem<C>& x, const std::vector<typename C::Object>& c0 = {}) {
    return oracle_check(p, identity_morphism(x), c0);
}

}  // namespace promov
