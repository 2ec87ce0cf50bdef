#include "promov/forgetful.hpp"

namespace promov {

PointedFiniteSet forgetful_to_sets(const FgAbelianObject& a) { return PointedFiniteSet(element_count(a)); }

PointedMap forgetful_to_sets(const FgAbelianMorphism& f) { return forget(f); }

InverseSystem<PointedSetCategory> forgetful_to_sets(const InverseSystem<AbelianCategory>& x) {
    using P = PointedSetCategory;
    if (!x.is_sequence()) {
        const auto& poset = x.index().poset();
        std::vector<PointedFiniteSet> objects;
        for (Index i = 0; i < poset.size(); ++i) objects.push_back(forgetful_to_sets(x.object(i)));
        InverseSystem<P>::BondTable bonds;
        for (const auto& [key, m] : x.bond_table()) bonds.emplace(key, forget(m));
        return InverseSystem<P>::finite(poset, std::move(objects), std::move(bonds), x.flags());
    }
    Recipe recipe{"forgetful", {}};
    if (!x.recipe().empty()) recipe.params.emplace_back("of", x.recipe().to_string());
    if (x.is_periodic_table()) {
        std::vector<PointedFiniteSet> objects;
        std::vector<PointedMap> steps;
        for (const auto& o : x.periodic_objects()) objects.push_back(forgetful_to_sets(o));
        for (const auto& s : x.periodic_steps()) steps.push_back(forget(s));
        return InverseSystem<P>::periodic(x.index().nat(), *x.flags().eventually_periodic, std::move(objects),
                                          std::move(steps), x.flags().all_bonds_epimorphic, recipe);
    }
    return InverseSystem<P>::sequence(
        x.index().nat(), [x](Index n) { return forgetful_to_sets(x.object(n)); },
        [x](Index n) { return forget(x.step(n)); }, x.flags(), recipe);
}

SystemMorphism<PointedSetCategory> forgetful_to_sets(const SystemMorphism<AbelianCategory>& f,
                                                     const InverseSystem<PointedSetCategory>& source,
                                                     const InverseSystem<PointedSetCategory>& target) {
    using P = PointedSetCategory;
    if (f.periodicity()) {
        std::vector<PointedMap> comps;
        for (const auto& c : f.table_components()) comps.push_back(forget(c));
        return SystemMorphism<P>::periodic(source, target, f.phi(), *f.periodicity(), std::move(comps));
    }
    if (!f.table_components().empty()) {
        std::vector<PointedMap> comps;
        for (const auto& c : f.table_components()) comps.push_back(forget(c));
        return SystemMorphism<P>::table(source, target, f.phi(), std::move(comps));
    }
    Recipe recipe{"forgetful", {}};
    if (!f.recipe().empty()) recipe.params.emplace_back("of", f.recipe().to_string());
    return SystemMorphism<P>::rule(
        source, target, f.phi(), [f](Index mu) { return forget(f.component(mu)); }, recipe);
}

SystemMorphism<PointedSetCategory> forgetful_to_sets(const SystemMorphism<AbelianCategory>& f) {
    return forgetful_to_sets(f, forgetful_to_sets(f.source()), forgetful_to_sets(f.target()));
}

}  // namespace promov
