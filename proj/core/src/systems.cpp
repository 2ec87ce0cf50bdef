#include "promov/systems.hpp"

#include <algorithm>
#include <mutex>

namespace promov {

void Horizon::check() const {
    if (mu_max == 0 || lambda_max == 0 || muprime_max == 0 || cone_max == 0)
        throw std::invalid_argument("horizon bounds must be positive");
    if (muprime_max < mu_max) throw std::invalid_argument("horizon: muprime_max must be >= mu_max");
}

std::string Recipe::to_string() const {
    std::string s = family + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) s += ", ";
        s += params[i].first + "=" + params[i].second;
    }
    return s + ")";
}

std::vector<Index> mu_range(const IndexSet& m, const Horizon& h) {
    if (m.is_finite()) return m.elements(0);
    std::vector<Index> out;
    for (Index i = m.first(); i <= h.mu_max; ++i) out.push_back(i);
    return out;
}

namespace {

/// Position of index n in a table that is literal before offset + period and
/// repeats with the period afterwards.
std::size_t periodic_position(Index first, Periodicity p, Index n) {
    if (n < first) throw std::out_of_range("index " + std::to_string(n) + " precedes the first index");
    if (n < p.offset + p.period) return n - first;
    return p.offset - first + (n - p.offset) % p.period;
}

std::string pair_label(const IndexSet& idx, Index a, Index b) {
    return "(" + idx.label(a) + ", " + idx.label(b) + ")";
}

/// Largest index touched by checkers on a sequence under the horizon.
Index sequence_bound(const Horizon& h) { return std::max(h.lambda_max, h.muprime_max) + h.cone_max; }

}  // namespace

template <CategoryBackend C>
struct InverseSystem<C>::Impl {
    IndexSet index;
    std::vector<Object> objects;
    BondTable bonds;
    std::function<Object(Index)> object_fn;
    std::function<Morphism(Index)> step_fn;
    std::vector<Object> periodic_objects;
    std::vector<Morphism> periodic_steps;
    bool periodic_table = false;
    SystemFlags flags;
    Recipe recipe;

    std::mutex mutex;
    std::map<std::pair<Index, Index>, Morphism> cache;
};

template <CategoryBackend C>
InverseSystem<C>::InverseSystem() : InverseSystem(rudimentary(Object{})) {}

template <CategoryBackend C>
InverseSystem<C> InverseSystem<C>::finite(FiniteDirectedPoset poset, std::vector<Object> objects, BondTable bonds,
                                          SystemFlags flags) {
    InverseSystem s(std::make_shared<Impl>());
    s.impl_->index = IndexSet(std::move(poset));
    s.impl_->objects = std::move(objects);
    s.impl_->bonds = std::move(bonds);
    s.impl_->flags = std::move(flags);
    return s;
}

template <CategoryBackend C>
InverseSystem<C> InverseSystem<C>::sequence(NatIndex index, std::function<Object(Index)> object,
                                            std::function<Morphism(Index)> step, SystemFlags flags, Recipe recipe) {
    InverseSystem s(std::make_shared<Impl>());
    s.impl_->index = IndexSet(index);
    s.impl_->object_fn = std::move(object);
    s.impl_->step_fn = std::move(step);
    s.impl_->flags = std::move(flags);
    s.impl_->recipe = std::move(recipe);
    return s;
}

template <CategoryBackend C>
InverseSystem<C> InverseSystem<C>::periodic(NatIndex index, Periodicity periodicity, std::vector<Object> objects,
                                            std::vector<Morphism> steps, bool all_bonds_epimorphic, Recipe recipe) {
    if (periodicity.period == 0) throw std::invalid_argument("periodic system: period must be positive");
    if (periodicity.offset < index.first) throw std::invalid_argument("periodic system: offset precedes first index");
    const std::size_t expected = periodicity.offset + periodicity.period - index.first;
    if (objects.size() != expected || steps.size() != expected)
        throw std::invalid_argument("periodic system: expected " + std::to_string(expected) +
                                    " objects and steps");
    auto objs = std::make_shared<const std::vector<Object>>(objects);
    auto stps = std::make_shared<const std::vector<Morphism>>(steps);
    const Index first = index.first;
    SystemFlags flags{all_bonds_epimorphic, periodicity};
    InverseSystem s = sequence(
        index, [objs, first, periodicity](Index n) { return (*objs)[periodic_position(first, periodicity, n)]; },
        [stps, first, periodicity](Index n) { return (*stps)[periodic_position(first, periodicity, n)]; }, flags,
        std::move(recipe));
    s.impl_->periodic_objects = std::move(objects);
    s.impl_->periodic_steps = std::move(steps);
    s.impl_->periodic_table = true;
    return s;
}

template <CategoryBackend C>
InverseSystem<C> InverseSystem<C>::rudimentary(Object x) {
    InverseSystem s(std::make_shared<Impl>());
    s.impl_->index = IndexSet(FiniteDirectedPoset::singleton());
    s.impl_->objects.push_back(std::move(x));
    return s;
}

template <CategoryBackend C>
const IndexSet& InverseSystem<C>::index() const {
    return impl_->index;
}

template <CategoryBackend C>
typename C::Object InverseSystem<C>::object(Index i) const {
    if (!index().contains(i)) throw std::out_of_range("object: index " + std::to_string(i) + " not in the index set");
    if (index().is_finite()) {
        if (i >= impl_->objects.size()) throw std::out_of_range("object: no object at index " + index().label(i));
        return impl_->objects[i];
    }
    return impl_->object_fn(i);
}

template <CategoryBackend C>
typename C::Morphism InverseSystem<C>::step(Index n) const {
    if (index().is_finite()) throw std::logic_error("step: only sequences have steps");
    return impl_->step_fn(n);
}

template <CategoryBackend C>
typename C::Morphism InverseSystem<C>::bond(Index lo, Index hi) const {
    if (!index().contains(lo) || !index().contains(hi) || !index().leq(lo, hi))
        throw std::invalid_argument("bond: need " + index().label(lo) + " <= " + index().label(hi));
    if (index().is_finite()) {
        auto it = impl_->bonds.find({lo, hi});
        if (it != impl_->bonds.end()) return it->second;
        if (lo == hi) return C::identity(object(lo));
        throw std::out_of_range("bond: no bond given for " + pair_label(index(), lo, hi));
    }
    {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        auto it = impl_->cache.find({lo, hi});
        if (it != impl_->cache.end()) return it->second;
    }
    // Extend from the longest cached prefix p_{lo,k}.
    Index k = lo;
    Morphism acc = C::identity(object(lo));
    {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        for (Index j = hi; j > lo; --j) {
            auto it = impl_->cache.find({lo, j});
            if (it != impl_->cache.end()) {
                k = j;
                acc = it->second;
                break;
            }
        }
    }
    std::vector<std::pair<Index, Morphism>> fresh;
    for (; k < hi; ++k) {
        acc = C::compose(acc, step(k));
        fresh.emplace_back(k + 1, acc);
    }
    std::lock_guard<std::mutex> lock(impl_->mutex);
    for (auto& [j, m] : fresh) impl_->cache.emplace(std::make_pair(lo, j), m);
    return acc;
}

template <CategoryBackend C>
const SystemFlags& InverseSystem<C>::flags() const {
    return impl_->flags;
}

template <CategoryBackend C>
const Recipe& InverseSystem<C>::recipe() const {
    return impl_->recipe;
}

template <CategoryBackend C>
const typename InverseSystem<C>::BondTable& InverseSystem<C>::bond_table() const {
    return impl_->bonds;
}

template <CategoryBackend C>
const std::vector<typename C::Object>& InverseSystem<C>::periodic_objects() const {
    return impl_->periodic_objects;
}

template <CategoryBackend C>
const std::vector<typename C::Morphism>& InverseSystem<C>::periodic_steps() const {
    return impl_->periodic_steps;
}

template <CategoryBackend C>
bool InverseSystem<C>::is_periodic_table() const {
    return impl_->periodic_table;
}

template <CategoryBackend C>
bool InverseSystem<C>::same_as(const InverseSystem& other) const {
    if (impl_ == other.impl_) return true;
    if (!(index() == other.index()) || !(flags() == other.flags())) return false;
    if (index().is_finite()) {
        if (!(impl_->objects == other.impl_->objects)) return false;
        for (Index a = 0; a < index().poset().size(); ++a)
            for (Index b = 0; b < index().poset().size(); ++b) {
                if (!index().leq(a, b)) continue;
                if (!(bond(a, b) == other.bond(a, b))) return false;
            }
        return true;
    }
    if (is_periodic_table() && other.is_periodic_table())
        return impl_->periodic_objects == other.impl_->periodic_objects &&
               impl_->periodic_steps == other.impl_->periodic_steps;
    return !recipe().empty() && recipe() == other.recipe();
}

template <CategoryBackend C>
std::vector<Violation> validate_system(const InverseSystem<C>& x, const Horizon& h) {
    std::vector<Violation> out;
    const IndexSet& idx = x.index();
    if (idx.is_finite()) {
        const auto& poset = idx.poset();
        for (const auto& v : validate_poset(poset)) out.push_back({"poset", v.witnesses, v.describe(poset.labels())});
        if (!out.empty()) return out;
        const std::size_t n = poset.size();
        for (Index i = 0; i < n; ++i) {
            try {
                (void)x.object(i);
            } catch (const std::out_of_range&) {
                out.push_back({"object", {i}, "no object at index " + idx.label(i)});
            }
        }
        if (!out.empty()) return out;
        for (const auto& [key, m] : x.bond_table())
            if (key.first >= n || key.second >= n || !poset.leq(key.first, key.second))
                out.push_back({"bond-order", {key.first, key.second}, "bond given for non-comparable pair"});
        bool typed = true;
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b) {
                if (!poset.leq(a, b)) continue;
                if (a != b && !x.bond_table().count({a, b})) {
                    out.push_back({"missing-bond", {a, b}, "no bond for " + pair_label(idx, a, b)});
                    typed = false;
                    continue;
                }
                auto p = x.bond(a, b);
                if (!(C::source(p) == x.object(b)) || !(C::target(p) == x.object(a))) {
                    out.push_back({"bond-type", {a, b}, "bond " + pair_label(idx, a, b) + " has the wrong type"});
                    typed = false;
                } else if (a == b && !C::equal(p, C::identity(x.object(a)))) {
                    out.push_back({"identity", {a}, "bond at " + idx.label(a) + " is not the identity"});
                }
            }
        if (!typed) return out;
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b) {
                if (!poset.leq(a, b)) continue;
                for (Index c = 0; c < n; ++c) {
                    if (!poset.leq(b, c) || a == b || b == c) continue;
                    if (!C::equal(C::compose(x.bond(a, b), x.bond(b, c)), x.bond(a, c)))
                        out.push_back({"functoriality",
                                       {a, b, c},
                                       "p" + pair_label(idx, a, b) + " p" + pair_label(idx, b, c) + " != p" +
                                           pair_label(idx, a, c)});
                }
            }
        return out;
    }

    const Index first = idx.first();
    const Index bound = sequence_bound(h);
    for (Index n = first; n < bound; ++n) {
        auto s = x.step(n);
        if (!(C::source(s) == x.object(n + 1)) || !(C::target(s) == x.object(n))) {
            out.push_back({"bond-type", {n, n + 1}, "step at " + std::to_string(n) + " has the wrong type"});
            return out;
        }
    }
    if (x.flags().all_bonds_epimorphic)
        for (Index n = first; n < bound; ++n)
            if (!C::subobjects_equal(C::image(x.step(n)), C::whole(x.object(n))))
                out.push_back({"flag-epimorphic", {n, n + 1},
                               "declared epimorphic but step at " + std::to_string(n) + " is not onto"});
    if (auto p = x.flags().eventually_periodic) {
        if (p->period == 0 || p->offset < first) {
            out.push_back({"flag-periodic", {}, "periodicity flag has period 0 or offset before the first index"});
        } else {
            for (Index n = p->offset; n < bound; ++n) {
                if (!(x.object(n + p->period) == x.object(n))) {
                    out.push_back({"flag-periodic", {n, n + p->period}, "objects differ across one period"});
                    break;
                }
                if (!C::equal(x.step(n + p->period), x.step(n))) {
                    out.push_back({"flag-periodic", {n, n + p->period}, "steps differ across one period"});
                    break;
                }
            }
        }
    }
    return out;
}

template <CategoryBackend C>
SystemMorphism<C> SystemMorphism<C>::table(InverseSystem<C> source, InverseSystem<C> target, IndexMap phi,
                                           std::vector<Morphism> components) {
    if (!target.index().is_finite()) throw std::invalid_argument("table morphism: target must have a finite index set");
    if (components.size() != target.index().poset().size())
        throw std::invalid_argument("table morphism: one component per target index expected");
    SystemMorphism f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.phi_ = std::move(phi);
    f.table_ = std::move(components);
    return f;
}

template <CategoryBackend C>
SystemMorphism<C> SystemMorphism<C>::rule(InverseSystem<C> source, InverseSystem<C> target, IndexMap phi,
                                          std::function<Morphism(Index)> component, Recipe recipe) {
    SystemMorphism f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.phi_ = std::move(phi);
    f.component_ = std::move(component);
    f.recipe_ = std::move(recipe);
    return f;
}

template <CategoryBackend C>
SystemMorphism<C> SystemMorphism<C>::periodic(InverseSystem<C> source, InverseSystem<C> target, IndexMap phi,
                                              Periodicity periodicity, std::vector<Morphism> components) {
    if (target.index().is_finite()) throw std::invalid_argument("periodic morphism: target must be a sequence");
    const Index first = target.index().first();
    if (periodicity.period == 0 || periodicity.offset < first)
        throw std::invalid_argument("periodic morphism: bad periodicity");
    if (components.size() != periodicity.offset + periodicity.period - first)
        throw std::invalid_argument("periodic morphism: wrong number of components");
    SystemMorphism f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.phi_ = std::move(phi);
    f.table_ = std::move(components);
    f.periodicity_ = periodicity;
    return f;
}

template <CategoryBackend C>
typename C::Morphism SystemMorphism<C>::component(Index mu) const {
    if (!target_.index().contains(mu)) throw std::out_of_range("component: index not in the target index set");
    if (periodicity_) return table_[periodic_position(target_.index().first(), *periodicity_, mu)];
    if (!table_.empty()) return table_[mu];
    return component_(mu);
}

template <CategoryBackend C>
typename C::Morphism SystemMorphism<C>::restricted(Index mu, Index lambda) const {
    const Index base = phi_(mu);
    if (!source_.index().contains(lambda) || !source_.index().leq(base, lambda))
        throw std::invalid_argument("restrict: need phi(" + target_.index().label(mu) + ") = " +
                                    source_.index().label(base) + " <= " + source_.index().label(lambda));
    return C::compose(component(mu), source_.bond(base, lambda));
}

template <CategoryBackend C>
std::vector<Violation> validate_cone(const ConeMorphism<C>& cone, const InverseSystem<C>& y) {
    std::vector<Violation> out;
    for (const auto& [a, leg] : cone.legs)
        if (!(C::source(leg) == cone.source) || !(C::target(leg) == y.object(a)))
            out.push_back({"leg-type", {a}, "cone leg at " + y.index().label(a) + " has the wrong type"});
    if (!out.empty()) return out;
    for (const auto& [a, la] : cone.legs)
        for (const auto& [b, lb] : cone.legs) {
            if (a == b || !y.index().leq(a, b)) continue;
            if (!C::equal(C::compose(y.bond(a, b), lb), la))
                out.push_back({"cone", {a, b}, "legs at " + pair_label(y.index(), a, b) + " are not compatible"});
        }
    return out;
}

template <CategoryBackend C>
std::vector<Violation> validate_morphism(const SystemMorphism<C>& f, const Horizon& h) {
    std::vector<Violation> out;
    for (auto v : validate_system(f.source(), h)) {
        v.kind = "source:" + v.kind;
        out.push_back(std::move(v));
    }
    for (auto v : validate_system(f.target(), h)) {
        v.kind = "target:" + v.kind;
        out.push_back(std::move(v));
    }
    if (!out.empty()) return out;
    const IndexSet& lam = f.source().index();
    const IndexSet& m = f.target().index();
    for (const auto& msg : f.phi().check(m, lam)) out.push_back({"index-map", {}, msg});
    if (!out.empty()) return out;

    std::vector<Index> typed_range = mu_range(m, h);
    if (!m.is_finite())
        for (Index mu = h.mu_max + 1; mu <= std::max(h.muprime_max, h.mu_max + h.cone_max); ++mu)
            typed_range.push_back(mu);
    for (Index mu : typed_range) {
        auto c = f.component(mu);
        if (!(C::source(c) == f.source().object(f.phi()(mu))) || !(C::target(c) == f.target().object(mu)))
            out.push_back({"component-type", {mu}, "component at " + m.label(mu) + " has the wrong type"});
    }
    if (!out.empty()) return out;

    const auto range = mu_range(m, h);
    for (Index mu : range)
        for (Index mu2 : range) {
            if (mu == mu2 || !m.leq(mu, mu2)) continue;
            const Index a = f.phi()(mu);
            const Index b = f.phi()(mu2);
            std::vector<Index> candidates;
            if (lam.is_finite()) {
                for (Index l = 0; l < lam.poset().size(); ++l)
                    if (lam.leq(a, l) && lam.leq(b, l)) candidates.push_back(l);
            } else {
                candidates.push_back(std::max({h.lambda_max, a, b}));
            }
            const auto q = f.target().bond(mu, mu2);
            bool coherent = false;
            for (Index l : candidates)
                if (C::equal(f.restricted(mu, l), C::compose(q, f.restricted(mu2, l)))) {
                    coherent = true;
                    break;
                }
            if (!coherent)
                out.push_back({"coherence", {mu, mu2}, "coherence fails at " + pair_label(m, mu, mu2)});
        }
    return out;
}

template <CategoryBackend C>
SystemMorphism<C> identity_morphism(const InverseSystem<C>& x) {
    if (x.index().is_finite()) {
        std::vector<Index> ids;
        std::vector<typename C::Morphism> comps;
        for (Index i = 0; i < x.index().poset().size(); ++i) {
            ids.push_back(i);
            comps.push_back(C::identity(x.object(i)));
        }
        return SystemMorphism<C>::table(x, x, IndexMap::table(std::move(ids)), std::move(comps));
    }
    return SystemMorphism<C>::rule(
        x, x, IndexMap::identity(), [x](Index n) { return C::identity(x.object(n)); }, Recipe{"identity", {}});
}

template <CategoryBackend C>
SystemMorphism<C> compose_morphisms(const SystemMorphism<C>& g, const SystemMorphism<C>& f) {
    if (!f.target().same_as(g.source())) throw TypeMismatch("compose_morphisms: target of f is not the source of g");
    const IndexSet& z = g.target().index();
    IndexMap chi = f.phi().after(g.phi(), z);
    if (z.is_finite()) {
        std::vector<typename C::Morphism> comps;
        for (Index nu = 0; nu < z.poset().size(); ++nu)
            comps.push_back(C::compose(g.component(nu), f.component(g.phi()(nu))));
        return SystemMorphism<C>::table(f.source(), g.target(), chi, std::move(comps));
    }
    Recipe recipe{"composite", {}};
    if (!g.recipe().empty()) recipe.params.emplace_back("outer", g.recipe().to_string());
    if (!f.recipe().empty()) recipe.params.emplace_back("inner", f.recipe().to_string());
    return SystemMorphism<C>::rule(
        f.source(), g.target(), chi,
        [f, g](Index nu) { return C::compose(g.component(nu), f.component(g.phi()(nu))); }, recipe);
}

template <CategoryBackend C>
EquivalenceReport are_equivalent(const SystemMorphism<C>& f, const SystemMorphism<C>& g, const Horizon& h) {
    if (!f.source().same_as(g.source()) || !f.target().same_as(g.target()))
        throw TypeMismatch("are_equivalent: morphisms have different source or target systems");
    const IndexSet& lam = f.source().index();
    const IndexSet& m = f.target().index();
    EquivalenceReport report;
    report.exact = lam.is_finite() && m.is_finite();
    report.equivalent = true;
    for (Index mu : mu_range(m, h)) {
        const Index a = f.phi()(mu);
        const Index b = g.phi()(mu);
        std::vector<Index> candidates;
        if (lam.is_finite()) {
            for (Index l = 0; l < lam.poset().size(); ++l)
                if (lam.leq(a, l) && lam.leq(b, l)) candidates.push_back(l);
        } else {
            candidates.push_back(std::max({h.lambda_max, a, b}));
        }
        std::optional<Index> found;
        for (Index l : candidates)
            if (C::equal(f.restricted(mu, l), g.restricted(mu, l))) {
                found = l;
                break;
            }
        report.indices.emplace_back(mu, found);
        if (!found && report.equivalent) {
            report.equivalent = false;
            report.failing_mu = mu;
        }
    }
    return report;
}

#define PROMOV_INSTANTIATE_SYSTEMS(C)                                                                     \
    template class InverseSystem<C>;                                                                      \
    template class SystemMorphism<C>;                                                                     \
    template std::vector<Violation> validate_system<C>(const InverseSystem<C>&, const Horizon&);          \
    template std::vector<Violation> validate_morphism<C>(const SystemMorphism<C>&, const Horizon&);       \
    template std::vector<Violation> validate_cone<C>(const ConeMorphism<C>&, const InverseSystem<C>&);    \
    template SystemMorphism<C> identity_morphism<C>(const InverseSystem<C>&);                             \
    template SystemMorphism<C> compose_morphisms<C>(const SystemMorphism<C>&, const SystemMorphism<C>&);  \
    template EquivalenceReport are_equivalent<C>(const SystemMorphism<C>&, const SystemMorphism<C>&,      \
                                                 const Horizon&);

PROMOV_INSTANTIATE_SYSTEMS(AbelianCategory)
PROMOV_INSTANTIATE_SYSTEMS(PointedSetCategory)

}  // namespace promov
