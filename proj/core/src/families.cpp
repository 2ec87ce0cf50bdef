#include "promov/families.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace promov {

namespace {

using Ab = AbelianCategory;
using Pt = PointedSetCategory;

FgAbelianMorphism scalar(const FgAbelianObject& s, const FgAbelianObject& t, long k) {
    return FgAbelianMorphism(s, t, IntMatrix{{k}});
}

std::string param(const Recipe& r, const std::string& key, const std::string& fallback) {
    for (const auto& [k, v] : r.params)
        if (k == key) return v;
    return fallback;
}

std::uint64_t fnv1a(const std::string& s, std::uint64_t salt) {
    std::uint64_t h = 1469598103934665603ull ^ salt;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    if (v.empty()) throw std::logic_error("pick from an empty list");
    return v[draw(rng, v.size())];
}

/// Elements ordered so that every strict upper bound of a comes before a.
std::vector<Index> top_down_order(const FiniteDirectedPoset& poset) {
    std::vector<Index> order(poset.size());
    std::iota(order.begin(), order.end(), 0);
    auto ups = [&](Index a) {
        std::size_t c = 0;
        for (Index b = 0; b < poset.size(); ++b) c += poset.leq(a, b) ? 1 : 0;
        return c;
    };
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return ups(a) < ups(b); });
    return order;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

/// G / <gens> for G = ⊕ Z/n_i, with the coordinate map x -> T x.
struct Quotient {
    FgAbelianObject object;
    IntMatrix coords;  // rank(object) × rank(G)
    std::vector<std::size_t> kept;
    IntMatrix v;
};

Quotient quotient(const IntVector& n, const std::vector<IntVector>& gens) {
    const std::size_t r = n.size();
    IntMatrix rel(r + gens.size(), r);
    for (std::size_t i = 0; i < r; ++i) rel(i, i) = n[i];
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t i = 0; i < r; ++i) rel(r + g, i) = gens[g][i];
    const auto s = snf(rel);
    Quotient q;
    IntVector factors;
    for (std::size_t j = 0; j < r; ++j) {
        Integer d = abs(s.D(j, j));
        if (d == 1) continue;
        q.kept.push_back(j);
        factors.push_back(d);
    }
    q.object = FgAbelianObject(factors);
    q.coords = IntMatrix(q.kept.size(), r);
    for (std::size_t k = 0; k < q.kept.size(); ++k)
        for (std::size_t i = 0; i < r; ++i) q.coords(k, i) = s.V(i, q.kept[k]);
    q.v = s.V;
    return q;
}

/// Element of G mapping to the k-th generator of the quotient.
IntVector preimage(const Quotient& q, std::size_t k) {
    const std::size_t r = q.v.rows();
    IntVector b(r, Integer(0));
    b[q.kept[k]] = 1;
    auto x = solve_congruence_system(q.v.transpose(), b, IntVector(r, Integer(0)));
    if (!x) throw std::logic_error("unimodular transform is not invertible");
    return *x;
}

FgAbelianObject object_sum(const FgAbelianObject& a, const FgAbelianObject& b) {
    IntVector f = a.factors();
    f.insert(f.end(), b.factors().begin(), b.factors().end());
    return FgAbelianObject(f);
}

FgAbelianMorphism block_diag(const FgAbelianMorphism& a, const FgAbelianMorphism& b) {
    const auto s = object_sum(a.source(), b.source());
    const auto t = object_sum(a.target(), b.target());
    IntMatrix m(t.rank(), s.rank());
    for (std::size_t i = 0; i < a.target().rank(); ++i)
        for (std::size_t j = 0; j < a.source().rank(); ++j) m(i, j) = a.matrix()(i, j);
    for (std::size_t i = 0; i < b.target().rank(); ++i)
        for (std::size_t j = 0; j < b.source().rank(); ++j)
            m(a.target().rank() + i, a.source().rank() + j) = b.matrix()(i, j);
    return FgAbelianMorphism(s, t, m);
}

FgAbelianMorphism inclusion(const FgAbelianObject& x, const FgAbelianObject& sum) {
    IntMatrix m(sum.rank(), x.rank());
    for (std::size_t i = 0; i < x.rank(); ++i) m(i, i) = 1;
    return FgAbelianMorphism(x, sum, m);
}

FgAbelianMorphism projection(const FgAbelianObject& sum, const FgAbelianObject& x) {
    IntMatrix m(x.rank(), sum.rank());
    for (std::size_t i = 0; i < x.rank(); ++i) m(i, i) = 1;
    return FgAbelianMorphism(sum, x, m);
}

const std::vector<IntVector>& small_groups() {
    static const std::vector<IntVector> groups = [] {
        std::vector<IntVector> g;
        for (long n = 2; n <= 8; ++n) g.push_back({Integer(n)});
        g.push_back({Integer(2), Integer(2)});
        g.push_back({Integer(2), Integer(4)});
        g.push_back({Integer(3), Integer(3)});
        g.push_back({Integer(2), Integer(6)});
        g.push_back({Integer(4), Integer(4)});
        g.push_back({Integer(2), Integer(8)});
        g.push_back({Integer(2), Integer(2), Integer(2)});
        return g;
    }();
    return groups;
}

Integer order_of(const IntVector& f) {
    Integer o = 1;
    for (const auto& e : f) o *= e;
    return o;
}


template <CategoryBackend C>
typename C::Morphism random_hom(Rng& rng, const typename C::Object& a, const typename C::Object& b) {
    return pick(rng, C::enumerate_homs(a, b, kHomEnumerationCap));
}

template <CategoryBackend C>
bool is_onto(const typename C::Morphism& f) {
    return C::subobjects_equal(C::image(f), C::whole(C::target(f)));
}

}  // namespace

FgAbelianObject random_small_group(Rng& rng, std::size_t max_order, bool allow_trivial) {
    std::vector<IntVector> options;
    for (const auto& g : small_groups())
        if (order_of(g) <= static_cast<long>(max_order)) options.push_back(g);
    if (allow_trivial) options.push_back({});
    if (options.empty()) return FgAbelianObject::trivial();
    return FgAbelianObject(pick(rng, options));
}

// ---------------------------------------------------------------------------

AbelianSystem doubling_sequence(long factor) {
    const auto z = FgAbelianObject::integers();
    return AbelianSystem::periodic(NatIndex{1}, Periodicity{1, 1}, {z}, {scalar(z, z, factor)},
                                   factor == 1 || factor == -1,
                                   Recipe{"doubling", {{"factor", std::to_string(factor)}}});
}

AbelianSystem prime_power_quotients(long p) {
    if (p < 2) throw std::invalid_argument("prime_power_quotients: p must be at least 2");
    auto object = [p](Index n) {
        Integer m;
        mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), n);
        return FgAbelianObject::cyclic(m);
    };
    return AbelianSystem::sequence(
        NatIndex{1}, object, [object](Index n) { return scalar(object(n + 1), object(n), 1); },
        SystemFlags{true, std::nullopt}, Recipe{"prime-power", {{"p", std::to_string(p)}}});
}

AbelianMorphism power_reduction(const AbelianSystem& integers, const AbelianSystem& quotients) {
    return AbelianMorphism::rule(
        integers, quotients, IndexMap::identity(),
        [integers, quotients](Index n) { return scalar(integers.object(n), quotients.object(n), 1); },
        Recipe{"reduction", {}});
}

DyadicExample dyadic_example() {
    DyadicExample e;
    e.doubling = doubling_sequence(2);
    e.quotients = prime_power_quotients(2);
    e.reduction = power_reduction(e.doubling, e.quotients);
    return e;
}

AbelianMorphism miscoloured_reduction() {
    const auto source = constant_sequence<Ab>(FgAbelianObject::integers());
    const auto target = prime_power_quotients(2);
    return AbelianMorphism::rule(
        source, target, IndexMap::identity(),
        [source, target](Index n) { return scalar(source.object(n), target.object(n), n == 2 ? 3 : 1); },
        Recipe{"miscoloured-reduction", {}});
}

template <CategoryBackend C>
InverseSystem<C> constant_system(const typename C::Object& x, std::size_t length) {
    typename InverseSystem<C>::BondTable bonds;
    for (Index a = 0; a < length; ++a)
        for (Index b = a + 1; b < length; ++b) bonds.emplace(std::make_pair(a, b), C::identity(x));
    return InverseSystem<C>::finite(FiniteDirectedPoset::chain(length),
                                    std::vector<typename C::Object>(length, x), std::move(bonds),
                                    SystemFlags{true, std::nullopt});
}

template <>
InverseSystem<Ab> constant_sequence<Ab>(const FgAbelianObject& x) {
    std::string factors;
    for (std::size_t i = 0; i < x.rank(); ++i) factors += (i ? "," : "") + x.factor(i).get_str();
    return AbelianSystem::periodic(NatIndex{1}, Periodicity{1, 1}, {x}, {Ab::identity(x)}, true,
                                   Recipe{"constant", {{"factors", factors}}});
}

template <>
InverseSystem<Pt> constant_sequence<Pt>(const PointedFiniteSet& x) {
    return SetSystem::periodic(NatIndex{1}, Periodicity{1, 1}, {x}, {Pt::identity(x)}, true,
                               Recipe{"constant", {{"size", std::to_string(x.size)}}});
}

SetSystem corrupted_bond_chain() {
    const PointedFiniteSet two(2);
    SetSystem::BondTable bonds;
    bonds.emplace(std::make_pair(Index{0}, Index{1}), PointedMap::identity(two));
    bonds.emplace(std::make_pair(Index{1}, Index{2}), PointedMap::identity(two));
    bonds.emplace(std::make_pair(Index{0}, Index{2}), PointedMap::constant(two, two));
    return SetSystem::finite(FiniteDirectedPoset::chain(3), {two, two, two}, std::move(bonds));
}

// ---------------------------------------------------------------------------

FiniteDirectedPoset random_poset(Rng& rng, std::size_t max_indices) {
    const std::size_t n = 1 + draw(rng, std::max<std::size_t>(max_indices, 1));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::pair<Index, Index>> pairs;
    for (Index i = 0; i + 1 < n; ++i) {
        pairs.emplace_back(i, n - 1);
        for (Index j = i + 1; j + 1 < n; ++j)
            if (draw(rng, 5) < 2) pairs.emplace_back(i, j);
    }
    return FiniteDirectedPoset::from_pairs(labels, pairs);
}

SetSystem random_finite_set_system(Rng& rng, const FiniteDirectedPoset& poset, std::size_t max_size) {
    const std::size_t n = poset.size();
    const std::size_t s = 1 + draw(rng, std::max<std::size_t>(max_size, 1));
    std::vector<std::vector<std::size_t>> cls(n);
    std::vector<std::size_t> ncls(n), extra(n);
    for (Index a : top_down_order(poset)) {
        UnionFind uf(s);
        for (Index b = 0; b < n; ++b) {
            if (b == a || !poset.leq(a, b)) continue;
            for (std::size_t x = 0; x < s; ++x)
                for (std::size_t y = x + 1; y < s; ++y)
                    if (cls[b][x] == cls[b][y]) uf.unite(x, y);
        }
        const std::size_t merges = draw(rng, 3);
        for (std::size_t k = 0; k < merges; ++k) uf.unite(draw(rng, s), draw(rng, s));
        std::map<std::size_t, std::size_t> number;
        cls[a].resize(s);
        for (std::size_t x = 0; x < s; ++x) {
            auto root = uf.find(x);
            auto it = number.find(root);
            if (it == number.end()) it = number.emplace(root, number.size()).first;
            cls[a][x] = it->second;
        }
        ncls[a] = number.size();
        extra[a] = (ncls[a] < max_size && draw(rng, 3) == 0) ? 1 + draw(rng, std::min<std::size_t>(2, max_size - ncls[a])) : 0;
    }
    std::vector<PointedFiniteSet> objects;
    for (Index a = 0; a < n; ++a) objects.emplace_back(ncls[a] + extra[a]);
    SetSystem::BondTable bonds;
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
            if (a == b || !poset.leq(a, b)) continue;
            std::vector<std::size_t> images(objects[b].size, 0);
            for (std::size_t x = 0; x < s; ++x) images[cls[b][x]] = cls[a][x];
            bonds.emplace(std::make_pair(a, b), PointedMap(objects[b], objects[a], images));
        }
    return SetSystem::finite(poset, std::move(objects), std::move(bonds));
}

AbelianSystem random_finite_abelian_system(Rng& rng, const FiniteDirectedPoset& poset, std::size_t max_order) {
    const std::size_t n = poset.size();
    const IntVector g = random_small_group(rng, max_order, false).factors();
    std::vector<std::vector<IntVector>> gens(n);
    std::vector<Quotient> q(n);
    std::vector<FgAbelianObject> objects(n);
    std::vector<std::optional<Integer>> extra(n);
    for (Index a : top_down_order(poset)) {
        std::vector<IntVector> k;
        for (Index b = 0; b < n; ++b)
            if (b != a && poset.leq(a, b)) k.insert(k.end(), gens[b].begin(), gens[b].end());
        if (draw(rng, 2) == 0) {
            IntVector v;
            for (const auto& e : g) v.push_back(Integer(static_cast<long>(draw(rng, e.get_ui()))));
            k.push_back(v);
        }
        gens[a] = k;
        q[a] = quotient(g, k);
        objects[a] = q[a].object;
        const Integer size = order_of(q[a].object.factors());
        const Integer e = 2 + static_cast<long>(draw(rng, 2));
        if (draw(rng, 3) == 0 && size * e <= static_cast<long>(max_order)) {
            extra[a] = e;
            objects[a] = object_sum(q[a].object, FgAbelianObject::cyclic(e));
        }
    }
    AbelianSystem::BondTable bonds;
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
            if (a == b || !poset.leq(a, b)) continue;
            IntMatrix m(objects[a].rank(), objects[b].rank());
            for (std::size_t k = 0; k < q[b].kept.size(); ++k) {
                const IntVector col = q[a].coords * preimage(q[b], k);
                for (std::size_t i = 0; i < col.size(); ++i) m(i, k) = col[i];
            }
            bonds.emplace(std::make_pair(a, b), FgAbelianMorphism(objects[b], objects[a], m));
        }
    return AbelianSystem::finite(poset, std::move(objects), std::move(bonds));
}

template <CategoryBackend C>
SystemMorphism<C> random_finite_morphism(Rng& rng, const InverseSystem<C>& x, const InverseSystem<C>& y) {
    const auto& lam = x.index().poset();
    const auto& m = y.index().poset();
    const Index tx = lam.top();
    const Index ty = m.top();
    const auto g = random_hom<C>(rng, x.object(tx), y.object(ty));
    std::vector<Index> phi;
    std::vector<typename C::Morphism> comps;
    for (Index mu = 0; mu < m.size(); ++mu) {
        const auto leg = C::compose(y.bond(mu, ty), g);
        Index a = draw(rng, 2) == 0 ? tx : draw(rng, lam.size());
        std::vector<typename C::Morphism> options;
        for (auto& h : C::enumerate_homs(x.object(a), y.object(mu), kHomEnumerationCap))
            if (C::equal(C::compose(h, x.bond(a, tx)), leg)) options.push_back(std::move(h));
        if (options.empty()) {
            a = tx;
            options.push_back(leg);
        }
        phi.push_back(a);
        comps.push_back(pick(rng, options));
    }
    return SystemMorphism<C>::table(x, y, IndexMap::table(std::move(phi)), std::move(comps));
}

template <CategoryBackend C>
SystemMorphism<C> random_decreasing_phi_morphism(Rng& rng, const InverseSystem<C>& x, const InverseSystem<C>& y) {
    const auto& lam = x.index().poset();
    const auto& m = y.index().poset();
    const Index tx = lam.top();
    const Index ty = m.top();
    const auto g = random_hom<C>(rng, x.object(tx), y.object(ty));
    std::vector<Index> phi;
    std::vector<typename C::Morphism> comps;
    for (Index mu = 0; mu < m.size(); ++mu) {
        const auto leg = C::compose(y.bond(mu, ty), g);
        if (mu != ty) {
            phi.push_back(tx);
            comps.push_back(leg);
            continue;
        }
        Index a = draw(rng, lam.size());
        std::vector<typename C::Morphism> options;
        for (auto& h : C::enumerate_homs(x.object(a), y.object(mu), kHomEnumerationCap))
            if (C::equal(C::compose(h, x.bond(a, tx)), leg)) options.push_back(std::move(h));
        if (options.empty()) {
            a = tx;
            options.push_back(leg);
        }
        phi.push_back(a);
        comps.push_back(pick(rng, options));
    }
    return SystemMorphism<C>::table(x, y, IndexMap::table(std::move(phi)), std::move(comps));
}

// ---------------------------------------------------------------------------

template <CategoryBackend C>
InverseSystem<C> random_periodic_sequence(Rng& rng, const PeriodicShape& shape,
                                          const std::function<typename C::Object(Rng&)>& object,
                                          const std::string& family) {
    const std::size_t count = shape.periodicity.offset + shape.periodicity.period - shape.first;
    std::vector<typename C::Object> objects;
    for (std::size_t i = 0; i < count; ++i) objects.push_back(object(rng));
    std::vector<typename C::Morphism> steps;
    bool onto = true;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& src = i + 1 < count ? objects[i + 1] : objects[shape.periodicity.offset - shape.first];
        steps.push_back(random_hom<C>(rng, src, objects[i]));
        onto = onto && is_onto<C>(steps.back());
    }
    return InverseSystem<C>::periodic(NatIndex{shape.first}, shape.periodicity, std::move(objects),
                                      std::move(steps), onto, Recipe{family, {}});
}

PeriodicShape random_shape(Rng& rng, std::size_t period) {
    PeriodicShape s;
    s.first = 1;
    s.periodicity = Periodicity{1 + draw(rng, 3), std::max<std::size_t>(period, 1)};
    return s;
}

SetSystem random_set_sequence(std::uint64_t seed, std::size_t period, std::size_t max_size) {
    Rng rng(seed);
    const auto shape = random_shape(rng, period);
    return random_periodic_sequence<Pt>(
        rng, shape, [max_size](Rng& r) { return PointedFiniteSet(1 + draw(r, std::max<std::size_t>(max_size, 1))); },
        "random-set");
}

AbelianSystem random_abelian_sequence(std::uint64_t seed, std::size_t period, std::size_t max_order) {
    Rng rng(seed);
    const auto shape = random_shape(rng, period);
    return random_periodic_sequence<Ab>(
        rng, shape, [max_order](Rng& r) { return random_small_group(r, max_order, true); }, "random-abelian");
}

AbelianSystem random_integral_sequence(Rng& rng, const PeriodicShape& shape, long torsion) {
    static constexpr long kFactors[] = {0, 1, -1, 2, 3};
    const FgAbelianObject obj = torsion == 0 ? FgAbelianObject::integers()
                                             : FgAbelianObject({Integer(0), Integer(torsion)});
    const std::size_t count = shape.periodicity.offset + shape.periodicity.period - shape.first;
    std::vector<FgAbelianObject> objects(count, obj);
    std::vector<FgAbelianMorphism> steps;
    bool onto = true;
    for (std::size_t i = 0; i < count; ++i) {
        const long a = kFactors[draw(rng, std::size(kFactors))];
        if (torsion == 0) {
            steps.push_back(scalar(obj, obj, a));
            onto = onto && (a == 1 || a == -1);
            continue;
        }
        const long c = static_cast<long>(draw(rng, static_cast<std::size_t>(torsion)));
        const long t = static_cast<long>(draw(rng, static_cast<std::size_t>(torsion)));
        steps.emplace_back(obj, obj, IntMatrix{{a, 0}, {c, t}});
        onto = onto && (a == 1 || a == -1) && std::gcd(t, torsion) == 1;
    }
    return AbelianSystem::periodic(NatIndex{shape.first}, shape.periodicity, std::move(objects), std::move(steps), onto,
                                   Recipe{"random-integral", {{"torsion", std::to_string(torsion)}}});
}

AbelianMorphism scaled_shift(const AbelianSystem& x, long c, Index k) {
    return AbelianMorphism::rule(
        x, x, IndexMap::affine(1, k),
        [x, c, k](Index n) {
            const auto obj = x.object(n);
            return compose(FgAbelianMorphism(obj, obj, IntMatrix::diagonal(IntVector(obj.rank(), Integer(c)))),
                           x.bond(n, n + k));
        },
        Recipe{"scaled-shift", {{"c", std::to_string(c)}, {"k", std::to_string(k)}}});
}

template <CategoryBackend C>
std::optional<SystemMorphism<C>> random_level_morphism(Rng& rng, const InverseSystem<C>& x,
                                                       const InverseSystem<C>& y) {
    if (!x.is_periodic_table() || !y.is_periodic_table() || !(x.index() == y.index()) ||
        !(x.flags().eventually_periodic == y.flags().eventually_periodic))
        throw std::invalid_argument("random_level_morphism: periodic sequences of the same shape required");
    const Index first = x.index().first();
    const Periodicity per = *x.flags().eventually_periodic;
    const Index o = per.offset;
    const Index p = per.period;

    for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
        const std::uint64_t salt = rng();
        // f_n from f_{n+1}: any u with u ∘ p_n = q_n ∘ f_{n+1}, chosen by a hash of f_{n+1}.
        auto lift = [&](const typename C::Morphism& next, Index n) -> std::optional<typename C::Morphism> {
            const auto rhs = C::compose(y.step(n), next);
            std::vector<typename C::Morphism> options;
            for (auto& u : C::enumerate_homs(x.object(n), y.object(n), kHomEnumerationCap))
                if (C::equal(C::compose(u, x.step(n)), rhs)) options.push_back(std::move(u));
            if (options.empty()) return std::nullopt;
            return options[fnv1a(C::to_string(next), salt + n) % options.size()];
        };
        auto period_map = [&](const typename C::Morphism& g) -> std::optional<typename C::Morphism> {
            std::optional<typename C::Morphism> cur = g;
            for (Index n = o + p; n-- > o;) {
                cur = lift(*cur, n);
                if (!cur) return std::nullopt;
            }
            return cur;
        };

        std::vector<typename C::Morphism> orbit{random_hom<C>(rng, x.object(o), y.object(o))};
        std::map<std::string, std::size_t> seen{{C::to_string(orbit[0]), 0}};
        std::optional<std::size_t> cycle_start;
        for (int it = 0; it < 256 && !cycle_start; ++it) {
            auto next = period_map(orbit.back());
            if (!next) break;
            auto key = C::to_string(*next);
            if (auto s = seen.find(key); s != seen.end()) {
                cycle_start = s->second;
                break;
            }
            seen.emplace(key, orbit.size());
            orbit.push_back(std::move(*next));
        }
        if (!cycle_start) continue;
        const std::size_t c = orbit.size() - *cycle_start;
        const auto g = orbit[*cycle_start];

        const Index end = o + c * p;
        std::vector<std::optional<typename C::Morphism>> comps(end - first);
        std::optional<typename C::Morphism> cur = g;
        bool ok = true;
        for (Index n = end; n-- > first;) {
            cur = lift(*cur, n);
            if (!cur) {
                ok = false;
                break;
            }
            comps[n - first] = cur;
        }
        if (!ok || !C::equal(*comps[o - first], g)) continue;
        std::vector<typename C::Morphism> table;
        for (auto& m : comps) table.push_back(std::move(*m));
        return SystemMorphism<C>::periodic(x, y, IndexMap::identity(), Periodicity{o, c * p}, std::move(table));
    }
    return std::nullopt;
}

template <CategoryBackend C>
SystemMorphism<C> shift_morphism(const InverseSystem<C>& x, Index k) {
    if (!x.is_sequence()) throw std::invalid_argument("shift_morphism: sequences only");
    if (x.is_periodic_table()) {
        const Periodicity per = *x.flags().eventually_periodic;
        std::vector<typename C::Morphism> comps;
        for (Index n = x.index().first(); n < per.offset + per.period; ++n) comps.push_back(x.bond(n, n + k));
        return SystemMorphism<C>::periodic(x, x, IndexMap::affine(1, k), per, std::move(comps));
    }
    return SystemMorphism<C>::rule(
        x, x, IndexMap::affine(1, k), [x, k](Index n) { return x.bond(n, n + k); },
        Recipe{"shift", {{"k", std::to_string(k)}}});
}

template <CategoryBackend C>
SystemMorphism<C> perturb_equivalent(const SystemMorphism<C>& f, std::uint64_t seed) {
    Rng rng(seed);
    const IndexSet& lam = f.source().index();
    const IndexSet& m = f.target().index();
    if (m.is_finite()) {
        std::vector<Index> phi;
        std::vector<typename C::Morphism> comps;
        for (Index mu = 0; mu < m.poset().size(); ++mu) {
            const Index base = f.phi()(mu);
            Index up = base;
            if (lam.is_finite()) {
                std::vector<Index> ups;
                for (Index l : lam.elements(0))
                    if (lam.leq(base, l)) ups.push_back(l);
                up = pick(rng, ups);
            } else {
                up = base + draw(rng, 4);
            }
            phi.push_back(up);
            comps.push_back(f.restricted(mu, up));
        }
        return SystemMorphism<C>::table(f.source(), f.target(), IndexMap::table(std::move(phi)), std::move(comps));
    }
    IndexMap phi2 = f.phi();
    if (lam.is_finite()) {
        std::vector<Index> ups;
        for (Index l : lam.elements(0))
            if (lam.leq(f.phi().add(), l)) ups.push_back(l);
        phi2 = IndexMap::constant(pick(rng, ups));
    } else {
        phi2 = IndexMap::affine(f.phi().mul(), f.phi().add() + 1 + draw(rng, 3));
    }
    Recipe recipe{"perturbed", {{"phi", phi2.to_string()}}};
    if (!f.recipe().empty()) recipe.params.emplace_back("of", f.recipe().to_string());
    return SystemMorphism<C>::rule(
        f.source(), f.target(), phi2, [f, phi2](Index mu) { return f.restricted(mu, phi2(mu)); }, recipe);
}

// ---------------------------------------------------------------------------

AbelianMorphism bounded_phi_morphism(std::uint64_t seed) {
    Rng rng(seed);
    const auto poset = random_poset(rng, 4);
    const auto x = random_finite_abelian_system(rng, poset, 16);
    const Index top = poset.top();
    const Index o = 1 + draw(rng, 3);
    std::vector<FgAbelianObject> objects;
    for (Index n = 1; n <= o; ++n) objects.push_back(random_small_group(rng, 16, true));
    std::vector<FgAbelianMorphism> steps;
    for (Index n = 1; n < o; ++n) steps.push_back(random_hom<Ab>(rng, objects[n], objects[n - 1]));
    steps.push_back(Ab::identity(objects[o - 1]));
    bool onto = true;
    for (const auto& s : steps) onto = onto && is_onto<Ab>(s);
    const auto y = AbelianSystem::periodic(NatIndex{1}, Periodicity{o, 1}, objects, steps, onto,
                                           Recipe{"eventually-constant", {}});
    const auto cone_top = random_hom<Ab>(rng, x.object(top), y.object(o));
    std::vector<FgAbelianMorphism> comps;
    for (Index n = 1; n <= o; ++n) comps.push_back(Ab::compose(y.bond(n, o), cone_top));
    return AbelianMorphism::periodic(x, y, IndexMap::constant(top), Periodicity{o, 1}, std::move(comps));
}

AbelianSystem direct_sum(const AbelianSystem& x, const AbelianSystem& w) {
    if (!(x.index() == w.index())) throw TypeMismatch("direct_sum: different index sets");
    if (!x.is_sequence()) {
        const auto& poset = x.index().poset();
        std::vector<FgAbelianObject> objects;
        for (Index i = 0; i < poset.size(); ++i) objects.push_back(object_sum(x.object(i), w.object(i)));
        AbelianSystem::BondTable bonds;
        for (Index a = 0; a < poset.size(); ++a)
            for (Index b = 0; b < poset.size(); ++b)
                if (a != b && poset.leq(a, b)) bonds.emplace(std::make_pair(a, b), block_diag(x.bond(a, b), w.bond(a, b)));
        return AbelianSystem::finite(poset, std::move(objects), std::move(bonds));
    }
    if (!x.is_periodic_table() || !w.is_periodic_table() ||
        !(x.flags().eventually_periodic == w.flags().eventually_periodic))
        throw TypeMismatch("direct_sum: periodic sequences of the same shape required");
    std::vector<FgAbelianObject> objects;
    std::vector<FgAbelianMorphism> steps;
    for (std::size_t i = 0; i < x.periodic_objects().size(); ++i) {
        objects.push_back(object_sum(x.periodic_objects()[i], w.periodic_objects()[i]));
        steps.push_back(block_diag(x.periodic_steps()[i], w.periodic_steps()[i]));
    }
    return AbelianSystem::periodic(x.index().nat(), *x.flags().eventually_periodic, std::move(objects),
                                   std::move(steps),
                                   x.flags().all_bonds_epimorphic && w.flags().all_bonds_epimorphic,
                                   Recipe{"direct-sum", {}});
}

namespace {

template <class Make>
AbelianMorphism levelwise(const AbelianSystem& s, const AbelianSystem& t, Make make) {
    if (!s.is_sequence()) {
        const auto& poset = s.index().poset();
        std::vector<Index> ids;
        std::vector<FgAbelianMorphism> comps;
        for (Index i = 0; i < poset.size(); ++i) {
            ids.push_back(i);
            comps.push_back(make(s.object(i), t.object(i)));
        }
        return AbelianMorphism::table(s, t, IndexMap::table(std::move(ids)), std::move(comps));
    }
    const Periodicity per = *s.flags().eventually_periodic;
    std::vector<FgAbelianMorphism> comps;
    for (Index n = s.index().first(); n < per.offset + per.period; ++n) comps.push_back(make(s.object(n), t.object(n)));
    return AbelianMorphism::periodic(s, t, IndexMap::identity(), per, std::move(comps));
}

}  // namespace

AbelianMorphism summand_inclusion(const AbelianSystem& x, const AbelianSystem& sum) {
    return levelwise(x, sum, inclusion);
}

AbelianMorphism summand_projection(const AbelianSystem& sum, const AbelianSystem& x) {
    return levelwise(sum, x, projection);
}

namespace {

struct SharedShape {
    std::optional<FiniteDirectedPoset> poset;
    PeriodicShape shape;
};

AbelianSystem random_system_of_shape(Rng& rng, const SharedShape& s, std::size_t max_order) {
    if (s.poset) return random_finite_abelian_system(rng, *s.poset, max_order);
    return random_periodic_sequence<Ab>(
        rng, s.shape, [max_order](Rng& r) { return random_small_group(r, max_order, true); }, "random-abelian");
}

SharedShape random_shared_shape(Rng& rng, bool finite) {
    SharedShape s;
    if (finite) s.poset = random_poset(rng, 4);
    else s.shape = random_shape(rng, 1 + draw(rng, 2));
    return s;
}

}  // namespace

DominationPair domination_pair(std::uint64_t seed) {
    Rng rng(seed);
    if (seed % 4 == 3) {
        const auto shape = random_shape(rng, 1 + draw(rng, 2));
        const auto x = random_integral_sequence(rng, shape, static_cast<long>(draw(rng, 4)));
        const auto w = random_integral_sequence(rng, shape, static_cast<long>(draw(rng, 3)));
        const auto y = direct_sum(x, w);
        return {summand_inclusion(x, y), summand_projection(y, x)};
    }
    const auto shape = random_shared_shape(rng, seed % 2 == 0);
    const auto x = random_system_of_shape(rng, shape, 8);
    const auto w = random_system_of_shape(rng, shape, 4);
    const auto y = direct_sum(x, w);
    return {summand_inclusion(x, y), summand_projection(y, x)};
}

std::optional<RightInverseInstance> right_inverse_instance(std::uint64_t seed) {
    Rng rng(seed);
    if (seed % 4 == 3) {
        const auto shape = random_shape(rng, 1 + draw(rng, 2));
        const auto y = random_integral_sequence(rng, shape, static_cast<long>(draw(rng, 4)));
        const auto w = random_integral_sequence(rng, shape, static_cast<long>(draw(rng, 3)));
        const auto x = direct_sum(y, w);
        const long c = static_cast<long>(draw(rng, 4)) - 1;
        return RightInverseInstance{summand_projection(x, y), summand_inclusion(y, x), scaled_shift(y, c, draw(rng, 3))};
    }
    const bool finite = seed % 2 == 0;
    const auto shape = random_shared_shape(rng, finite);
    const auto y = random_system_of_shape(rng, shape, 8);
    const auto w = random_system_of_shape(rng, shape, 4);
    const auto z = random_system_of_shape(rng, shape, 8);
    const auto x = direct_sum(y, w);
    RightInverseInstance inst{summand_projection(x, y), summand_inclusion(y, x), {}};
    if (finite) {
        inst.g = random_finite_morphism<Ab>(rng, y, z);
    } else {
        auto g = random_level_morphism<Ab>(rng, y, z);
        if (!g) return std::nullopt;
        inst.g = *g;
    }
    return inst;
}

// ---------------------------------------------------------------------------

AbelianSystem abelian_sequence_from_recipe(const Recipe& r) {
    if (r.family == "doubling") return doubling_sequence(std::stol(param(r, "factor", "2")));
    if (r.family == "prime-power") return prime_power_quotients(std::stol(param(r, "p", "2")));
    if (r.family == "constant") {
        IntVector factors;
        std::stringstream ss(param(r, "factors", ""));
        for (std::string item; std::getline(ss, item, ',');)
            if (!item.empty()) factors.emplace_back(item);
        return constant_sequence<Ab>(FgAbelianObject(factors));
    }
    throw std::invalid_argument("unknown sequence family '" + r.family + "'");
}

AbelianMorphism abelian_morphism_from_recipe(const Recipe& r, const AbelianSystem& source,
                                             const AbelianSystem& target) {
    if (r.family == "reduction") return power_reduction(source, target);
    if (r.family == "identity") {
        if (!source.same_as(target)) throw TypeMismatch("identity morphism between different systems");
        return identity_morphism(source);
    }
    if (r.family == "shift") {
        if (!source.same_as(target)) throw TypeMismatch("shift morphism between different systems");
        return shift_morphism(source, std::stoul(param(r, "k", "1")));
    }
    throw std::invalid_argument("unknown morphism family '" + r.family + "'");
}

#define PROMOV_INSTANTIATE_FAMILIES(C)                                                                          \
    template InverseSystem<C> constant_system<C>(const C::Object&, std::size_t);                                \
    template SystemMorphism<C> random_finite_morphism<C>(Rng&, const InverseSystem<C>&, const InverseSystem<C>&); \
    template SystemMorphism<C> random_decreasing_phi_morphism<C>(Rng&, const InverseSystem<C>&,                 \
                                                                 const InverseSystem<C>&);                      \
    template InverseSystem<C> random_periodic_sequence<C>(Rng&, const PeriodicShape&,                           \
                                                          const std::function<C::Object(Rng&)>&,                \
                                                          const std::string&);                                  \
    template std::optional<SystemMorphism<C>> random_level_morphism<C>(Rng&, const InverseSystem<C>&,           \
                                                                       const InverseSystem<C>&);                \
    template SystemMorphism<C> shift_morphism<C>(const InverseSystem<C>&, Index);                               \
    template SystemMorphism<C> perturb_equivalent<C>(const SystemMorphism<C>&, std::uint64_t);

PROMOV_INSTANTIATE_FAMILIES(AbelianCategory)
PROMOV_INSTANTIATE_FAMILIES(PointedSetCategory)

}  // namespace promov
