#include "promov/oracle.hpp"

#include <algorithm>
#include <functional>

namespace promov {

namespace {

template <CategoryBackend C>
class Oracle {
public:
    using Object = typename C::Object;
    using Morphism = typename C::Morphism;

    Oracle(Property p, const SystemMorphism<C>& f, const std::vector<Object>& c0)
        : p_(p), f_(f), x_(f.source()), y_(f.target()), lam_(x_.index().poset()), m_(y_.index().poset()), c0_(c0) {}

    bool index_works(Index mu, Index lambda) const {
        switch (p_) {
            case Property::Movable: return movable(mu, lambda, false);
            case Property::StronglyMovable: return movable(mu, lambda, true);
            case Property::UniformlyMovable: return uniform(mu, lambda);
            case Property::CoMovable: return co(mu, lambda, false);
            case Property::StronglyCoMovable: return co(mu, lambda, true);
            case Property::UniformlyCoMovable: return uniform_co(mu, lambda);
            case Property::MittagLeffler: return ml(mu, lambda);
            case Property::C0Movable: return c0_movable(mu, lambda);
            case Property::C0UniformlyMovable: return c0_uniform(mu, lambda);
        }
        return false;
    }

private:
    std::vector<Morphism> homs(const Object& a, const Object& b) const {
        return C::enumerate_homs(a, b, kHomEnumerationCap);
    }
    std::vector<Index> above(Index a) const {
        std::vector<Index> out;
        for (Index l = 0; l < lam_.size(); ++l)
            if (lam_.leq(a, l)) out.push_back(l);
        return out;
    }

    bool movable(Index mu, Index lambda, bool strong) const {
        const Morphism r = f_.restricted(mu, lambda);
        for (Index mu2 = 0; mu2 < m_.size(); ++mu2) {
            if (!m_.leq(mu, mu2)) continue;
            const Morphism q = y_.bond(mu, mu2);
            bool exists = false;
            for (const auto& u : homs(x_.object(lambda), y_.object(mu2))) {
                if (!C::equal(C::compose(q, u), r)) continue;
                if (!strong) {
                    exists = true;
                    break;
                }
                for (Index s = 0; s < lam_.size() && !exists; ++s)
                    if (lam_.leq(lambda, s) && lam_.leq(f_.phi()(mu2), s) &&
                        C::equal(C::compose(u, x_.bond(lambda, s)), f_.restricted(mu2, s)))
                        exists = true;
                if (exists) break;
            }
            if (!exists) return false;
        }
        return true;
    }

    bool co(Index mu, Index lambda, bool strong) const {
        const Morphism r = f_.restricted(mu, lambda);
        for (Index l2 : above(f_.phi()(mu))) {
            const Morphism k = f_.restricted(mu, l2);
            bool exists = false;
            for (const auto& u : homs(x_.object(lambda), x_.object(l2))) {
                if (!C::equal(C::compose(k, u), r)) continue;
                if (!strong) {
                    exists = true;
                    break;
                }
                for (Index s = 0; s < lam_.size() && !exists; ++s)
                    if (lam_.leq(lambda, s) && lam_.leq(l2, s) &&
                        C::equal(C::compose(u, x_.bond(lambda, s)), x_.bond(l2, s)))
                        exists = true;
                if (exists) break;
            }
            if (!exists) return false;
        }
        return true;
    }

    /// A compatible family of legs from `source` into the system z, one per
    /// index, where `allowed(i, leg)` filters candidates. Backtracking that
    /// checks every comparable pair; indices with the most elements below them
    /// are placed first so that early choices prune the rest.
    bool cone_exists(const InverseSystem<C>& z, const Object& source,
                     const std::function<bool(Index, const Morphism&)>& allowed) const {
        const auto& poset = z.index().poset();
        const std::size_t n = poset.size();
        std::vector<std::vector<Morphism>> options(n);
        for (Index i = 0; i < n; ++i) {
            for (auto& m : homs(source, z.object(i)))
                if (allowed(i, m)) options[i].push_back(std::move(m));
            if (options[i].empty()) return false;
        }
        std::vector<Index> order(n);
        std::vector<std::size_t> below(n, 0);
        for (Index i = 0; i < n; ++i) {
            order[i] = i;
            for (Index j = 0; j < n; ++j) below[i] += poset.leq(j, i);
        }
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return below[a] > below[b]; });
        std::vector<const Morphism*> chosen(n, nullptr);
        std::function<bool(std::size_t)> place = [&](std::size_t k) {
            if (k == n) return true;
            const Index i = order[k];
            for (const auto& cand : options[i]) {
                bool ok = true;
                for (std::size_t t = 0; t < k && ok; ++t) {
                    const Index j = order[t];
                    if (poset.leq(i, j) && !C::equal(C::compose(z.bond(i, j), *chosen[j]), cand)) ok = false;
                    if (ok && poset.leq(j, i) && !C::equal(C::compose(z.bond(j, i), cand), *chosen[j])) ok = false;
                }
                if (!ok) continue;
                chosen[i] = &cand;
                if (place(k + 1)) return true;
            }
            chosen[i] = nullptr;
            return false;
        };
        return place(0);
    }

    bool uniform(Index mu, Index lambda) const {
        const Morphism r = f_.restricted(mu, lambda);
        return cone_exists(y_, x_.object(lambda),
                           [&](Index i, const Morphism& m) { return i != mu || C::equal(m, r); });
    }

    bool uniform_co(Index mu, Index lambda) const {
        const Morphism r = f_.restricted(mu, lambda);
        const Index base = f_.phi()(mu);
        const Morphism fm = f_.component(mu);
        return cone_exists(x_, x_.object(lambda),
                           [&](Index i, const Morphism& m) { return i != base || C::equal(C::compose(fm, m), r); });
    }

    std::vector<std::size_t> image_set(const Morphism& m) const {
        auto u = C::underlying(m);
        std::vector<std::size_t> img(u.images().begin(), u.images().end());
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        return img;
    }

    bool ml(Index mu, Index lambda) const {
        const auto here = image_set(f_.restricted(mu, lambda));
        for (Index l2 : above(lambda))
            if (image_set(f_.restricted(mu, l2)) != here) return false;
        return true;
    }

    bool c0_movable(Index a, Index b) const {
        for (const auto& x0 : c0_)
            for (const auto& h : homs(x0, x_.object(b))) {
                const Morphism rhs = C::compose(x_.bond(a, b), h);
                for (Index d : above(a)) {
                    bool exists = false;
                    for (const auto& r : homs(x0, x_.object(d)))
                        if (C::equal(C::compose(x_.bond(a, d), r), rhs)) {
                            exists = true;
                            break;
                        }
                    if (!exists) return false;
                }
            }
        return true;
    }

    bool c0_uniform(Index a, Index b) const {
        for (const auto& x0 : c0_)
            for (const auto& h : homs(x0, x_.object(b))) {
                const Morphism rhs = C::compose(x_.bond(a, b), h);
                if (!cone_exists(x_, x0, [&](Index i, const Morphism& m) { return i != a || C::equal(m, rhs); }))
                    return false;
            }
        return true;
    }

    Property p_;
    const SystemMorphism<C>& f_;
    const InverseSystem<C>& x_;
    const InverseSystem<C>& y_;
    const FiniteDirectedPoset& lam_;
    const FiniteDirectedPoset& m_;
    const std::vector<Object>& c0_;
};

}  // namespace

template <CategoryBackend C>
Verdict<C> oracle_check(Property p, const SystemMorphism<C>& f, const std::vector<typename C::Object>& c0) {
    if (!f.source().index().is_finite() || !f.target().index().is_finite())
        throw std::invalid_argument("oracle_check: finite index sets only");
    const Oracle<C> oracle(p, f, c0);
    const auto& lam = f.source().index().poset();
    const auto& m = f.target().index().poset();
    Verdict<C> v;
    v.property = p;
    v.exact = true;
    v.status = Status::Holds;
    for (Index mu = 0; mu < m.size(); ++mu) {
        MuRecord<C> rec;
        rec.mu = mu;
        rec.rule = Rule::Exhaustive;
        for (Index l = 0; l < lam.size(); ++l)
            if (lam.leq(f.phi()(mu), l) && oracle.index_works(mu, l)) rec.index_set.push_back(l);
        if (!rec.index_set.empty()) rec.lambda = rec.index_set.front();
        rec.status = rec.index_set.empty() ? Status::Fails : Status::Holds;
        if (rec.index_set.empty() && v.status == Status::Holds) {
            v.status = Status::Fails;
            v.refutation = Refutation{mu, lam.top(), mu, std::nullopt, std::nullopt, "no index satisfies the definition"};
        }
        v.records.push_back(std::move(rec));
    }
    return v;
}

template Verdict<AbelianCategory> oracle_check<AbelianCategory>(Property, const SystemMorphism<AbelianCategory>&,
                                                                const std::vector<AbelianCategory::Object>&);
template Verdict<PointedSetCategory> oracle_check<PointedSetCategory>(
    Property, const SystemMorphism<PointedSetCategory>&, const std::vector<PointedSetCategory::Object>&);

}  // namespace promov
