#include "promov/checkers.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <sstream>
#include <thread>

namespace promov {

const char* const kHorizonDisclaimer =
    "FailsAtHorizon means no witness exists inside the horizon box; it is evidence of failure, "
    "not a proof for the unbounded index set. HoldsAtHorizon and Unknown are likewise bounded by the "
    "horizon shown.";

namespace {

struct PropertyName {
    Property p;
    const char* name;
};

constexpr PropertyName kPropertyNames[] = {
    {Property::Movable, "movable"},
    {Property::StronglyMovable, "strongly-movable"},
    {Property::UniformlyMovable, "uniformly-movable"},
    {Property::CoMovable, "co-movable"},
    {Property::StronglyCoMovable, "strongly-co-movable"},
    {Property::UniformlyCoMovable, "uniformly-co-movable"},
    {Property::MittagLeffler, "ml"},
    {Property::C0Movable, "c0-movable"},
    {Property::C0UniformlyMovable, "c0-uniformly-movable"},
};

constexpr const char* kStatusNames[] = {"Holds",          "HoldsStabilized", "HoldsAtHorizon",
                                        "FailsAtHorizon", "Fails",           "Unknown"};
constexpr const char* kRuleNames[] = {"none",         "exhaustive", "zero-map", "epimorphic-bonds",
                                      "eventual-periodicity", "bounded-index", "vacuous"};

}  // namespace

std::string to_string(Property p) {
    for (const auto& e : kPropertyNames)
        if (e.p == p) return e.name;
    return "?";
}
std::string to_string(Status s) { return kStatusNames[static_cast<int>(s)]; }
std::string to_string(Rule r) { return kRuleNames[static_cast<int>(r)]; }

std::optional<Property> parse_property(const std::string& name) {
    for (const auto& e : kPropertyNames)
        if (name == e.name) return e.p;
    if (name == "mittag-leffler") return Property::MittagLeffler;
    return std::nullopt;
}
std::optional<Status> parse_status(const std::string& name) {
    for (int i = 0; i < 6; ++i)
        if (name == kStatusNames[i]) return static_cast<Status>(i);
    return std::nullopt;
}
std::optional<Rule> parse_rule(const std::string& name) {
    for (int i = 0; i < 7; ++i)
        if (name == kRuleNames[i]) return static_cast<Rule>(i);
    return std::nullopt;
}

const std::vector<Property>& all_properties() {
    static const std::vector<Property> all = [] {
        std::vector<Property> v;
        for (const auto& e : kPropertyNames) v.push_back(e.p);
        return v;
    }();
    return all;
}

bool holds(Status s) { return s == Status::Holds || s == Status::HoldsStabilized || s == Status::HoldsAtHorizon; }

int exit_code(Status s) {
    switch (s) {
        case Status::Holds:
        case Status::HoldsStabilized: return 0;
        case Status::Fails:
        case Status::FailsAtHorizon: return 1;
        case Status::HoldsAtHorizon:
        case Status::Unknown: return 3;
    }
    return 3;
}

namespace {

bool movable_family(Property p) {
    return p == Property::Movable || p == Property::StronglyMovable || p == Property::UniformlyMovable;
}
bool is_strong(Property p) { return p == Property::StronglyMovable || p == Property::StronglyCoMovable; }
bool is_cone(Property p) {
    return p == Property::UniformlyMovable || p == Property::UniformlyCoMovable || p == Property::C0UniformlyMovable;
}
bool is_c0(Property p) { return p == Property::C0Movable || p == Property::C0UniformlyMovable; }

template <CategoryBackend C>
bool satisfies(const typename C::Morphism& u, const std::vector<Constraint<typename C::Morphism>>& cs) {
    for (const auto& c : cs) {
        auto lhs = c.side == Side::Post ? C::compose(c.known, u) : C::compose(u, c.known);
        if (!C::equal(lhs, c.result)) return false;
    }
    return true;
}

/// Solve and re-verify; with prefer_zero the zero morphism is offered first.
template <CategoryBackend C>
std::optional<typename C::Morphism> solve_checked(const typename C::Object& src, const typename C::Object& tgt,
                                                  std::vector<Constraint<typename C::Morphism>> cs,
                                                  bool prefer_zero) {
    if (prefer_zero) {
        auto z = C::zero(src, tgt);
        if (satisfies<C>(z, cs)) return z;
    }
    FactorizationProblem<typename C::Object, typename C::Morphism> p{src, tgt, cs};
    auto u = C::solve(p);
    if (u && !satisfies<C>(*u, cs)) throw std::logic_error("factorization solver returned a non-solution");
    return u;
}

/// Iterations of the period endomorphism tried on an infinite object before
/// giving up on a stable image.
constexpr Index kInfiniteImageIterations = 64;

/// n0 + k·period where the image chain of P = p_{n0,n0+period} first repeats,
/// n0 = max(offset, base). Once im P^{k+1} = im P^k every later image agrees,
/// in any object. Finite objects always reach that point.
template <CategoryBackend C>
std::optional<Index> image_stabilization(const InverseSystem<C>& z, Index base, bool require_finite) {
    if (!z.is_sequence() || !z.flags().eventually_periodic) return std::nullopt;
    const Periodicity per = *z.flags().eventually_periodic;
    const Index n0 = std::max({per.offset, base, z.index().first()});
    bool finite = true;
    for (Index j = 0; j <= per.period; ++j) finite = finite && C::is_finite(z.object(n0 + j));
    if (require_finite && !finite) return std::nullopt;
    if (!(z.object(n0 + per.period) == z.object(n0))) return std::nullopt;
    const auto endo = z.bond(n0, n0 + per.period);
    auto s = C::whole(z.object(n0));
    const Index limit = finite ? (Index{1} << 20) : kInfiniteImageIterations;
    for (Index k = 0; k < limit; ++k) {
        auto next = C::image_of(endo, s);
        if (C::subobjects_equal(next, s)) return n0 + k * per.period;
        s = std::move(next);
    }
    return std::nullopt;
}

enum class Outcome { Ok, Refuted, Exhausted };

template <CategoryBackend C>
struct Attempt {
    Outcome outcome = Outcome::Ok;
    std::vector<Witness<C>> witnesses;
    Refutation failure;
};

/// Precomposition for the co-family: the identity of X_λ, or h : X0 -> X_λ for C0 checks.
template <CategoryBackend C>
struct ProbeMap {
    std::optional<std::size_t> object;
    std::optional<std::size_t> hom;
    typename C::Morphism h;
};

template <CategoryBackend C>
class Engine {
public:
    using Object = typename C::Object;
    using Morphism = typename C::Morphism;

    Engine(Property p, const SystemMorphism<C>& f, const Horizon& h, const std::vector<Object>& c0)
        : p_(p), f_(f), x_(f.source()), y_(f.target()), lam_(x_.index()), m_(y_.index()), h_(h), c0_(c0) {}

    MuRecord<C> run(Index mu, std::optional<Refutation>& ref) const {
        if (p_ == Property::MittagLeffler) return run_ml(mu);
        MuRecord<C> rec;
        rec.mu = mu;
        const Index base = f_.phi()(mu);
        if (is_c0(p_) && c0_.empty()) {
            rec.status = m_.is_finite() ? Status::Holds : Status::HoldsStabilized;
            rec.rule = Rule::Vacuous;
            rec.lambda = base;
            rec.note = "empty C0 list";
            if (lam_.is_finite()) rec.index_set = lam_.at_least(base, 0);
            return rec;
        }
        const bool deep_finite = movable_family(p_) ? m_.is_finite() : lam_.is_finite();

        if (lam_.is_finite() && deep_finite) {
            rec.rule = Rule::Exhaustive;
            std::optional<Refutation> top_failure;
            for (Index l : lam_.at_least(base, 0)) {
                auto a = attempt(mu, l, deeps(mu, l), false);
                if (a.outcome == Outcome::Ok) {
                    if (!rec.lambda) {
                        rec.lambda = l;
                        rec.witnesses = std::move(a.witnesses);
                    }
                    rec.index_set.push_back(l);
                } else if (l == lam_.poset().top()) {
                    top_failure = a.failure;
                }
            }
            rec.status = rec.index_set.empty() ? Status::Fails : Status::Holds;
            if (rec.index_set.empty()) ref = top_failure;
            return rec;
        }

        if (lam_.is_finite()) {
            const Index top = lam_.poset().top();
            auto a = attempt(mu, top, deeps(mu, top), false);
            return finish(rec, top, std::move(a), Rule::BoundedIndex, Status::HoldsStabilized, ref);
        }

        const Index probe = std::max(h_.lambda_max, base);
        if (probe > h_.lambda_max) rec.note = "phi(mu) exceeds lambda_max; probed at phi(mu)";

        if (!is_strong(p_)) {
            for (Index l = base; l <= probe; ++l) {
                if (!C::is_zero(f_.restricted(mu, l))) continue;
                auto a = attempt(mu, l, deeps(mu, l), true);
                if (a.outcome != Outcome::Ok) throw std::logic_error("zero witness rejected");
                return finish(rec, l, std::move(a), Rule::ZeroMap, Status::HoldsStabilized, ref);
            }
            if (epi_rule_applies(base)) {
                auto a = attempt(mu, base, deeps(mu, base), false);
                if (a.outcome == Outcome::Ok)
                    return finish(rec, base, std::move(a), Rule::EpimorphicBonds, Status::HoldsStabilized, ref);
                rec.note = "bonds flagged epimorphic but an in-range lift failed";
            }
        }

        auto a = attempt(mu, probe, deeps(mu, probe), false);
        if (a.outcome != Outcome::Ok || deep_finite)
            return finish(rec, probe, std::move(a), Rule::Exhaustive, Status::Holds, ref);

        if (!is_strong(p_)) {
            const auto& chain_system = movable_family(p_) ? y_ : x_;
            const Index chain_base = movable_family(p_) ? mu : base;
            if (auto n = stabilization_index<C>(chain_system, chain_base)) {
                auto extra = attempt(mu, probe, {tail_deep(mu, base, *n)}, false);
                if (extra.outcome != Outcome::Ok) return finish(rec, probe, std::move(extra), Rule::None, Status::Holds, ref);
                if (!is_cone(p_))
                    for (auto& w : extra.witnesses) a.witnesses.push_back(std::move(w));
                rec.note = "solvability chain constant from index " + std::to_string(*n);
                return finish(rec, probe, std::move(a), Rule::EventualPeriodicity, Status::HoldsStabilized, ref);
            }
        }
        return finish(rec, probe, std::move(a), Rule::None, Status::HoldsAtHorizon, ref);
    }

private:
    MuRecord<C> finish(MuRecord<C>& rec, Index lambda, Attempt<C>&& a, Rule rule, Status ok_status,
                       std::optional<Refutation>& ref) const {
        rec.lambda = lambda;
        if (a.outcome == Outcome::Ok) {
            rec.status = ok_status;
            rec.rule = rule;
            rec.witnesses = std::move(a.witnesses);
        } else if (a.outcome == Outcome::Refuted) {
            rec.status = Status::FailsAtHorizon;
            ref = a.failure;
        } else {
            rec.status = Status::Unknown;
            if (!rec.note.empty()) rec.note += "; ";
            rec.note += a.failure.reason;
        }
        return std::move(rec);
    }

    bool epi_rule_applies(Index base) const {
        if (movable_family(p_))
            return y_.is_sequence() && y_.flags().all_bonds_epimorphic && C::is_projective(x_.object(base));
        if (!x_.flags().all_bonds_epimorphic) return false;
        if (is_c0(p_))
            return std::all_of(c0_.begin(), c0_.end(), [](const Object& o) { return C::is_projective(o); });
        return C::is_projective(x_.object(base));
    }

    /// Deeper indices examined at (μ, λ); for cones the single top leg.
    std::vector<Index> deeps(Index mu, Index lambda) const {
        const Index base = f_.phi()(mu);
        switch (p_) {
            case Property::Movable:
            case Property::StronglyMovable: return m_.at_least(mu, h_.muprime_max);
            case Property::UniformlyMovable:
                return {m_.is_finite() ? m_.poset().top() : mu + h_.cone_max};
            case Property::UniformlyCoMovable:
            case Property::C0UniformlyMovable:
                return {lam_.is_finite() ? lam_.poset().top() : base + h_.cone_max};
            default: return lam_.at_least(base, std::max(h_.muprime_max, lambda));
        }
    }

    Index tail_deep(Index mu, Index base, Index n) const {
        switch (p_) {
            case Property::UniformlyMovable: return std::max(mu + h_.cone_max, n);
            case Property::UniformlyCoMovable:
            case Property::C0UniformlyMovable: return std::max(base + h_.cone_max, n);
            default: return n;
        }
    }

    std::vector<Index> stars(Index lambda, Index other) const {
        if (lam_.is_finite()) {
            std::vector<Index> out;
            for (Index l : lam_.elements(0))
                if (lam_.leq(lambda, l) && lam_.leq(other, l)) out.push_back(l);
            return out;
        }
        const Index lo = std::max(lambda, other);
        std::vector<Index> out;
        for (Index l = lo; l <= lo + h_.cone_max; ++l) out.push_back(l);
        return out;
    }

    std::vector<ProbeMap<C>> probes(Index lambda) const {
        if (!is_c0(p_)) return {ProbeMap<C>{std::nullopt, std::nullopt, C::identity(x_.object(lambda))}};
        std::vector<ProbeMap<C>> out;
        for (std::size_t i = 0; i < c0_.size(); ++i) {
            auto homs = C::enumerate_homs(c0_[i], x_.object(lambda), kHomEnumerationCap);
            for (std::size_t j = 0; j < homs.size(); ++j) out.push_back({i, j, std::move(homs[j])});
        }
        return out;
    }

    Attempt<C> refuted(Index mu, Index lambda, Index deep, const ProbeMap<C>* pr, std::string reason,
                       Outcome o = Outcome::Refuted) const {
        Attempt<C> a;
        a.outcome = o;
        a.failure = {mu, lambda, deep, pr ? pr->object : std::nullopt, pr ? pr->hom : std::nullopt,
                     std::move(reason)};
        return a;
    }

    Attempt<C> attempt(Index mu, Index lambda, const std::vector<Index>& ds, bool prefer_zero) const {
        return movable_family(p_) ? attempt_movable(mu, lambda, ds, prefer_zero)
                                  : attempt_co(mu, lambda, ds, prefer_zero);
    }

    Attempt<C> attempt_movable(Index mu, Index lambda, const std::vector<Index>& ds, bool prefer_zero) const {
        Attempt<C> out;
        const Morphism r = f_.restricted(mu, lambda);
        const Object src = x_.object(lambda);
        for (Index d : ds) {
            const Morphism q = y_.bond(mu, d);
            std::vector<Constraint<Morphism>> cs{{Side::Post, q, r}};
            auto u = solve_checked<C>(src, y_.object(d), cs, prefer_zero);
            if (!u) return refuted(mu, lambda, d, nullptr, "no u with q_{mu,mu'} u = f_{mu,lambda}");
            if (p_ == Property::UniformlyMovable) {
                for (Index leg : m_.elements(d))
                    if (m_.leq(leg, d)) out.witnesses.push_back({leg, std::nullopt, std::nullopt, std::nullopt,
                                                                 C::compose(y_.bond(leg, d), *u)});
                continue;
            }
            if (p_ == Property::Movable) {
                out.witnesses.push_back({d, std::nullopt, std::nullopt, std::nullopt, std::move(*u)});
                continue;
            }
            bool found = false;
            for (Index s : stars(lambda, f_.phi()(d))) {
                auto cs2 = cs;
                cs2.push_back({Side::Pre, x_.bond(lambda, s), f_.restricted(d, s)});
                if (auto v = solve_checked<C>(src, y_.object(d), cs2, prefer_zero)) {
                    out.witnesses.push_back({d, s, std::nullopt, std::nullopt, std::move(*v)});
                    found = true;
                    break;
                }
            }
            if (!found)
                return refuted(mu, lambda, d, nullptr, "no lambda* in range admits u with u p_{lambda,lambda*} = f_{mu',lambda*}",
                               lam_.is_finite() ? Outcome::Refuted : Outcome::Exhausted);
        }
        return out;
    }

    Attempt<C> attempt_co(Index mu, Index lambda, const std::vector<Index>& ds, bool prefer_zero) const {
        Attempt<C> out;
        const Morphism r = f_.restricted(mu, lambda);
        for (const auto& pr : probes(lambda)) {
            const Morphism target_map = C::compose(r, pr.h);
            const Object src = C::source(pr.h);
            for (Index d : ds) {
                const Morphism k = f_.restricted(mu, d);
                std::vector<Constraint<Morphism>> cs{{Side::Post, k, target_map}};
                auto u = solve_checked<C>(src, x_.object(d), cs, prefer_zero);
                if (!u) return refuted(mu, lambda, d, &pr, "no r with f_{mu,lambda'} r = f_{mu,lambda} h");
                if (is_cone(p_)) {
                    for (Index leg : lam_.elements(d))
                        if (lam_.leq(leg, d))
                            out.witnesses.push_back(
                                {leg, std::nullopt, pr.object, pr.hom, C::compose(x_.bond(leg, d), *u)});
                    continue;
                }
                if (p_ != Property::StronglyCoMovable) {
                    out.witnesses.push_back({d, std::nullopt, pr.object, pr.hom, std::move(*u)});
                    continue;
                }
                bool found = false;
                for (Index s : stars(lambda, d)) {
                    auto cs2 = cs;
                    cs2.push_back({Side::Pre, x_.bond(lambda, s), x_.bond(d, s)});
                    if (auto v = solve_checked<C>(src, x_.object(d), cs2, prefer_zero)) {
                        out.witnesses.push_back({d, s, std::nullopt, std::nullopt, std::move(*v)});
                        found = true;
                        break;
                    }
                }
                if (!found)
                    return refuted(mu, lambda, d, nullptr,
                                   "no lambda* in range admits r with r p_{lambda,lambda*} = p_{lambda',lambda*}",
                                   lam_.is_finite() ? Outcome::Refuted : Outcome::Exhausted);
            }
        }
        return out;
    }

    MuRecord<C> run_ml(Index mu) const {
        MuRecord<C> rec;
        rec.mu = mu;
        const Index base = f_.phi()(mu);
        auto image_at = [&](Index l) { return C::image(f_.restricted(mu, l)); };

        if (lam_.is_finite()) {
            const auto ups = lam_.at_least(base, 0);
            for (Index l : ups) rec.chain.emplace_back(l, image_at(l));
            for (const auto& [l, s] : rec.chain) {
                bool stable = true;
                for (const auto& [l2, s2] : rec.chain)
                    if (lam_.leq(l, l2) && !C::subobjects_equal(s, s2)) stable = false;
                if (stable) rec.index_set.push_back(l);
            }
            rec.lambda = rec.index_set.front();
            rec.rule = m_.is_finite() ? Rule::Exhaustive : Rule::BoundedIndex;
            rec.status = m_.is_finite() ? Status::Holds : Status::HoldsStabilized;
            return rec;
        }

        // λ′ runs as far as for co-movability.
        const Index probe = std::max(h_.lambda_max, base);
        for (Index l = base; l <= std::max(h_.muprime_max, probe); ++l) rec.chain.emplace_back(l, image_at(l));
        for (const auto& [l, s] : rec.chain)
            if (C::is_zero(f_.restricted(mu, l))) {
                rec.lambda = l;
                rec.rule = Rule::ZeroMap;
                rec.status = Status::HoldsStabilized;
                return rec;
            }
        auto constant_from = [&](std::size_t i) {
            for (std::size_t j = i; j < rec.chain.size(); ++j)
                if (!C::subobjects_equal(rec.chain[j].second, rec.chain.back().second)) return false;
            return true;
        };
        if (x_.flags().all_bonds_epimorphic) {
            if (constant_from(0)) {
                rec.lambda = base;
                rec.rule = Rule::EpimorphicBonds;
                rec.status = Status::HoldsStabilized;
                return rec;
            }
            rec.note = "bonds flagged epimorphic but the image chain moves";
        }
        if (auto n = image_stabilization<C>(x_, base, false)) {
            for (Index l = rec.chain.back().first + 1; l <= *n; ++l) rec.chain.emplace_back(l, image_at(l));
            const auto& last = C::image(f_.restricted(mu, std::max(*n, base)));
            for (const auto& [l, s] : rec.chain)
                if (C::subobjects_equal(s, last)) {
                    rec.lambda = l;
                    break;
                }
            rec.rule = Rule::EventualPeriodicity;
            rec.status = Status::HoldsStabilized;
            rec.note = "image chain constant from index " + std::to_string(*n);
            return rec;
        }
        // A constant tail shorter than one period says nothing about the next period.
        const std::size_t period = x_.flags().eventually_periodic ? x_.flags().eventually_periodic->period : 1;
        std::size_t i = rec.chain.size() - 1;
        while (i > 0 && C::subobjects_equal(rec.chain[i - 1].second, rec.chain.back().second)) --i;
        if (rec.chain.size() - i > period) {
            rec.lambda = rec.chain[i].first;
            rec.status = Status::HoldsAtHorizon;
        } else {
            rec.status = Status::Unknown;
            if (!rec.note.empty()) rec.note += "; ";
            rec.note += "image chain still shrinking at lambda_max";
        }
        return rec;
    }

    Property p_;
    const SystemMorphism<C>& f_;
    const InverseSystem<C>& x_;
    const InverseSystem<C>& y_;
    const IndexSet& lam_;
    const IndexSet& m_;
    Horizon h_;
    const std::vector<Object>& c0_;
};

Status aggregate(const std::vector<Status>& per_mu, bool m_finite) {
    auto any = [&](Status s) { return std::find(per_mu.begin(), per_mu.end(), s) != per_mu.end(); };
    if (any(Status::Fails)) return Status::Fails;
    if (any(Status::FailsAtHorizon)) return Status::FailsAtHorizon;
    if (any(Status::Unknown)) return Status::Unknown;
    if (any(Status::HoldsAtHorizon)) return Status::HoldsAtHorizon;
    if (per_mu.empty() && !m_finite) return Status::Unknown;
    if (any(Status::HoldsStabilized) || !m_finite) return Status::HoldsStabilized;
    return Status::Holds;
}

template <CategoryBackend C>
Verdict<C> run_checker(Property p, const SystemMorphism<C>& f, const Horizon& h, const CheckOptions& o,
                       const std::vector<typename C::Object>& c0) {
    h.check();
    if (!o.skip_validation) {
        auto v = validate_morphism(f, h);
        if (!v.empty()) {
            const std::string what = "invalid morphism: " + v.front().message;
            throw InvalidMorphism(what, std::move(v));
        }
    }
    Engine<C> engine(p, f, h, c0);
    const auto mus = mu_range(f.target().index(), h);
    std::vector<MuRecord<C>> records(mus.size());
    std::vector<std::optional<Refutation>> refs(mus.size());

    const unsigned workers = std::max(1u, std::min<unsigned>(o.threads, static_cast<unsigned>(mus.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < mus.size(); ++i) records[i] = engine.run(mus[i], refs[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> futures;
        for (unsigned w = 0; w < workers; ++w)
            futures.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i = next++; i < mus.size(); i = next++) records[i] = engine.run(mus[i], refs[i]);
            }));
        for (auto& fu : futures) fu.get();
    }

    Verdict<C> v;
    v.property = p;
    v.horizon = h;
    std::vector<Status> statuses;
    for (std::size_t i = 0; i < mus.size(); ++i) {
        statuses.push_back(records[i].status);
        if (!v.refutation && refs[i]) v.refutation = refs[i];
    }
    v.records = std::move(records);
    v.status = aggregate(statuses, f.target().index().is_finite());
    v.exact = v.status == Status::Holds || v.status == Status::Fails;
    return v;
}

}  // namespace

template <CategoryBackend C>
std::optional<Index> stabilization_index(const InverseSystem<C>& z, Index base) {
    return image_stabilization<C>(z, base, true);
}

template <CategoryBackend C>
Verdict<C> check_morphism(Property p, const SystemMorphism<C>& f, const Horizon& h, const CheckOptions& o) {
    if (is_c0(p)) throw std::invalid_argument("C0 properties are checked with c0_movable_system");
    return run_checker(p, f, h, o, {});
}

template <CategoryBackend C>
Verdict<C> c0_movable_system(const InverseSystem<C>& x, const std::vector<typename C::Object>& c0, const Horizon& h,
                             const CheckOptions& o) {
    return run_checker(Property::C0Movable, identity_morphism(x), h, o, c0);
}

template <CategoryBackend C>
Verdict<C> c0_uniformly_movable_system(const InverseSystem<C>& x, const std::vector<typename C::Object>& c0,
                                       const Horizon& h, const CheckOptions& o) {
    return run_checker(Property::C0UniformlyMovable, identity_morphism(x), h, o, c0);
}

template <CategoryBackend C>
std::vector<std::string> verify_witnesses(const Verdict<C>& v, const SystemMorphism<C>& f,
                                          const std::vector<typename C::Object>& c0) {
    using Morphism = typename C::Morphism;
    std::vector<std::string> bad;
    const auto& x = f.source();
    const auto& y = f.target();
    const Property p = v.property;
    for (const auto& rec : v.records) {
        if (!rec.lambda || rec.witnesses.empty()) continue;
        const Index mu = rec.mu;
        const Index lambda = *rec.lambda;
        const Index base = f.phi()(mu);
        const Morphism r = f.restricted(mu, lambda);
        auto where = [&](const Witness<C>& w) {
            return "mu=" + std::to_string(mu) + " deep=" + std::to_string(w.deep);
        };
        auto probe_map = [&](const Witness<C>& w) {
            if (!w.c0_object) return C::identity(x.object(lambda));
            return C::enumerate_homs(c0.at(*w.c0_object), x.object(lambda), kHomEnumerationCap).at(*w.c0_hom);
        };
        for (const auto& w : rec.witnesses) {
            const Morphism& u = w.morphism;
            bool ok = true;
            if (movable_family(p)) {
                if (p == Property::UniformlyMovable) {
                    if (w.deep == mu) ok = C::equal(u, r);
                } else {
                    ok = C::equal(C::compose(y.bond(mu, w.deep), u), r);
                    if (ok && w.lambda_star)
                        ok = C::equal(C::compose(u, x.bond(lambda, *w.lambda_star)),
                                      f.restricted(w.deep, *w.lambda_star));
                }
            } else if (is_cone(p)) {
                if (w.deep == base) ok = C::equal(C::compose(f.component(mu), u), C::compose(r, probe_map(w)));
            } else {
                ok = C::equal(C::compose(f.restricted(mu, w.deep), u), C::compose(r, probe_map(w)));
                if (ok && w.lambda_star)
                    ok = C::equal(C::compose(u, x.bond(lambda, *w.lambda_star)), x.bond(w.deep, *w.lambda_star));
            }
            if (!ok) bad.push_back(where(w) + ": defining equation fails");
        }
        if (is_cone(p)) {
            const auto& sys = movable_family(p) ? y : x;
            for (const auto& a : rec.witnesses)
                for (const auto& b : rec.witnesses) {
                    if (a.deep == b.deep || a.c0_hom != b.c0_hom || a.c0_object != b.c0_object) continue;
                    if (!sys.index().leq(a.deep, b.deep)) continue;
                    if (!C::equal(C::compose(sys.bond(a.deep, b.deep), b.morphism), a.morphism))
                        bad.push_back(where(a) + ": cone legs incompatible with leg " + std::to_string(b.deep));
                }
        }
    }
    return bad;
}

template <CategoryBackend C>
std::string render_text(const Verdict<C>& v) {
    std::ostringstream os;
    os << "property: " << to_string(v.property) << "\n";
    os << "status: " << to_string(v.status) << (v.exact ? " (exact)" : "") << "\n";
    if (!v.exact) {
        os << "horizon: mu_max=" << v.horizon.mu_max << " lambda_max=" << v.horizon.lambda_max
           << " muprime_max=" << v.horizon.muprime_max << " cone_max=" << v.horizon.cone_max << "\n";
        os << "note: " << kHorizonDisclaimer << "\n";
    }
    if (v.refutation) {
        const auto& r = *v.refutation;
        os << "refutation: mu=" << r.mu << " lambda=" << r.lambda << " deep=" << r.deep;
        if (r.c0_object) os << " c0_object=" << *r.c0_object << " c0_hom=" << *r.c0_hom;
        os << " reason: " << r.reason << "\n";
    }
    for (const auto& rec : v.records) {
        os << "  mu=" << rec.mu << " status=" << to_string(rec.status);
        if (rec.lambda) os << " lambda=" << *rec.lambda;
        os << " rule=" << to_string(rec.rule);
        if (!rec.index_set.empty()) {
            os << " index_set={";
            for (std::size_t i = 0; i < rec.index_set.size(); ++i) os << (i ? "," : "") << rec.index_set[i];
            os << "}";
        }
        if (!rec.note.empty()) os << " note: " << rec.note;
        os << "\n";
        for (const auto& w : rec.witnesses) {
            os << "    deep=" << w.deep;
            if (w.lambda_star) os << " lambda*=" << *w.lambda_star;
            if (w.c0_object) os << " c0=" << *w.c0_object << "/" << *w.c0_hom;
            os << " u=" << C::to_string(w.morphism) << "\n";
        }
        for (const auto& [l, s] : rec.chain) os << "    image at " << l << ": " << C::to_string(s) << "\n";
    }
    return os.str();
}

#define PROMOV_INSTANTIATE_CHECKERS(C)                                                                          \
    template std::optional<Index> stabilization_index<C>(const InverseSystem<C>&, Index);                       \
    template Verdict<C> check_morphism<C>(Property, const SystemMorphism<C>&, const Horizon&,                   \
                                          const CheckOptions&);                                                 \
    template Verdict<C> c0_movable_system<C>(const InverseSystem<C>&, const std::vector<C::Object>&,            \
                                             const Horizon&, const CheckOptions&);                              \
    template Verdict<C> c0_uniformly_movable_system<C>(const InverseSystem<C>&, const std::vector<C::Object>&,  \
                                                       const Horizon&, const CheckOptions&);                    \
    template std::vector<std::string> verify_witnesses<C>(const Verdict<C>&, const SystemMorphism<C>&,          \
                                                          const std::vector<C::Object>&);                       \
    template std::string render_text<C>(const Verdict<C>&);

PROMOV_INSTANTIATE_CHECKERS(AbelianCategory)
PROMOV_INSTANTIATE_CHECKERS(PointedSetCategory)

}  // namespace promov
