#include "suites.hpp"

#include "corpus.hpp"
#include "reference.hpp"

#include "promov/forgetful.hpp"
#include "promov/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace promov::testing {

namespace {

constexpr std::size_t kMaxRecordedFailures = 20;

constexpr Property kMorphismProperties[] = {
    Property::Movable,           Property::StronglyMovable,    Property::UniformlyMovable, Property::CoMovable,
    Property::StronglyCoMovable, Property::UniformlyCoMovable, Property::MittagLeffler,
};

template <CategoryBackend C>
Status status_of(Property p, const SystemMorphism<C>& f) {
    return check_morphism(p, f, suite_horizon()).status;
}

template <CategoryBackend C>
bool holds_for(Property p, const SystemMorphism<C>& f) {
    return holds(status_of(p, f));
}

std::string describe(const std::string& label, Property p, const std::string& what) {
    return label + " [" + to_string(p) + "]: " + what;
}

template <CategoryBackend C>
void compare_with_oracle(SuiteResult& r, const std::string& label, Property p, const Verdict<C>& cv,
                         const Verdict<C>& ov, const std::vector<std::string>& bad_witnesses) {
    if (cv.status != ov.status)
        r.fail(describe(label, p, "checker " + to_string(cv.status) + " vs oracle " + to_string(ov.status)));
    if (cv.exact != ov.exact) r.fail(describe(label, p, "exactness differs"));
    if (cv.records.size() != ov.records.size()) {
        r.fail(describe(label, p, "record count differs"));
        return;
    }
    for (std::size_t i = 0; i < cv.records.size(); ++i)
        if (cv.records[i].index_set != ov.records[i].index_set)
            r.fail(describe(label, p, "index set differs at mu=" + std::to_string(cv.records[i].mu)));
    for (const auto& w : bad_witnesses) r.fail(describe(label, p, "witness: " + w));
}

template <CategoryBackend C>
void oracle_instance(SuiteResult& r, std::uint64_t seed) {
    const auto pair = finite_pair<C>(seed);
    const auto h = suite_horizon();
    for (Property p : kMorphismProperties) {
        const auto cv = check_morphism(p, pair.f, h);
        compare_with_oracle(r, pair.label, p, cv, oracle_check(p, pair.f), verify_witnesses(cv, pair.f));
    }
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<typename C::Object> c0;
    const std::size_t k = 1 + draw(rng, 2);
    for (std::size_t i = 0; i < k; ++i) c0.push_back(random_small_object<C>(rng, 4));
    const auto& x = pair.f.source();
    const auto id = identity_morphism(x);
    const auto cm = c0_movable_system(x, c0, h);
    compare_with_oracle(r, pair.label, Property::C0Movable, cm, oracle_check_system(Property::C0Movable, x, c0),
                        verify_witnesses(cm, id, c0));
    const auto cu = c0_uniformly_movable_system(x, c0, h);
    compare_with_oracle(r, pair.label, Property::C0UniformlyMovable, cu,
                        oracle_check_system(Property::C0UniformlyMovable, x, c0), verify_witnesses(cu, id, c0));
}

template <CategoryBackend C>
void composition_instance(SuiteResult& r, std::uint64_t seed) {
    const auto t = mixed_triple<C>(seed);
    const auto h = compose_morphisms(t.g, t.f);
    bool premise = false;
    for (Property p : {Property::Movable, Property::StronglyMovable, Property::UniformlyMovable}) {
        if (!holds_for(p, t.f) && !holds_for(p, t.g)) continue;
        premise = true;
        if (!holds_for(p, h)) r.fail(describe(t.label, p, "a factor holds but g∘f has " + to_string(status_of(p, h))));
    }
    for (Property p : {Property::CoMovable, Property::StronglyCoMovable, Property::UniformlyCoMovable}) {
        if (!holds_for(p, t.f)) continue;
        premise = true;
        if (!holds_for(p, h)) r.fail(describe(t.label, p, "f holds but g∘f has " + to_string(status_of(p, h))));
    }
    r.premises += premise;
}

template <CategoryBackend C>
void equivalence_instance(SuiteResult& r, std::uint64_t seed) {
    const auto pair = mixed_pair<C>(seed);
    const auto g = perturb_equivalent(pair.f, seed * 7 + 1);
    if (!are_equivalent(pair.f, g, suite_horizon()).equivalent) {
        r.fail(pair.label + ": perturbation not equivalent");
        return;
    }
    r.premises += 1;
    for (Property p : kMorphismProperties) {
        const Status a = status_of(p, pair.f);
        const Status b = status_of(p, g);
        if (a != b) r.fail(describe(pair.label, p, to_string(a) + " vs " + to_string(b) + " after perturbation"));
    }
}

constexpr std::pair<Property, Property> kDualPairs[] = {
    {Property::Movable, Property::CoMovable},
    {Property::StronglyMovable, Property::StronglyCoMovable},
    {Property::UniformlyMovable, Property::UniformlyCoMovable},
};

template <CategoryBackend C>
void identity_instance(SuiteResult& r, std::uint64_t seed, bool finite) {
    const auto h = suite_horizon();
    bool integral = false;
    if constexpr (std::is_same_v<C, AbelianCategory>) integral = !finite && integral_seed(seed);
    InverseSystem<C> x;
    if constexpr (std::is_same_v<C, AbelianCategory>)
        x = finite ? finite_pair<C>(seed).f.source() : integral ? integral_line(seed) : small_sequence<C>(seed);
    else
        x = finite ? finite_pair<C>(seed).f.source() : small_sequence<C>(seed);
    const std::string label = std::string(finite ? "finite/" : integral ? "integral/" : "sequence/") + C::name + "/" +
                              std::to_string(seed);
    for (const auto& [p, q] : kDualPairs) {
        const auto sv = check_system(p, x, h);
        const auto cv = check_system(q, x, h);
        if (holds(sv.status) != holds(cv.status))
            r.fail(describe(label, p, to_string(sv.status) + " but " + to_string(q) + " " + to_string(cv.status)));
        if (finite) {
            const bool def = system_definition_holds(p, x);
            if ((sv.status == Status::Holds) != def)
                r.fail(describe(label, p, "checker " + to_string(sv.status) + ", definition " + (def ? "holds" : "fails")));
        } else if (p == Property::Movable) {
            bool box = false;
            if constexpr (std::is_same_v<C, AbelianCategory>)
                box = integral ? integral_line_movable_in_box(x, h) : sequence_movable_in_box(x, h);
            else
                box = sequence_movable_in_box(x, h);
            if (box != (sv.status != Status::FailsAtHorizon))
                r.fail(describe(label, p, "checker " + to_string(sv.status) + ", box search " + (box ? "holds" : "fails")));
        }
    }
    r.premises += 1;
}

template <CategoryBackend C>
void stronger_instance(SuiteResult& r, std::uint64_t seed) {
    const auto pair = mixed_pair<C>(seed);
    constexpr std::pair<Property, Property> implications[] = {
        {Property::StronglyMovable, Property::Movable},
        {Property::UniformlyMovable, Property::Movable},
        {Property::StronglyCoMovable, Property::CoMovable},
        {Property::UniformlyCoMovable, Property::CoMovable},
    };
    bool premise = false;
    for (const auto& [strong, simple] : implications) {
        if (!holds_for(strong, pair.f)) continue;
        premise = true;
        if (!holds_for(simple, pair.f))
            r.fail(describe(pair.label, strong, "holds but " + to_string(simple) + " does not"));
    }
    r.premises += premise;
}

template <CategoryBackend C>
void upward_instance(SuiteResult& r, std::uint64_t seed) {
    const auto pair = finite_pair<C>(seed);
    const auto& lam = pair.f.source().index().poset();
    auto closed = [&](const std::vector<Index>& set, Index base) {
        for (Index l : set)
            for (Index m = 0; m < lam.size(); ++m)
                if (lam.leq(l, m) && lam.leq(base, m) && std::find(set.begin(), set.end(), m) == set.end())
                    return false;
        return true;
    };
    for (Property p : kMorphismProperties) {
        const auto ov = oracle_check(p, pair.f);
        const auto cv = check_morphism(p, pair.f, suite_horizon());
        for (std::size_t i = 0; i < ov.records.size(); ++i) {
            const Index base = pair.f.phi()(ov.records[i].mu);
            if (!closed(ov.records[i].index_set, base))
                r.fail(describe(pair.label, p, "oracle index set not upward closed at mu=" + std::to_string(i)));
            if (!closed(cv.records[i].index_set, base))
                r.fail(describe(pair.label, p, "checker index set not upward closed at mu=" + std::to_string(i)));
        }
    }
    r.premises += 1;
}

void functor_instance(SuiteResult& r, std::uint64_t seed) {
    // The forgetful functor needs finite groups.
    const auto pair = finite_object_pair<AbelianCategory>(seed);
    const auto image = forgetful_to_sets(pair.f);
    bool premise = false;
    for (Property p : kMorphismProperties) {
        if (!holds_for(p, pair.f)) continue;
        premise = true;
        if (!holds_for(p, image))
            r.fail(describe(pair.label, p, "holds for groups, " + to_string(status_of(p, image)) + " for sets"));
    }
    r.premises += premise;
}

}  // namespace

std::string SuiteResult::summary() const {
    std::ostringstream os;
    os << name << ": " << (instances - std::min(instances, failures.size())) << "/" << instances
       << " instances (minimum " << minimum << ", premise held in " << premises << ")";
    return os.str();
}

void SuiteResult::fail(std::string message) {
    if (failures.size() < kMaxRecordedFailures) failures.push_back(std::move(message));
    else if (failures.size() == kMaxRecordedFailures) failures.push_back("further failures suppressed");
}

SuiteResult oracle_agreement(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"oracle agreement", 200, 0, 0, {}};
    for (std::size_t i = 0; i < count; ++i, ++r.instances) {
        if (i % 2 == 0) oracle_instance<PointedSetCategory>(r, seed0 + i);
        else oracle_instance<AbelianCategory>(r, seed0 + i);
        r.premises += 1;
    }
    return r;
}

SuiteResult composition_closure(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"composition closure", 100, 0, 0, {}};
    for (std::size_t i = 0; i < count; ++i, ++r.instances) {
        if ((i / 2) % 2 == 0) composition_instance<AbelianCategory>(r, seed0 + i);
        else composition_instance<PointedSetCategory>(r, seed0 + i);
    }
    return r;
}

SuiteResult equivalence_invariance(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"equivalence invariance", 100, 0, 0, {}};
    for (std::size_t i = 0; i < count; ++i, ++r.instances) {
        if ((i / 2) % 2 == 0) equivalence_instance<AbelianCategory>(r, seed0 + i);
        else equivalence_instance<PointedSetCategory>(r, seed0 + i);
    }
    return r;
}

SuiteResult identity_correspondence(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"identity correspondence", 100, 0, 0, {}};
    for (std::size_t i = 0; i < count; ++i, ++r.instances) {
        const bool finite = i % 2 == 0;
        if ((i / 2) % 2 == 0) identity_instance<AbelianCategory>(r, seed0 + i, finite);
        else identity_instance<PointedSetCategory>(r, seed0 + i, finite);
    }
    return r;
}

SuiteResult ml_implies_movable_on_sets(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"ML implies movable (pointed sets)", 100, 0, 0, {}};
    for (std::size_t i = 0; i < count; ++i, ++r.instances) {
        const std::uint64_t seed = seed0 + i;
        const auto f = i % 3 == 2 ? identity_morphism(small_sequence<PointedSetCategory>(seed))
                                  : mixed_pair<PointedSetCategory>(seed).f;
        if (!holds_for(Property::MittagLeffler, f)) continue;
        r.premises += 1;
        if (!holds_for(Property::Movable, f))
            r.fail("seed " + std::to_string(seed) + ": ML holds, movable " + to_string(status_of(Property::Movable, f)));
    }
    return r;
}

SuiteResult co_movable_iff_ml_on_sets(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"co-movable iff ML (pointed sets)", 100, 0, 0, {}};
    for (std::size_t i = 0; i < count; ++i, ++r.instances) {
        const std::uint64_t seed = seed0 + i;
        const bool identity = i % 3 == 2;
        const auto f = identity ? identity_morphism(small_sequence<PointedSetCategory>(seed))
                                : mixed_pair<PointedSetCategory>(seed).f;
        const Status ml = status_of(Property::MittagLeffler, f);
        const Status co = status_of(Property::CoMovable, f);
        r.premises += holds(ml);
        if (holds(ml) != holds(co))
            r.fail("seed " + std::to_string(seed) + ": ML " + to_string(ml) + ", co-movable " + to_string(co));
        if (identity) {
            const Status mv = status_of(Property::Movable, f);
            if (holds(ml) != holds(mv))
                r.fail("seed " + std::to_string(seed) + ": ML " + to_string(ml) + ", movable system " + to_string(mv));
        }
    }
    return r;
}

SuiteResult stronger_implies_simple(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"strong and uniform imply simple", 100, 0, 0, {}};
    for (std::size_t i = 0; i < count; ++i, ++r.instances) {
        if ((i / 2) % 2 == 0) stronger_instance<AbelianCategory>(r, seed0 + i);
        else stronger_instance<PointedSetCategory>(r, seed0 + i);
    }
    return r;
}

SuiteResult upward_closure(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"upward closure of indices", 100, 0, 0, {}};
    for (std::size_t i = 0; i < count; ++i, ++r.instances) {
        if (i % 2 == 0) upward_instance<AbelianCategory>(r, seed0 + i);
        else upward_instance<PointedSetCategory>(r, seed0 + i);
    }
    return r;
}

SuiteResult functor_preservation(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"forgetful functor preservation", 100, 0, 0, {}};
    for (std::size_t i = 0; i < count; ++i, ++r.instances) functor_instance(r, seed0 + i);
    return r;
}

SuiteResult domination_transfer(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"domination transfer", 100, 0, 0, {}};
    const auto h = suite_horizon();
    for (std::size_t i = 0; i < count; ++i, ++r.instances) {
        const std::uint64_t seed = seed0 + i;
        const auto d = domination_pair(seed);
        const auto& x = d.f.source();
        const auto& y = d.f.target();
        if (!are_equivalent(compose_morphisms(d.g, d.f), identity_morphism(x), h).equivalent) {
            r.fail("seed " + std::to_string(seed) + ": g∘f is not equivalent to the identity");
            continue;
        }
        bool premise = false;
        for (Property p : {Property::Movable, Property::StronglyMovable, Property::UniformlyMovable}) {
            if (!holds(check_system(p, y, h).status)) continue;
            premise = true;
            const Status sx = check_system(p, x, h).status;
            if (!holds(sx))
                r.fail(describe("seed " + std::to_string(seed), p, "Y holds, dominated X " + to_string(sx)));
        }
        r.premises += premise;
    }
    return r;
}

SuiteResult right_inverse_transfer(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"right-inverse transfer", 100, 0, 0, {}};
    const auto h = suite_horizon();
    for (std::uint64_t seed = seed0; r.instances < count && seed < seed0 + 20 * count; ++seed) {
        const auto inst = right_inverse_instance(seed);
        if (!inst) continue;
        ++r.instances;
        const auto& y = inst->f.target();
        if (!are_equivalent(compose_morphisms(inst->f, inst->s), identity_morphism(y), h).equivalent) {
            r.fail("seed " + std::to_string(seed) + ": f∘s is not equivalent to the identity");
            continue;
        }
        const auto composite = compose_morphisms(inst->g, inst->f);
        bool premise = false;
        for (Property p : {Property::CoMovable, Property::StronglyCoMovable, Property::UniformlyCoMovable}) {
            if (!holds_for(p, composite)) continue;
            premise = true;
            if (!holds_for(p, inst->g))
                r.fail(describe("seed " + std::to_string(seed), p,
                                "g∘f holds but g has " + to_string(status_of(p, inst->g))));
        }
        r.premises += premise;
    }
    return r;
}

SuiteResult decreasing_phi_transfer(std::uint64_t seed0, std::size_t count) {
    SuiteResult r{"cofinal subset with decreasing phi", 100, 0, 0, {}};
    for (std::size_t i = 0; i < count; ++i, ++r.instances) {
        const std::uint64_t seed = seed0 + i;
        auto run = [&]<CategoryBackend C>() {
            Rng rng(seed);
            const auto x = random_finite_system<C>(rng, random_poset(rng, kMaxIndices));
            const auto y = random_finite_system<C>(rng, random_poset(rng, kMaxIndices));
            const auto f = random_decreasing_phi_morphism<C>(rng, x, y);
            const auto& m = y.index().poset();
            const auto& lam = x.index().poset();
            for (Index a = 0; a < m.size(); ++a)
                for (Index b = 0; b < m.size(); ++b)
                    if (m.leq(a, b) && !lam.leq(f.phi()(b), f.phi()(a)))
                        r.fail("seed " + std::to_string(seed) + ": phi is not order-reversing");
            bool premise = false;
            for (Property p : {Property::CoMovable, Property::StronglyCoMovable, Property::UniformlyCoMovable}) {
                const auto ov = oracle_check(p, f);
                if (ov.records[m.top()].index_set.empty()) continue;
                premise = true;
                const Status s = status_of(p, f);
                if (s != Status::Holds)
                    r.fail(describe("seed " + std::to_string(seed), p, "cofinal index exists, checker " + to_string(s)));
            }
            r.premises += premise;
        };
        if (i % 2 == 0) run.template operator()<AbelianCategory>();
        else run.template operator()<PointedSetCategory>();
    }
    return r;
}

std::vector<SuiteResult> theorem_suites(std::uint64_t seed0, std::size_t count) {
    return {
        composition_closure(seed0, count),      equivalence_invariance(seed0, count),
        identity_correspondence(seed0, count),  ml_implies_movable_on_sets(seed0, count),
        co_movable_iff_ml_on_sets(seed0, count), stronger_implies_simple(seed0, count),
        upward_closure(seed0, count),           functor_preservation(seed0, count),
        domination_transfer(seed0, count),      right_inverse_transfer(seed0, count),
        decreasing_phi_transfer(seed0, count),
    };
}

}  // namespace promov::testing
