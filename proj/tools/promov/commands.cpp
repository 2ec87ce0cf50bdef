#include "commands.hpp"

#include "document.hpp"
#include "report.hpp"

#include "promov/families.hpp"
#include "promov/oracle.hpp"

#include <sstream>

namespace promov::cli {

namespace {

std::string legend(const std::string& title, const IndexSet& index) {
    if (!index.is_finite()) return "";
    std::ostringstream os;
    os << title << ":";
    for (Index i = 0; i < index.poset().size(); ++i) os << " " << i << "=" << index.label(i);
    os << "\n";
    return os.str();
}

/// Positions of finite index sets, since verdicts refer to indices by position.
std::string legend(const IndexSet& target, const IndexSet& source) {
    if (target == source) return legend("indices", target);
    return legend("mu indices", target) + legend("lambda indices", source);
}

std::string describe(const Violation& v, const IndexSet& index) {
    std::ostringstream os;
    os << v.kind;
    if (!v.at.empty()) {
        os << " at (";
        for (std::size_t i = 0; i < v.at.size(); ++i) os << (i ? ", " : "") << index.label(v.at[i]);
        os << ")";
    }
    os << ": " << v.message;
    return os.str();
}

/// Source-system violations are located in the source index set, all others in the target's.
template <CategoryBackend C>
const IndexSet& located_in(const Violation& v, const SystemMorphism<C>& f) {
    return v.kind.rfind("source:", 0) == 0 ? f.source().index() : f.target().index();
}

/// Reports a failure. Structured output still emits a conforming report.
CommandResult input_error(const RunConfig& config, const std::string& where, const std::string& message,
                          const json& violations = json()) {
    CommandResult r;
    r.exit_code = kExitInputError;
    r.err = "error: " + (where.empty() ? message : where + ": " + message) + "\n";
    if (config.format == Format::Structured) {
        auto report = envelope("error");
        report["where"] = where;
        report["message"] = message;
        if (!violations.is_null()) report["violations"] = violations;
        r.out = report.dump(2) + "\n";
    }
    return r;
}

/// Emits a structured report after checking it against the schema.
CommandResult structured(const json& report, int exit_code) {
    const auto errors = schema_errors(report);
    if (!errors.empty()) {
        CommandResult r;
        r.exit_code = kExitInputError;
        r.err = "internal error: report does not conform to the schema\n";
        for (const auto& e : errors) r.err += "  " + e + "\n";
        return r;
    }
    return {report.dump(2) + "\n", "", exit_code};
}

AnyInstance load(const RunConfig& config, SecondRole role) {
    if (!config.input.empty()) return load_instance_file(config.input, role);
    if (!config.family.empty())
        return family_instance(config.family, config.target_family, config.morphism_family);
    throw InputError("input", "give an instance file or --family");
}

CheckOptions options(const RunConfig& config) {
    CheckOptions o;
    o.threads = config.threads;
    return o;
}

/// Runs a verb body, turning every input problem into exit code 2.
template <class Body>
CommandResult guarded(const RunConfig& config, Body&& body) {
    try {
        config.horizon.check();
        return body();
    } catch (const InputError& e) {
        return input_error(config, e.where(), std::string(e.what()).substr(e.where().size() + 2));
    } catch (const InvalidMorphism& e) {
        json vs = json::array();
        std::string text = e.what();
        for (const auto& v : e.violations()) {
            vs.push_back({{"kind", v.kind}, {"at", json::array()}, {"labels", json::array()}, {"message", v.message}});
            for (auto i : v.at) vs.back()["at"].push_back(std::to_string(i));
            text += "\n  " + v.kind + ": " + v.message;
        }
        return input_error(config, "input", text + "\n(run validate for located violations)", vs);
    } catch (const EnumerationCapExceeded& e) {
        return input_error(config, "oracle", std::string("refusing to sample: ") + e.what());
    } catch (const InfiniteObject& e) {
        return input_error(config, "oracle", e.what());
    } catch (const TypeMismatch& e) {
        return input_error(config, "input", e.what());
    } catch (const std::invalid_argument& e) {
        return input_error(config, "input", e.what());
    }
}

template <CategoryBackend C>
json case_json(const std::string& name, bool oracle, const Verdict<C>& v) {
    json c = {{"name", name},
              {"backend", C::name},
              {"oracle", oracle},
              {"exit_code", std::to_string(exit_code(v.status))},
              {"verdict", verdict_to_json(v)}};
    if (!v.exact) c["disclaimer"] = kHorizonDisclaimer;
    return c;
}

template <CategoryBackend C>
std::string case_text(const std::string& name, bool oracle, const Verdict<C>& v, const IndexSet& target,
                      const IndexSet& source) {
    std::ostringstream os;
    os << "== " << name << "\n";
    os << "backend: " << C::name << "\n";
    if (oracle) os << "method: enumeration oracle\n";
    os << legend(target, source) << render_text(v);
    return os.str();
}

template <CategoryBackend C>
CommandResult check_instance(const RunConfig& config, const Instance<C>& in) {
    const auto p = parse_property(config.property);
    if (!p) {
        std::string names;
        for (auto q : all_properties()) names += " " + to_string(q);
        throw InputError("property", "unknown property '" + config.property + "'; one of" + names);
    }
    const bool c0 = *p == Property::C0Movable || *p == Property::C0UniformlyMovable;
    if (c0 && in.morphism) throw InputError("/morphism", "C0 properties apply to systems, not morphisms");
    const auto f = in.primary();

    Verdict<C> v;
    if (config.oracle) {
        if (f.target().is_sequence() || f.source().is_sequence())
            throw InputError("oracle", "the oracle runs on finite index sets only");
        if (const auto vs = validate_morphism(f, config.horizon); !vs.empty())
            throw InvalidMorphism("the instance is not a morphism of inverse systems", vs);
        v = oracle_check(*p, f, in.test_objects);
    } else if (*p == Property::C0Movable) {
        v = c0_movable_system(in.system, in.test_objects, config.horizon, options(config));
    } else if (*p == Property::C0UniformlyMovable) {
        v = c0_uniformly_movable_system(in.system, in.test_objects, config.horizon, options(config));
    } else {
        v = check_morphism(*p, f, config.horizon, options(config));
    }

    const std::string name = (in.morphism ? "morphism: " : "system: ") + to_string(*p);
    const int code = exit_code(v.status);
    if (config.format == Format::Structured) {
        auto report = envelope("check");
        report["cases"] = json::array({case_json(name, config.oracle, v)});
        return structured(report, code);
    }
    return {case_text(name, config.oracle, v, f.target().index(), f.source().index()), "", code};
}

template <CategoryBackend C>
CommandResult validate_instance(const RunConfig& config, const Instance<C>& in) {
    std::vector<std::pair<Violation, const IndexSet*>> found;
    if (in.morphism) {
        for (auto& v : validate_morphism(*in.morphism, config.horizon)) {
            const IndexSet* where = &located_in(v, *in.morphism);
            found.emplace_back(std::move(v), where);
        }
    } else {
        for (auto& v : validate_system(in.system, config.horizon)) found.emplace_back(std::move(v), &in.system.index());
    }
    if (in.second)
        for (auto& v : validate_morphism(*in.second, config.horizon)) {
            const IndexSet* where = &located_in(v, *in.second);
            v.kind = "second:" + v.kind;
            found.emplace_back(std::move(v), where);
        }

    const int code = found.empty() ? 0 : 1;
    if (config.format == Format::Structured) {
        auto report = envelope("validate");
        report["backend"] = C::name;
        report["valid"] = found.empty();
        report["violations"] = json::array();
        for (const auto& [v, index] : found) report["violations"].push_back(violation_to_json(v, *index));
        return structured(report, code);
    }
    std::ostringstream os;
    if (found.empty()) {
        os << "valid\n";
    } else {
        os << found.size() << " violation" << (found.size() == 1 ? "" : "s") << "\n";
        for (const auto& [v, index] : found) os << "  " << describe(v, *index) << "\n";
    }
    return {os.str(), "", code};
}

template <CategoryBackend C>
CommandResult compose_instance(const RunConfig& config, const Instance<C>& in) {
    if (!in.second) throw InputError("/second", "compose needs a second morphism g out of the target of the first");
    const auto f = in.primary();
    const auto h = compose_morphisms(*in.second, f);
    const auto violations = validate_morphism(h, config.horizon);
    const IndexSet& z = h.target().index();
    const int code = violations.empty() ? 0 : 1;

    if (config.format == Format::Structured) {
        auto report = envelope("compose");
        report["backend"] = C::name;
        report["components"] = json::array();
        for (Index mu : mu_range(z, config.horizon)) {
            const auto c = h.component(mu);
            json m = {{"source", encode_object(C::source(c))}, {"target", encode_object(C::target(c))}};
            m[std::is_same_v<C, AbelianCategory> ? "matrix" : "images"] = encode_map(c);
            report["components"].push_back(
                {{"mu", std::to_string(mu)}, {"phi", std::to_string(h.phi()(mu))}, {"morphism", std::move(m)}});
        }
        report["violations"] = json::array();
        for (const auto& v : violations) report["violations"].push_back(violation_to_json(v, located_in(v, h)));
        return structured(report, code);
    }
    std::ostringstream os;
    os << "composite g o f\n" << legend(z, h.source().index());
    for (Index mu : mu_range(z, config.horizon))
        os << "  mu=" << z.label(mu) << " phi=" << h.source().index().label(h.phi()(mu))
           << " h=" << C::to_string(h.component(mu)) << "\n";
    if (!z.is_finite())
        os << "components shown for mu <= " << config.horizon.mu_max << "; composite validated within the horizon\n";
    if (violations.empty()) os << "valid\n";
    for (const auto& v : violations) os << "  " << describe(v, located_in(v, h)) << "\n";
    return {os.str(), "", code};
}

template <CategoryBackend C>
CommandResult equiv_instance(const RunConfig& config, const Instance<C>& in) {
    if (!in.second) throw InputError("/second", "equiv needs a second morphism with the same source and target");
    const auto f = in.primary();
    for (const auto* m : {&f, &*in.second})
        if (const auto vs = validate_morphism(*m, config.horizon); !vs.empty())
            throw InvalidMorphism("the instance is not a morphism of inverse systems", vs);
    const auto r = are_equivalent(f, *in.second, config.horizon);
    const int code = !r.equivalent ? 1 : (r.exact ? 0 : 3);
    const IndexSet& m = f.target().index();
    const IndexSet& lam = f.source().index();

    if (config.format == Format::Structured) {
        auto report = envelope("equiv");
        report["backend"] = C::name;
        report["equivalent"] = r.equivalent;
        report["exact"] = r.exact;
        report["indices"] = json::array();
        for (const auto& [mu, l] : r.indices)
            report["indices"].push_back(
                {{"mu", std::to_string(mu)}, {"lambda_prime", l ? json(std::to_string(*l)) : json(nullptr)}});
        report["failing_mu"] = r.failing_mu ? json(std::to_string(*r.failing_mu)) : json(nullptr);
        if (!r.exact) report["disclaimer"] = kHorizonDisclaimer;
        return structured(report, code);
    }
    std::ostringstream os;
    os << (r.equivalent ? "equivalent" : "not equivalent") << (r.exact ? " (exact)" : "") << "\n";
    if (!r.exact) {
        os << "horizon: mu_max=" << config.horizon.mu_max << " lambda_max=" << config.horizon.lambda_max
           << " muprime_max=" << config.horizon.muprime_max << "\n";
        os << "note: " << kHorizonDisclaimer << "\n";
    }
    for (const auto& [mu, l] : r.indices)
        os << "  mu=" << m.label(mu) << " lambda'=" << (l ? lam.label(*l) : std::string("none")) << "\n";
    if (r.failing_mu) os << "first failure at mu=" << m.label(*r.failing_mu) << "\n";
    return {os.str(), "", code};
}

template <class F>
CommandResult dispatch(const RunConfig& config, SecondRole role, F&& f) {
    return guarded(config, [&] { return std::visit([&](const auto& in) { return f(in); }, load(config, role)); });
}

}  // namespace

CommandResult cmd_validate(const RunConfig& config) {
    return dispatch(config, SecondRole::Auto, [&](const auto& in) { return validate_instance(config, in); });
}

CommandResult cmd_check(const RunConfig& config) {
    return dispatch(config, SecondRole::Auto, [&](const auto& in) { return check_instance(config, in); });
}

CommandResult cmd_compose(const RunConfig& config) {
    return dispatch(config, SecondRole::Compose, [&](const auto& in) { return compose_instance(config, in); });
}

CommandResult cmd_equiv(const RunConfig& config) {
    return dispatch(config, SecondRole::Equivalent, [&](const auto& in) { return equiv_instance(config, in); });
}

CommandResult cmd_demo(const RunConfig& config) {
    return guarded(config, [&] {
        const auto& h = config.horizon;
        const auto o = options(config);
        const auto ex = dyadic_example();

        Rng rng(config.seed);
        const auto poset = random_poset(rng, 4);
        const auto x = random_finite_set_system(rng, poset, 3);
        const auto y = random_finite_set_system(rng, poset, 3);
        const auto f = random_finite_morphism(rng, x, y);
        const std::string random_name = "random finite pointed-set morphism (seed " + std::to_string(config.seed) + ")";

        struct Abelian {
            std::string name;
            Verdict<AbelianCategory> v;
        };
        const std::vector<Abelian> dyadic = {
            {"reduction Z -> Z/2^n: movable", movable_morphism(ex.reduction, h, o)},
            {"(Z, x2): movable", movable_system(ex.doubling, h, o)},
            {"(Z, x2): ml", check_system(Property::MittagLeffler, ex.doubling, h, o)},
            {"(Z/2^n): movable", movable_system(ex.quotients, h, o)},
            {"(Z/2^n): ml", check_system(Property::MittagLeffler, ex.quotients, h, o)},
        };
        const auto checked = movable_morphism(f, h, o);
        const auto oracle = oracle_check(Property::Movable, f);

        if (config.format == Format::Structured) {
            auto report = envelope("demo");
            report["cases"] = json::array();
            for (const auto& c : dyadic) report["cases"].push_back(case_json(c.name, false, c.v));
            report["cases"].push_back(case_json(random_name, false, checked));
            report["cases"].push_back(case_json(random_name, true, oracle));
            return structured(report, 0);
        }
        std::string out;
        for (const auto& c : dyadic) out += case_text(c.name, false, c.v, IndexSet(), IndexSet()) + "\n";
        out += case_text(random_name, false, checked, f.target().index(), f.source().index()) + "\n";
        out += case_text(random_name, true, oracle, f.target().index(), f.source().index());
        return CommandResult{out, "", 0};
    });
}

}  // namespace promov::cli
