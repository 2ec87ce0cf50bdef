#include "document.hpp"
#include "node.hpp"

#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace promov::cli {

namespace {

Periodicity parse_periodicity(const Node& n) {
    n.only_keys({"offset", "period"});
    Periodicity p{n.at("offset").count(), n.at("period").count()};
    if (p.period == 0) n.at("period").fail("period must be positive");
    return p;
}

struct Flags {
    SystemFlags flags;
    bool given = false;
};

Flags parse_flags(const Node& sys) {
    Flags out;
    if (!sys.has("flags")) return out;
    const Node f = sys.at("flags");
    f.only_keys({"epimorphic", "periodic"});
    out.given = true;
    if (f.has("epimorphic")) out.flags.all_bonds_epimorphic = f.at("epimorphic").boolean();
    if (f.has("periodic")) out.flags.eventually_periodic = parse_periodicity(f.at("periodic"));
    return out;
}

/// Position in a periodic table of index n.
std::size_t table_position(Index first, const Periodicity& p, Index n) {
    if (n < p.offset + p.period) return n - first;
    return p.offset - first + (n - p.offset) % p.period;
}

template <CategoryBackend C>
InverseSystem<C> parse_finite_system(const Node& sys, const Node& index) {
    index.only_keys({"kind", "elements", "order"});
    std::vector<std::string> labels;
    std::map<std::string, Index> position;
    for (const auto& e : index.at("elements").items()) {
        auto label = e.string();
        if (!position.emplace(label, labels.size()).second) e.fail("duplicate element '" + label + "'");
        labels.push_back(std::move(label));
    }
    auto lookup = [&](const Node& n) {
        const auto label = n.string();
        const auto it = position.find(label);
        if (it == position.end()) n.fail("unknown index '" + label + "'");
        return it->second;
    };

    std::vector<std::pair<Index, Index>> pairs;
    if (index.has("order"))
        for (const auto& pair : index.at("order").items()) {
            const auto ends = pair.items();
            if (ends.size() != 2) pair.fail("expected [lo, hi]");
            pairs.emplace_back(lookup(ends[0]), lookup(ends[1]));
        }
    auto poset = FiniteDirectedPoset::from_pairs(labels, pairs);

    const Node objects = sys.at("objects");
    std::vector<typename C::Object> objs(labels.size());
    std::vector<bool> seen(labels.size(), false);
    for (const auto& [label, node] : objects.entries()) {
        const auto it = position.find(label);
        if (it == position.end()) node.fail("unknown index '" + label + "'");
        objs[it->second] = Codec<C>::object(node);
        seen[it->second] = true;
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!seen[i]) objects.fail("no object for index '" + labels[i] + "'");

    typename InverseSystem<C>::BondTable bonds;
    for (const auto& b : sys.at("bonds").items()) {
        b.only_keys({"from", "to", "map"});
        const Index hi = lookup(b.at("from"));
        const Index lo = lookup(b.at("to"));
        auto m = Codec<C>::map(b.at("map"), objs[hi], objs[lo]);
        if (!bonds.emplace(std::make_pair(lo, hi), std::move(m)).second) b.fail("duplicate bond");
    }
    const Flags flags = parse_flags(sys);
    return InverseSystem<C>::finite(std::move(poset), std::move(objs), std::move(bonds), flags.flags);
}

Recipe parse_recipe(const Node& n) {
    n.only_keys({"family", "params"});
    Recipe r{n.at("family").string(), {}};
    if (n.has("params"))
        for (const auto& [key, value] : n.at("params").entries())
            r.params.emplace_back(key, value.value().is_string() ? value.string() : value.integer().get_str());
    return r;
}

template <CategoryBackend C>
InverseSystem<C> parse_sequence(const Node& sys, const Node& index) {
    index.only_keys({"kind", "first"});
    const Index first = index.has("first") ? index.at("first").count() : 0;
    const Node bonds = sys.at("bonds");
    const Flags flags = parse_flags(sys);

    if (bonds.has("family")) {
        if constexpr (std::is_same_v<C, AbelianCategory>) {
            if (sys.has("objects")) sys.at("objects").fail("objects come from the family");
            if (flags.given) sys.at("flags").fail("flags come from the family");
            try {
                auto x = abelian_sequence_from_recipe(parse_recipe(bonds));
                if (x.index().first() != first)
                    index.fail("the family starts at index " + std::to_string(x.index().first()));
                return x;
            } catch (const std::logic_error& e) {
                bonds.fail(e.what());
            }
        } else {
            bonds.fail("sequence families exist only for the abelian backend");
        }
    }

    bonds.only_keys({"steps"});
    if (!flags.flags.eventually_periodic) sys.fail("a step table needs flags.periodic");
    const Periodicity p = *flags.flags.eventually_periodic;
    if (p.offset < first) sys.at("flags").fail("periodic offset precedes the first index");
    const Index length = p.offset + p.period - first;

    std::vector<typename C::Object> objs;
    const auto obj_nodes = sys.at("objects").items();
    if (obj_nodes.size() != length)
        sys.at("objects").fail("expected " + std::to_string(length) + " objects (first to offset + period - 1)");
    for (const auto& o : obj_nodes) objs.push_back(Codec<C>::object(o));

    std::vector<typename C::Morphism> steps;
    const auto step_nodes = bonds.at("steps").items();
    if (step_nodes.size() != length) bonds.at("steps").fail("expected " + std::to_string(length) + " steps");
    for (std::size_t i = 0; i < length; ++i) {
        const Index n = first + i;
        steps.push_back(Codec<C>::map(step_nodes[i], objs[table_position(first, p, n + 1)], objs[i]));
    }
    try {
        return InverseSystem<C>::periodic(NatIndex{first}, p, std::move(objs), std::move(steps),
                                          flags.flags.all_bonds_epimorphic);
    } catch (const std::invalid_argument& e) {
        sys.fail(e.what());
    }
}

template <CategoryBackend C>
InverseSystem<C> parse_system(const Node& sys) {
    const Node index = sys.at("index");
    const auto kind = index.at("kind").string();
    if (kind == "finite") return parse_finite_system<C>(sys, index);
    if (kind == "nat") return parse_sequence<C>(sys, index);
    index.at("kind").fail("kind is 'finite' or 'nat'");
}

/// An index of `set` written as a label (finite) or a number (chain).
Index parse_index(const Node& n, const IndexSet& set) {
    if (set.is_finite()) {
        const auto label = n.string();
        const auto i = set.poset().find(label);
        if (!i) n.fail("unknown index '" + label + "'");
        return *i;
    }
    const Index i = n.count();
    if (!set.contains(i)) n.fail("index below the first index of the sequence");
    return i;
}

template <CategoryBackend C>
SystemMorphism<C> parse_morphism(const Node& m, const InverseSystem<C>& source, const InverseSystem<C>* fixed_target) {
    m.only_keys({"target", "phi", "f"});
    InverseSystem<C> target = source;
    if (m.has("target")) {
        if (fixed_target) m.at("target").fail("the target is fixed by the first morphism");
        target = parse_system<C>(m.at("target"));
    } else if (fixed_target) {
        target = *fixed_target;
    }
    const IndexSet& lam = source.index();
    const IndexSet& mset = target.index();
    const Node f = m.at("f");

    if (!mset.is_finite() && f.has("family")) {
        if constexpr (std::is_same_v<C, AbelianCategory>) {
            if (m.has("phi")) m.at("phi").fail("phi comes from the family");
            try {
                return abelian_morphism_from_recipe(parse_recipe(f), source, target);
            } catch (const std::logic_error& e) {
                f.fail(e.what());
            }
        } else {
            f.fail("morphism families exist only for the abelian backend");
        }
    }

    IndexMap phi = IndexMap::identity();
    if (mset.is_finite()) {
        std::vector<Index> values(mset.poset().size());
        if (m.has("phi")) {
            const Node p = m.at("phi");
            std::vector<bool> seen(values.size(), false);
            for (const auto& [label, node] : p.entries()) {
                const auto mu = mset.poset().find(label);
                if (!mu) node.fail("unknown index '" + label + "'");
                values[*mu] = parse_index(node, lam);
                seen[*mu] = true;
            }
            for (std::size_t i = 0; i < values.size(); ++i)
                if (!seen[i]) p.fail("no value for '" + mset.label(i) + "'");
        } else {
            if (!lam.is_finite()) m.fail("phi is required when the source is a sequence");
            for (std::size_t i = 0; i < values.size(); ++i) {
                const auto l = lam.poset().find(mset.label(i));
                if (!l) m.fail("phi is required: no source index named '" + mset.label(i) + "'");
                values[i] = *l;
            }
        }
        phi = IndexMap::table(std::move(values));
    } else if (m.has("phi")) {
        const Node p = m.at("phi");
        p.only_keys({"mul", "add"});
        const Index mul = p.at("mul").count();
        if (lam.is_finite() && mul != 0) p.at("mul").fail("into a finite index set phi must be constant (mul 0)");
        phi = IndexMap::affine(mul, parse_index(p.at("add"), lam));
    } else if (lam.is_finite()) {
        m.fail("phi is required from a sequence into a finite index set");
    }
    for (const auto& msg : phi.check(mset, lam)) m.fail("phi: " + msg);

    if (mset.is_finite()) {
        std::vector<typename C::Morphism> comps(mset.poset().size());
        std::vector<bool> seen(comps.size(), false);
        for (const auto& [label, node] : f.entries()) {
            const auto mu = mset.poset().find(label);
            if (!mu) node.fail("unknown index '" + label + "'");
            comps[*mu] = Codec<C>::map(node, source.object(phi(*mu)), target.object(*mu));
            seen[*mu] = true;
        }
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (!seen[i]) f.fail("no component for '" + mset.label(i) + "'");
        return SystemMorphism<C>::table(source, target, std::move(phi), std::move(comps));
    }

    f.only_keys({"components", "periodic"});
    const Periodicity p = parse_periodicity(f.at("periodic"));
    const Index first = mset.first();
    if (p.offset < first) f.at("periodic").fail("offset precedes the first index");
    const auto nodes = f.at("components").items();
    if (nodes.size() != p.offset + p.period - first)
        f.at("components").fail("expected " + std::to_string(p.offset + p.period - first) + " components");
    std::vector<typename C::Morphism> comps;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Index mu = first + i;
        comps.push_back(Codec<C>::map(nodes[i], source.object(phi(mu)), target.object(mu)));
    }
    return SystemMorphism<C>::periodic(source, target, std::move(phi), p, std::move(comps));
}

template <CategoryBackend C>
Instance<C> parse_instance(const Node& doc, SecondRole role) {
    doc.only_keys({"backend", "index", "objects", "bonds", "flags", "morphism", "second", "test_objects"});
    Instance<C> in;
    in.system = parse_system<C>(doc);
    if (doc.has("morphism")) in.morphism = parse_morphism<C>(doc.at("morphism"), in.system, nullptr);
    if (doc.has("second")) {
        const auto first = in.primary();
        if (role == SecondRole::Auto)
            role = doc.at("second").has("target") ? SecondRole::Compose : SecondRole::Equivalent;
        if (role == SecondRole::Compose) {
            in.second = parse_morphism<C>(doc.at("second"), first.target(), nullptr);
        } else {
            const auto target = first.target();
            in.second = parse_morphism<C>(doc.at("second"), in.system, &target);
        }
    }
    if (doc.has("test_objects"))
        for (const auto& o : doc.at("test_objects").items()) in.test_objects.push_back(Codec<C>::object(o));
    return in;
}

}  // namespace

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InputError("line " + std::to_string(line) + ", column " + std::to_string(column), e.what());
    }
}

AnyInstance load_instance(const json& doc, SecondRole role) {
    const Node root(doc, "");
    const auto backend = root.at("backend").string();
    if (backend == "abelian") return parse_instance<AbelianCategory>(root, role);
    if (backend == "pointed_set") return parse_instance<PointedSetCategory>(root, role);
    root.at("backend").fail("backend is 'abelian' or 'pointed_set'");
}

AnyInstance load_instance_file(const std::string& path, SecondRole role) {
    std::ifstream in(path);
    if (!in) throw InputError(path, "cannot open file");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return load_instance(parse_text(text.str()), role);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
}

Recipe parse_family_spec(const std::string& spec) {
    Recipe r;
    const auto colon = spec.find(':');
    r.family = spec.substr(0, colon);
    if (r.family.empty()) throw InputError("--family", "empty family name");
    if (colon == std::string::npos) return r;
    std::stringstream ss(spec.substr(colon + 1));
    for (std::string item; std::getline(ss, item, ';');) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("--family", "parameter '" + item + "' is not key=value");
        r.params.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return r;
}

Instance<AbelianCategory> family_instance(const std::string& system, const std::string& target,
                                          const std::string& morphism) {
    Instance<AbelianCategory> in;
    try {
        in.system = abelian_sequence_from_recipe(parse_family_spec(system));
        if (!morphism.empty()) {
            const auto y = target.empty() ? in.system : abelian_sequence_from_recipe(parse_family_spec(target));
            in.morphism = abelian_morphism_from_recipe(parse_family_spec(morphism), in.system, y);
        } else if (!target.empty()) {
            throw InputError("--target-family", "needs --morphism-family");
        }
    } catch (const std::logic_error& e) {
        throw InputError("--family", e.what());
    }
    return in;
}

json encode_integer(const Integer& n) { return n.get_str(); }

json encode_object(const FgAbelianObject& a) {
    json out = json::array();
    for (const auto& f : a.factors()) out.push_back(encode_integer(f));
    return out;
}

json encode_object(const PointedFiniteSet& a) { return std::to_string(a.size); }

json encode_map(const FgAbelianMorphism& f) {
    json out = json::array();
    for (std::size_t i = 0; i < f.matrix().rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < f.matrix().cols(); ++j) row.push_back(encode_integer(f.matrix()(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

json encode_map(const PointedMap& f) {
    json out = json::array();
    for (auto i : f.images()) out.push_back(std::to_string(i));
    return out;
}

}  // namespace promov::cli
