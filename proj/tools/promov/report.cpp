#include "report.hpp"
#include "node.hpp"

#include <regex>

namespace promov::cli {

namespace {

json index_json(Index i) { return std::to_string(i); }

json optional_index(const std::optional<Index>& i) { return i ? index_json(*i) : json(nullptr); }
json optional_count(const std::optional<std::size_t>& i) { return i ? json(std::to_string(*i)) : json(nullptr); }

json morphism_json(const FgAbelianMorphism& f) {
    return {{"source", encode_object(f.source())}, {"target", encode_object(f.target())}, {"matrix", encode_map(f)}};
}
json morphism_json(const PointedMap& f) {
    return {{"source", encode_object(f.source())}, {"target", encode_object(f.target())}, {"images", encode_map(f)}};
}

json subobject_json(const AbelianSubgroup& s) {
    json basis = json::array();
    for (std::size_t i = 0; i < s.basis.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < s.basis.cols(); ++j) row.push_back(encode_integer(s.basis(i, j)));
        basis.push_back(std::move(row));
    }
    return {{"ambient", encode_object(s.ambient)}, {"basis", std::move(basis)}};
}
json subobject_json(const PointedSubset& s) {
    json elements = json::array();
    for (auto e : s.elements) elements.push_back(std::to_string(e));
    return {{"ambient", encode_object(s.ambient)}, {"elements", std::move(elements)}};
}

FgAbelianMorphism read_morphism(const Node& n, AbelianCategory*) {
    n.only_keys({"source", "target", "matrix"});
    const auto s = Codec<AbelianCategory>::object(n.at("source"));
    const auto t = Codec<AbelianCategory>::object(n.at("target"));
    return Codec<AbelianCategory>::map(n.at("matrix"), s, t);
}
PointedMap read_morphism(const Node& n, PointedSetCategory*) {
    n.only_keys({"source", "target", "images"});
    const auto s = Codec<PointedSetCategory>::object(n.at("source"));
    const auto t = Codec<PointedSetCategory>::object(n.at("target"));
    return Codec<PointedSetCategory>::map(n.at("images"), s, t);
}

AbelianSubgroup read_subobject(const Node& n, AbelianCategory*) {
    n.only_keys({"ambient", "basis"});
    AbelianSubgroup s;
    s.ambient = Codec<AbelianCategory>::object(n.at("ambient"));
    const auto rows = n.at("basis").items();
    s.basis = IntMatrix(rows.size(), s.ambient.rank());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto cols = rows[i].items();
        if (cols.size() != s.ambient.rank()) rows[i].fail("basis row length differs from the ambient rank");
        for (std::size_t j = 0; j < cols.size(); ++j) s.basis(i, j) = cols[j].integer();
    }
    return s;
}
PointedSubset read_subobject(const Node& n, PointedSetCategory*) {
    n.only_keys({"ambient", "elements"});
    PointedSubset s;
    s.ambient = Codec<PointedSetCategory>::object(n.at("ambient"));
    for (const auto& e : n.at("elements").items()) s.elements.push_back(e.count());
    return s;
}

std::optional<Index> read_optional(const Node& n) {
    if (n.value().is_null()) return std::nullopt;
    return n.count();
}

template <class T>
T read_enum(const Node& n, std::optional<T> (*parse)(const std::string&)) {
    const auto name = n.string();
    const auto v = parse(name);
    if (!v) n.fail("unknown name '" + name + "'");
    return *v;
}

// Schema checking.

class SchemaCheck {
public:
    std::vector<std::string> errors;

    bool object(const json& j, const std::string& at) { return type(j.is_object(), at, "an object"); }
    bool array(const json& j, const std::string& at) { return type(j.is_array(), at, "an array"); }

    const json* field(const json& j, const std::string& at, const char* key) {
        if (!j.is_object() || !j.contains(key)) {
            errors.push_back(at + ": missing '" + key + "'");
            return nullptr;
        }
        return &j[key];
    }

    void string(const json& j, const std::string& at) { type(j.is_string(), at, "a string"); }
    void boolean(const json& j, const std::string& at) { type(j.is_boolean(), at, "a boolean"); }
    void integer(const json& j, const std::string& at) {
        static const std::regex decimal("-?[0-9]+");
        type(j.is_string() && std::regex_match(j.get<std::string>(), decimal), at, "a decimal string");
    }
    void integer_or_null(const json& j, const std::string& at) {
        if (!j.is_null()) integer(j, at);
    }
    void one_of(const json& j, const std::string& at, bool (*ok)(const std::string&)) {
        if (!j.is_string() || !ok(j.get<std::string>())) errors.push_back(at + ": not an allowed value");
    }

    void integers(const json& j, const std::string& at) {
        if (!array(j, at)) return;
        for (std::size_t i = 0; i < j.size(); ++i) integer(j[i], at + "/" + std::to_string(i));
    }
    void matrix(const json& j, const std::string& at) {
        if (!array(j, at)) return;
        for (std::size_t i = 0; i < j.size(); ++i) integers(j[i], at + "/" + std::to_string(i));
    }
    void object_value(const json& j, const std::string& at) {
        if (j.is_array()) integers(j, at);
        else integer(j, at);
    }
    void morphism(const json& j, const std::string& at) {
        if (!object(j, at)) return;
        if (auto* s = field(j, at, "source")) object_value(*s, at + "/source");
        if (auto* t = field(j, at, "target")) object_value(*t, at + "/target");
        if (j.contains("matrix")) matrix(j["matrix"], at + "/matrix");
        else if (j.contains("images")) integers(j["images"], at + "/images");
        else errors.push_back(at + ": missing 'matrix' or 'images'");
    }
    void subobject(const json& j, const std::string& at) {
        if (!object(j, at)) return;
        if (auto* a = field(j, at, "ambient")) object_value(*a, at + "/ambient");
        if (j.contains("basis")) matrix(j["basis"], at + "/basis");
        else if (j.contains("elements")) integers(j["elements"], at + "/elements");
        else errors.push_back(at + ": missing 'basis' or 'elements'");
    }

    void verdict(const json& j, const std::string& at);
    void violation(const json& j, const std::string& at);

private:
    bool type(bool ok, const std::string& at, const char* what) {
        if (!ok) errors.push_back(at + ": expected " + what);
        return ok;
    }
};

bool is_property(const std::string& s) { return parse_property(s).has_value(); }
bool is_status(const std::string& s) { return parse_status(s).has_value(); }
bool is_rule(const std::string& s) { return parse_rule(s).has_value(); }
bool is_backend(const std::string& s) { return s == "abelian" || s == "pointed_set"; }

void SchemaCheck::verdict(const json& j, const std::string& at) {
    if (!object(j, at)) return;
    if (auto* p = field(j, at, "property")) one_of(*p, at + "/property", is_property);
    if (auto* s = field(j, at, "status")) one_of(*s, at + "/status", is_status);
    if (auto* e = field(j, at, "exact")) boolean(*e, at + "/exact");
    if (auto* h = field(j, at, "horizon"); h && object(*h, at + "/horizon"))
        for (const char* k : {"mu_max", "lambda_max", "muprime_max", "cone_max"})
            if (auto* v = field(*h, at + "/horizon", k)) integer(*v, at + "/horizon/" + k);
    if (auto* r = field(j, at, "refutation"); r && !r->is_null() && object(*r, at + "/refutation")) {
        const auto rat = at + "/refutation";
        for (const char* k : {"mu", "lambda", "deep"})
            if (auto* v = field(*r, rat, k)) integer(*v, rat + "/" + k);
        for (const char* k : {"c0_object", "c0_hom"})
            if (auto* v = field(*r, rat, k)) integer_or_null(*v, rat + "/" + k);
        if (auto* v = field(*r, rat, "reason")) string(*v, rat + "/reason");
    }
    const json* records = field(j, at, "records");
    if (!records || !array(*records, at + "/records")) return;
    for (std::size_t i = 0; i < records->size(); ++i) {
        const auto& rec = (*records)[i];
        const auto rat = at + "/records/" + std::to_string(i);
        if (!object(rec, rat)) continue;
        if (auto* v = field(rec, rat, "mu")) integer(*v, rat + "/mu");
        if (auto* v = field(rec, rat, "status")) one_of(*v, rat + "/status", is_status);
        if (auto* v = field(rec, rat, "lambda")) integer_or_null(*v, rat + "/lambda");
        if (auto* v = field(rec, rat, "rule")) one_of(*v, rat + "/rule", is_rule);
        if (auto* v = field(rec, rat, "index_set")) integers(*v, rat + "/index_set");
        if (auto* v = field(rec, rat, "note")) string(*v, rat + "/note");
        if (auto* ws = field(rec, rat, "witnesses"); ws && array(*ws, rat + "/witnesses"))
            for (std::size_t k = 0; k < ws->size(); ++k) {
                const auto& w = (*ws)[k];
                const auto wat = rat + "/witnesses/" + std::to_string(k);
                if (!object(w, wat)) continue;
                if (auto* v = field(w, wat, "deep")) integer(*v, wat + "/deep");
                for (const char* key : {"lambda_star", "c0_object", "c0_hom"})
                    if (auto* v = field(w, wat, key)) integer_or_null(*v, wat + "/" + key);
                if (auto* v = field(w, wat, "morphism")) morphism(*v, wat + "/morphism");
            }
        if (auto* cs = field(rec, rat, "chain"); cs && array(*cs, rat + "/chain"))
            for (std::size_t k = 0; k < cs->size(); ++k) {
                const auto& c = (*cs)[k];
                const auto cat = rat + "/chain/" + std::to_string(k);
                if (!object(c, cat)) continue;
                if (auto* v = field(c, cat, "at")) integer(*v, cat + "/at");
                if (auto* v = field(c, cat, "image")) subobject(*v, cat + "/image");
            }
    }
}

void SchemaCheck::violation(const json& j, const std::string& at) {
    if (!object(j, at)) return;
    if (auto* v = field(j, at, "kind")) string(*v, at + "/kind");
    if (auto* v = field(j, at, "at")) integers(*v, at + "/at");
    if (auto* v = field(j, at, "labels"); v && array(*v, at + "/labels"))
        for (std::size_t i = 0; i < v->size(); ++i) string((*v)[i], at + "/labels/" + std::to_string(i));
    if (auto* v = field(j, at, "message")) string(*v, at + "/message");
}

}  // namespace

template <CategoryBackend C>
json verdict_to_json(const Verdict<C>& v) {
    json records = json::array();
    for (const auto& r : v.records) {
        json witnesses = json::array();
        for (const auto& w : r.witnesses)
            witnesses.push_back({{"deep", index_json(w.deep)},
                                 {"lambda_star", optional_index(w.lambda_star)},
                                 {"c0_object", optional_count(w.c0_object)},
                                 {"c0_hom", optional_count(w.c0_hom)},
                                 {"morphism", morphism_json(w.morphism)}});
        json index_set = json::array();
        for (auto i : r.index_set) index_set.push_back(index_json(i));
        json chain = json::array();
        for (const auto& [at, s] : r.chain) chain.push_back({{"at", index_json(at)}, {"image", subobject_json(s)}});
        records.push_back({{"mu", index_json(r.mu)},
                           {"status", to_string(r.status)},
                           {"lambda", optional_index(r.lambda)},
                           {"rule", to_string(r.rule)},
                           {"witnesses", std::move(witnesses)},
                           {"index_set", std::move(index_set)},
                           {"chain", std::move(chain)},
                           {"note", r.note}});
    }
    json refutation = nullptr;
    if (v.refutation) {
        const auto& r = *v.refutation;
        refutation = {{"mu", index_json(r.mu)},
                      {"lambda", index_json(r.lambda)},
                      {"deep", index_json(r.deep)},
                      {"c0_object", optional_count(r.c0_object)},
                      {"c0_hom", optional_count(r.c0_hom)},
                      {"reason", r.reason}};
    }
    return {{"property", to_string(v.property)},
            {"status", to_string(v.status)},
            {"exact", v.exact},
            {"horizon",
             {{"mu_max", index_json(v.horizon.mu_max)},
              {"lambda_max", index_json(v.horizon.lambda_max)},
              {"muprime_max", index_json(v.horizon.muprime_max)},
              {"cone_max", index_json(v.horizon.cone_max)}}},
            {"records", std::move(records)},
            {"refutation", std::move(refutation)}};
}

template <CategoryBackend C>
Verdict<C> verdict_from_json(const json& j) {
    const Node n(j, "");
    n.only_keys({"property", "status", "exact", "horizon", "records", "refutation"});
    Verdict<C> v;
    v.property = read_enum(n.at("property"), &parse_property);
    v.status = read_enum(n.at("status"), &parse_status);
    v.exact = n.at("exact").boolean();
    const Node h = n.at("horizon");
    h.only_keys({"mu_max", "lambda_max", "muprime_max", "cone_max"});
    v.horizon = {h.at("mu_max").count(), h.at("lambda_max").count(), h.at("muprime_max").count(),
                 h.at("cone_max").count()};
    for (const auto& rn : n.at("records").items()) {
        rn.only_keys({"mu", "status", "lambda", "rule", "witnesses", "index_set", "chain", "note"});
        MuRecord<C> r;
        r.mu = rn.at("mu").count();
        r.status = read_enum(rn.at("status"), &parse_status);
        r.lambda = read_optional(rn.at("lambda"));
        r.rule = read_enum(rn.at("rule"), &parse_rule);
        for (const auto& wn : rn.at("witnesses").items()) {
            wn.only_keys({"deep", "lambda_star", "c0_object", "c0_hom", "morphism"});
            Witness<C> w;
            w.deep = wn.at("deep").count();
            w.lambda_star = read_optional(wn.at("lambda_star"));
            w.c0_object = read_optional(wn.at("c0_object"));
            w.c0_hom = read_optional(wn.at("c0_hom"));
            w.morphism = read_morphism(wn.at("morphism"), static_cast<C*>(nullptr));
            r.witnesses.push_back(std::move(w));
        }
        for (const auto& i : rn.at("index_set").items()) r.index_set.push_back(i.count());
        for (const auto& cn : rn.at("chain").items()) {
            cn.only_keys({"at", "image"});
            r.chain.emplace_back(cn.at("at").count(), read_subobject(cn.at("image"), static_cast<C*>(nullptr)));
        }
        r.note = rn.at("note").string();
        v.records.push_back(std::move(r));
    }
    const Node rf = n.at("refutation");
    if (!rf.value().is_null()) {
        rf.only_keys({"mu", "lambda", "deep", "c0_object", "c0_hom", "reason"});
        v.refutation = Refutation{rf.at("mu").count(),
                                  rf.at("lambda").count(),
                                  rf.at("deep").count(),
                                  read_optional(rf.at("c0_object")),
                                  read_optional(rf.at("c0_hom")),
                                  rf.at("reason").string()};
    }
    return v;
}

json violation_to_json(const Violation& v, const IndexSet& index) {
    json at = json::array();
    json labels = json::array();
    for (auto i : v.at) {
        at.push_back(index_json(i));
        labels.push_back(index.label(i));
    }
    return {{"kind", v.kind}, {"at", std::move(at)}, {"labels", std::move(labels)}, {"message", v.message}};
}

json envelope(const std::string& verb) { return {{"format", "promov-report"}, {"version", "1"}, {"verb", verb}}; }

std::vector<std::string> schema_errors(const json& report) {
    SchemaCheck s;
    if (!s.object(report, "/")) return s.errors;
    if (auto* f = s.field(report, "", "format"); f && *f != "promov-report") s.errors.push_back("/format: wrong value");
    if (auto* v = s.field(report, "", "version"); v && *v != "1") s.errors.push_back("/version: wrong value");
    const json* verb = s.field(report, "", "verb");
    if (!verb || !verb->is_string()) return s.errors;
    const auto name = verb->get<std::string>();

    auto violations = [&](const char* key) {
        if (auto* vs = s.field(report, "", key); vs && s.array(*vs, std::string("/") + key))
            for (std::size_t i = 0; i < vs->size(); ++i)
                s.violation((*vs)[i], std::string("/") + key + "/" + std::to_string(i));
    };
    auto backend = [&] {
        if (auto* b = s.field(report, "", "backend")) s.one_of(*b, "/backend", is_backend);
    };

    if (name == "check" || name == "demo") {
        const json* cases = s.field(report, "", "cases");
        if (!cases || !s.array(*cases, "/cases")) return s.errors;
        for (std::size_t i = 0; i < cases->size(); ++i) {
            const auto& c = (*cases)[i];
            const auto at = "/cases/" + std::to_string(i);
            if (!s.object(c, at)) continue;
            if (auto* v = s.field(c, at, "name")) s.string(*v, at + "/name");
            if (auto* v = s.field(c, at, "backend")) s.one_of(*v, at + "/backend", is_backend);
            if (auto* v = s.field(c, at, "oracle")) s.boolean(*v, at + "/oracle");
            if (auto* v = s.field(c, at, "exit_code")) s.integer(*v, at + "/exit_code");
            const json* verdict = s.field(c, at, "verdict");
            if (verdict) s.verdict(*verdict, at + "/verdict");
            const json* e = verdict && verdict->is_object() && verdict->contains("exact") ? &(*verdict)["exact"] : nullptr;
            const bool exact = !e || !e->is_boolean() || e->get<bool>();
            if (!exact && !c.contains("disclaimer")) s.errors.push_back(at + ": non-exact verdict without disclaimer");
            if (c.contains("disclaimer")) s.string(c["disclaimer"], at + "/disclaimer");
        }
    } else if (name == "validate") {
        backend();
        if (auto* v = s.field(report, "", "valid")) s.boolean(*v, "/valid");
        violations("violations");
    } else if (name == "compose") {
        backend();
        if (auto* cs = s.field(report, "", "components"); cs && s.array(*cs, "/components"))
            for (std::size_t i = 0; i < cs->size(); ++i) {
                const auto& c = (*cs)[i];
                const auto at = "/components/" + std::to_string(i);
                if (!s.object(c, at)) continue;
                if (auto* v = s.field(c, at, "mu")) s.integer(*v, at + "/mu");
                if (auto* v = s.field(c, at, "phi")) s.integer(*v, at + "/phi");
                if (auto* v = s.field(c, at, "morphism")) s.morphism(*v, at + "/morphism");
            }
        violations("violations");
    } else if (name == "equiv") {
        backend();
        if (auto* v = s.field(report, "", "equivalent")) s.boolean(*v, "/equivalent");
        const json* exact = s.field(report, "", "exact");
        if (exact) s.boolean(*exact, "/exact");
        if (auto* v = s.field(report, "", "failing_mu")) s.integer_or_null(*v, "/failing_mu");
        if (auto* is = s.field(report, "", "indices"); is && s.array(*is, "/indices"))
            for (std::size_t i = 0; i < is->size(); ++i) {
                const auto& e = (*is)[i];
                const auto at = "/indices/" + std::to_string(i);
                if (!s.object(e, at)) continue;
                if (auto* v = s.field(e, at, "mu")) s.integer(*v, at + "/mu");
                if (auto* v = s.field(e, at, "lambda_prime")) s.integer_or_null(*v, at + "/lambda_prime");
            }
        if (exact && exact->is_boolean() && !exact->get<bool>() && !report.contains("disclaimer"))
            s.errors.push_back("/: non-exact result without disclaimer");
    } else if (name == "error") {
        if (auto* v = s.field(report, "", "where")) s.string(*v, "/where");
        if (auto* v = s.field(report, "", "message")) s.string(*v, "/message");
        if (report.contains("violations")) violations("violations");
    } else {
        s.errors.push_back("/verb: unknown verb '" + name + "'");
    }
    return s.errors;
}

template json verdict_to_json<AbelianCategory>(const Verdict<AbelianCategory>&);
template json verdict_to_json<PointedSetCategory>(const Verdict<PointedSetCategory>&);
template Verdict<AbelianCategory> verdict_from_json<AbelianCategory>(const json&);
template Verdict<PointedSetCategory> verdict_from_json<PointedSetCategory>(const json&);

}  // namespace promov::cli
