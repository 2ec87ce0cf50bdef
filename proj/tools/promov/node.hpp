#pragma once

// Read access to a JSON value that remembers its pointer for error messages.

#include "document.hpp"

#include <initializer_list>
#include <regex>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace promov::cli {

inline std::string escape_pointer(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

/// A JSON value together with its pointer, so every error names its location.
class Node {
public:
    Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

    const json& value() const { return *j_; }
    std::string path() const { return path_.empty() ? "/" : path_; }

    [[noreturn]] void fail(const std::string& message) const { throw InputError(path(), message); }

    bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

    Node at(const std::string& key) const {
        require_object();
        if (!j_->contains(key)) fail("missing key '" + key + "'");
        return Node((*j_)[key], path_ + "/" + escape_pointer(key));
    }

    std::vector<Node> items() const {
        if (!j_->is_array()) fail("expected an array");
        std::vector<Node> out;
        for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back((*j_)[i], path_ + "/" + std::to_string(i));
        return out;
    }

    std::vector<std::pair<std::string, Node>> entries() const {
        require_object();
        std::vector<std::pair<std::string, Node>> out;
        for (auto it = j_->begin(); it != j_->end(); ++it)
            out.emplace_back(it.key(), Node(it.value(), path_ + "/" + escape_pointer(it.key())));
        return out;
    }

    void require_object() const {
        if (!j_->is_object()) fail("expected an object");
    }

    /// Rejects keys outside the allowed set, so typos do not pass silently.
    void only_keys(std::initializer_list<const char*> allowed) const {
        require_object();
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (auto it = j_->begin(); it != j_->end(); ++it)
            if (!ok.count(it.key())) fail("unexpected key '" + it.key() + "'");
    }

    std::string string() const {
        if (!j_->is_string()) fail("expected a string");
        return j_->get<std::string>();
    }

    Integer integer() const {
        static const std::regex decimal("-?[0-9]+");
        std::string text;
        if (j_->is_string()) text = j_->get<std::string>();
        else if (j_->is_number_integer()) text = j_->dump();
        else fail("expected an integer (decimal string)");
        if (!std::regex_match(text, decimal)) fail("'" + text + "' is not a decimal integer");
        return Integer(text);
    }

    std::size_t count() const {
        const Integer n = integer();
        if (n < 0 || !n.fits_ulong_p()) fail("expected a nonnegative integer of machine size");
        return n.get_ui();
    }

    bool boolean() const {
        if (!j_->is_boolean()) fail("expected true or false");
        return j_->get<bool>();
    }

private:
    const json* j_;
    std::string path_;
};

/// Decoding of objects and maps per backend.
template <CategoryBackend C>
struct Codec;

template <>
struct Codec<AbelianCategory> {
    static FgAbelianObject object(const Node& n) {
        IntVector factors;
        for (const auto& f : n.items()) {
            factors.push_back(f.integer());
            if (factors.back() < 0) f.fail("factors are nonnegative");
        }
        return FgAbelianObject(std::move(factors));
    }

    static FgAbelianMorphism map(const Node& n, const FgAbelianObject& source, const FgAbelianObject& target) {
        const auto rows = n.items();
        if (rows.size() != target.rank())
            n.fail("expected " + std::to_string(target.rank()) + " rows for target " + target.to_string());
        IntMatrix m(target.rank(), source.rank());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto cols = rows[i].items();
            if (cols.size() != source.rank())
                rows[i].fail("expected " + std::to_string(source.rank()) + " entries for source " + source.to_string());
            for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = cols[j].integer();
        }
        try {
            return FgAbelianMorphism(source, target, std::move(m));
        } catch (const std::invalid_argument& e) {
            n.fail(e.what());
        }
    }
};

template <>
struct Codec<PointedSetCategory> {
    static PointedFiniteSet object(const Node& n) {
        const std::size_t size = n.count();
        if (size == 0) n.fail("a pointed set has at least the basepoint");
        return PointedFiniteSet(size);
    }

    static PointedMap map(const Node& n, const PointedFiniteSet& source, const PointedFiniteSet& target) {
        std::vector<std::size_t> images;
        for (const auto& i : n.items()) images.push_back(i.count());
        try {
            return PointedMap(source, target, std::move(images));
        } catch (const std::invalid_argument& e) {
            n.fail(e.what());
        }
    }
};

}  // namespace promov::cli
