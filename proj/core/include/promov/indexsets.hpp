#pragma once

// Directed index sets: finite directed posets and the natural-number chain.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace promov {

/// Indices are positions for finite posets and values for the chain.
using Index = std::size_t;

/// One failed poset axiom with the elements that witness it.
struct PosetViolation {
    enum class Axiom { Reflexive, Antisymmetric, Transitive, Directed };
    Axiom axiom;
    std::vector<Index> witnesses;

    std::string describe(const std::vector<std::string>& labels) const;
    friend bool operator==(const PosetViolation&, const PosetViolation&) = default;
};

std::string to_string(PosetViolation::Axiom axiom);

/// A finite set with an order relation stored as a dense boolean table.
/// Construction does not validate; call validate_poset().
class FiniteDirectedPoset {
public:
    FiniteDirectedPoset() = default;
    FiniteDirectedPoset(std::vector<std::string> labels, std::vector<std::vector<bool>> leq);

    /// Reflexive-transitive closure of the given strict pairs (a, b) meaning a <= b.
    static FiniteDirectedPoset from_pairs(std::vector<std::string> labels,
                                          const std::vector<std::pair<Index, Index>>& pairs);
    static FiniteDirectedPoset chain(std::size_t n);
    static FiniteDirectedPoset singleton(std::string label = "*");

    std::size_t size() const { return labels_.size(); }
    bool leq(Index a, Index b) const { return leq_[a][b]; }
    const std::string& label(Index i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<Index> find(const std::string& label) const;

    /// Least upper bound under the poset order among all upper bounds of a and
    /// b; ties broken by element order. Requires a directed poset.
    Index upper_bound(Index a, Index b) const;
    /// The greatest element; exists in every finite directed poset.
    Index top() const;

    friend bool operator==(const FiniteDirectedPoset&, const FiniteDirectedPoset&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<bool>> leq_;
};

/// Violations of reflexivity, antisymmetry, transitivity and directedness.
std::vector<PosetViolation> validate_poset(const FiniteDirectedPoset& p);

/// The chain first <= first+1 <= ...
struct NatIndex {
    Index first = 0;
    friend bool operator==(const NatIndex&, const NatIndex&) = default;
};

/// Either kind of index set, behind one interface.
class IndexSet {
public:
    IndexSet() : set_(NatIndex{}) {}
    IndexSet(FiniteDirectedPoset p) : set_(std::move(p)) {}
    IndexSet(NatIndex n) : set_(n) {}

    bool is_finite() const { return std::holds_alternative<FiniteDirectedPoset>(set_); }
    const FiniteDirectedPoset& poset() const { return std::get<FiniteDirectedPoset>(set_); }
    const NatIndex& nat() const { return std::get<NatIndex>(set_); }

    bool contains(Index i) const;
    bool leq(Index a, Index b) const;
    Index upper_bound(Index a, Index b) const;
    /// Least element of the chain, or the first element of a finite poset.
    Index first() const;

    /// All elements of a finite poset, or first..bound for the chain.
    std::vector<Index> elements(Index bound) const;
    /// Elements >= a: all of them for finite posets, a..bound for the chain.
    std::vector<Index> at_least(Index a, Index bound) const;

    std::string label(Index i) const;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::variant<FiniteDirectedPoset, NatIndex> set_;
};

/// An index function between index sets: a table on finite domains, or
/// n -> mul * n + add on the chain (mul == 0 gives a constant into any set).
class IndexMap {
public:
    static IndexMap table(std::vector<Index> values);
    static IndexMap affine(Index mul, Index add);
    static IndexMap identity() { return affine(1, 0); }
    static IndexMap constant(Index value) { return affine(0, value); }

    bool is_table() const { return is_table_; }
    const std::vector<Index>& values() const { return table_; }
    Index mul() const { return mul_; }
    Index add() const { return add_; }

    Index operator()(Index i) const;

    /// (this after inner): i -> this(inner(i)).
    IndexMap after(const IndexMap& inner, const IndexSet& inner_domain) const;

    /// Violations (as text) of totality and well-typedness from domain into codomain.
    std::vector<std::string> check(const IndexSet& domain, const IndexSet& codomain) const;

    std::string to_string() const;

    friend bool operator==(const IndexMap&, const IndexMap&) = default;

private:
    bool is_table_ = false;
    std::vector<Index> table_;
    Index mul_ = 1;
    Index add_ = 0;
};

}  // namespace promov
