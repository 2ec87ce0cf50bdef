#include "promov/indexsets.hpp"

#include <sstream>
#include <stdexcept>

namespace promov {

std::string to_string(PosetViolation::Axiom axiom) {
    switch (axiom) {
        case PosetViolation::Axiom::Reflexive: return "reflexivity";
        case PosetViolation::Axiom::Antisymmetric: return "antisymmetry";
        case PosetViolation::Axiom::Transitive: return "transitivity";
        case PosetViolation::Axiom::Directed: return "directedness";
    }
    return "?";
}

std::string PosetViolation::describe(const std::vector<std::string>& labels) const {
    std::ostringstream out;
    out << to_string(axiom) << " fails at (";
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        if (i) out << ", ";
        out << (witnesses[i] < labels.size() ? labels[witnesses[i]] : std::to_string(witnesses[i]));
    }
    out << ')';
    if (axiom == Axiom::Directed) out << ": no upper bound";
    return out.str();
}

FiniteDirectedPoset::FiniteDirectedPoset(std::vector<std::string> labels,
                                         std::vector<std::vector<bool>> leq)
    : labels_(std::move(labels)), leq_(std::move(leq)) {
    if (leq_.size() != labels_.size())
        throw std::invalid_argument("FiniteDirectedPoset: order table has wrong size");
    for (const auto& row : leq_)
        if (row.size() != labels_.size())
            throw std::invalid_argument("FiniteDirectedPoset: order table has wrong size");
}

FiniteDirectedPoset FiniteDirectedPoset::from_pairs(std::vector<std::string> labels,
                                                    const std::vector<std::pair<Index, Index>>& pairs) {
    const std::size_t n = labels.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (auto [a, b] : pairs) {
        if (a >= n || b >= n) throw std::out_of_range("FiniteDirectedPoset: pair out of range");
        leq[a][b] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq[k][j]) leq[i][j] = true;
    return {std::move(labels), std::move(leq)};
}

FiniteDirectedPoset FiniteDirectedPoset::chain(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        for (std::size_t j = i; j < n; ++j) leq[i][j] = true;
    }
    return {std::move(labels), std::move(leq)};
}

FiniteDirectedPoset FiniteDirectedPoset::singleton(std::string label) {
    return {{std::move(label)}, {{true}}};
}

std::optional<Index> FiniteDirectedPoset::find(const std::string& label) const {
    for (Index i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

Index FiniteDirectedPoset::upper_bound(Index a, Index b) const {
    std::vector<Index> bounds;
    for (Index c = 0; c < size(); ++c)
        if (leq(a, c) && leq(b, c)) bounds.push_back(c);
    for (Index c : bounds) {
        bool minimal = true;
        for (Index d : bounds)
            if (d != c && leq(d, c)) minimal = false;
        if (minimal) return c;
    }
    throw std::logic_error("upper_bound: poset is not directed");
}

Index FiniteDirectedPoset::top() const {
    for (Index c = 0; c < size(); ++c) {
        bool greatest = true;
        for (Index a = 0; a < size() && greatest; ++a) greatest = leq(a, c);
        if (greatest) return c;
    }
    throw std::logic_error("top: poset has no greatest element");
}

std::vector<PosetViolation> validate_poset(const FiniteDirectedPoset& p) {
    using A = PosetViolation::Axiom;
    std::vector<PosetViolation> out;
    const std::size_t n = p.size();
    for (Index a = 0; a < n; ++a)
        if (!p.leq(a, a)) out.push_back({A::Reflexive, {a}});
    for (Index a = 0; a < n; ++a)
        for (Index b = a + 1; b < n; ++b)
            if (p.leq(a, b) && p.leq(b, a)) out.push_back({A::Antisymmetric, {a, b}});
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
            if (!p.leq(a, b)) continue;
            for (Index c = 0; c < n; ++c)
                if (p.leq(b, c) && !p.leq(a, c)) out.push_back({A::Transitive, {a, b, c}});
        }
    for (Index a = 0; a < n; ++a)
        for (Index b = a + 1; b < n; ++b) {
            bool bounded = false;
            for (Index c = 0; c < n && !bounded; ++c) bounded = p.leq(a, c) && p.leq(b, c);
            if (!bounded) out.push_back({A::Directed, {a, b}});
        }
    return out;
}

bool IndexSet::contains(Index i) const {
    if (is_finite()) return i < poset().size();
    return i >= nat().first;
}

bool IndexSet::leq(Index a, Index b) const {
    if (is_finite()) return poset().leq(a, b);
    return a <= b;
}

Index IndexSet::upper_bound(Index a, Index b) const {
    if (is_finite()) return poset().upper_bound(a, b);
    return std::max(a, b);
}

Index IndexSet::first() const { return is_finite() ? 0 : nat().first; }

std::vector<Index> IndexSet::elements(Index bound) const {
    std::vector<Index> out;
    if (is_finite()) {
        for (Index i = 0; i < poset().size(); ++i) out.push_back(i);
    } else {
        for (Index i = nat().first; i <= bound; ++i) out.push_back(i);
    }
    return out;
}

std::vector<Index> IndexSet::at_least(Index a, Index bound) const {
    std::vector<Index> out;
    if (is_finite()) {
        for (Index i = 0; i < poset().size(); ++i)
            if (poset().leq(a, i)) out.push_back(i);
    } else {
        for (Index i = a; i <= bound; ++i) out.push_back(i);
    }
    return out;
}

std::string IndexSet::label(Index i) const {
    if (is_finite() && i < poset().size()) return poset().label(i);
    return std::to_string(i);
}

IndexMap IndexMap::table(std::vector<Index> values) {
    IndexMap m;
    m.is_table_ = true;
    m.table_ = std::move(values);
    return m;
}

IndexMap IndexMap::affine(Index mul, Index add) {
    IndexMap m;
    m.mul_ = mul;
    m.add_ = add;
    return m;
}

Index IndexMap::operator()(Index i) const {
    if (is_table_) {
        if (i >= table_.size()) throw std::out_of_range("IndexMap: index outside table");
        return table_[i];
    }
    return mul_ * i + add_;
}

IndexMap IndexMap::after(const IndexMap& inner, const IndexSet& inner_domain) const {
    if (inner_domain.is_finite()) {
        std::vector<Index> values;
        for (Index i = 0; i < inner_domain.poset().size(); ++i) values.push_back((*this)(inner(i)));
        return table(std::move(values));
    }
    if (inner.is_table_) throw std::logic_error("IndexMap: table on an infinite domain");
    if (inner.mul_ == 0) return constant((*this)(inner.add_));
    if (is_table_) throw std::logic_error("IndexMap: cannot compose table after a non-constant chain map");
    return affine(mul_ * inner.mul_, mul_ * inner.add_ + add_);
}

std::vector<std::string> IndexMap::check(const IndexSet& domain, const IndexSet& codomain) const {
    std::vector<std::string> out;
    if (domain.is_finite()) {
        for (Index i = 0; i < domain.poset().size(); ++i) {
            if (is_table_ && i >= table_.size()) {
                out.push_back("index map undefined at " + domain.label(i));
                continue;
            }
            Index v = (*this)(i);
            if (!codomain.contains(v))
                out.push_back("index map sends " + domain.label(i) + " outside the codomain");
        }
        if (is_table_ && table_.size() > domain.poset().size())
            out.push_back("index map table longer than its domain");
    } else {
        if (is_table_) {
            out.push_back("table index map on the natural-number chain");
        } else if (codomain.is_finite()) {
            if (mul_ != 0) out.push_back("non-constant index map from the chain into a finite poset");
            else if (!codomain.contains(add_)) out.push_back("constant index map outside the codomain");
        } else if (mul_ * domain.nat().first + add_ < codomain.nat().first) {
            out.push_back("index map sends the first index below the codomain chain");
        }
    }
    return out;
}

std::string IndexMap::to_string() const {
    if (is_table_) {
        std::ostringstream out;
        out << '[';
        for (std::size_t i = 0; i < table_.size(); ++i) out << (i ? ", " : "") << table_[i];
        out << ']';
        return out.str();
    }
    if (mul_ == 0) return "const " + std::to_string(add_);
    std::string s = (mul_ == 1 ? std::string("n") : std::to_string(mul_) + "n");
    if (add_ != 0) s += " + " + std::to_string(add_);
    return s;
}

}  // namespace promov
