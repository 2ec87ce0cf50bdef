#include "promov/pointed.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace promov {

PointedFiniteSet::PointedFiniteSet(std::size_t n) : size(n) {
    if (n == 0) throw std::invalid_argument("PointedFiniteSet: a pointed set has at least the basepoint");
}

PointedMap::PointedMap(PointedFiniteSet source, PointedFiniteSet target, std::vector<std::size_t> images)
    : source_(source), target_(target), images_(std::move(images)) {
    if (images_.size() != source_.size)
        throw std::invalid_argument("PointedMap: expected " + std::to_string(source_.size) + " images, got " +
                                    std::to_string(images_.size()));
    if (images_[0] != 0) throw std::invalid_argument("PointedMap: basepoint must map to basepoint");
    for (std::size_t x = 0; x < images_.size(); ++x)
        if (images_[x] >= target_.size)
            throw std::invalid_argument("PointedMap: image of " + std::to_string(x) + " out of range");
}

PointedMap PointedMap::identity(PointedFiniteSet s) {
    std::vector<std::size_t> images(s.size);
    for (std::size_t x = 0; x < s.size; ++x) images[x] = x;
    return {s, s, std::move(images)};
}

PointedMap PointedMap::constant(PointedFiniteSet s, PointedFiniteSet t) {
    return {s, t, std::vector<std::size_t>(s.size, 0)};
}

PointedMap compose(const PointedMap& g, const PointedMap& f) {
    if (!(f.target() == g.source()))
        throw TypeMismatch("compose: target of f (" + std::to_string(f.target().size) +
                           " points) differs from source of g (" + std::to_string(g.source().size) + " points)");
    std::vector<std::size_t> images(f.source().size);
    for (std::size_t x = 0; x < images.size(); ++x) images[x] = g(f(x));
    return {f.source(), g.target(), std::move(images)};
}

bool morphisms_equal(const PointedMap& f, const PointedMap& g) {
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw TypeMismatch("morphisms_equal: different hom-sets");
    return f.images() == g.images();
}

PointedSubset image_subobject(const PointedMap& f) {
    std::vector<bool> hit(f.target().size, false);
    for (std::size_t y : f.images()) hit[y] = true;
    PointedSubset s{f.target(), {}};
    for (std::size_t y = 0; y < hit.size(); ++y)
        if (hit[y]) s.elements.push_back(y);
    return s;
}

bool subobjects_equal(const PointedSubset& a, const PointedSubset& b) {
    if (!(a.ambient == b.ambient)) throw TypeMismatch("subobjects_equal: different ambient sets");
    return a.elements == b.elements;
}

std::optional<PointedMap> solve_factorization(const FactorizationProblem<PointedFiniteSet, PointedMap>& problem) {
    const std::size_t n = problem.source.size;
    const std::size_t m = problem.target.size;
    // allowed[s][t]: may u(s) = t
    std::vector<std::vector<bool>> allowed(n, std::vector<bool>(m, true));
    for (std::size_t t = 1; t < m; ++t) allowed[0][t] = false;

    for (const auto& c : problem.constraints) {
        const PointedMap& L = c.known;
        const PointedMap& R = c.result;
        if (c.side == Side::Post) {
            // L ∘ u = R with u : source -> target, L : target -> Z
            if (!(L.source() == problem.target) || !(R.source() == problem.source) || !(R.target() == L.target()))
                throw TypeMismatch("solve_factorization: post-constraint has the wrong shape");
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t t = 0; t < m; ++t)
                    if (L(t) != R(s)) allowed[s][t] = false;
        } else {
            // u ∘ L = R with L : W -> source, R : W -> target
            if (!(L.target() == problem.source) || !(R.target() == problem.target) || !(R.source() == L.source()))
                throw TypeMismatch("solve_factorization: pre-constraint has the wrong shape");
            for (std::size_t w = 0; w < L.source().size; ++w) {
                const std::size_t s = L(w);
                for (std::size_t t = 0; t < m; ++t)
                    if (t != R(w)) allowed[s][t] = false;
            }
        }
    }

    std::vector<std::size_t> images(n);
    for (std::size_t s = 0; s < n; ++s) {
        auto it = std::find(allowed[s].begin(), allowed[s].end(), true);
        if (it == allowed[s].end()) return std::nullopt;
        images[s] = static_cast<std::size_t>(it - allowed[s].begin());
    }
    return PointedMap(problem.source, problem.target, std::move(images));
}

std::vector<PointedMap> enumerate_homs(const PointedFiniteSet& a, const PointedFiniteSet& b, std::size_t cap) {
    std::size_t count = 1;
    for (std::size_t i = 1; i < a.size; ++i) {
        if (count > cap / b.size)
            throw EnumerationCapExceeded("enumerate_homs: more than " + std::to_string(cap) + " maps");
        count *= b.size;
    }
    if (count > cap) throw EnumerationCapExceeded("enumerate_homs: more than " + std::to_string(cap) + " maps");

    std::vector<PointedMap> out;
    out.reserve(count);
    std::vector<std::size_t> images(a.size, 0);
    while (true) {
        out.emplace_back(a, b, images);
        // lexicographic successor, last point fastest
        std::size_t i = a.size;
        while (i > 1) {
            --i;
            if (++images[i] < b.size) break;
            images[i] = 0;
            if (i == 1) return out;
        }
        if (a.size <= 1) return out;
    }
}

bool PointedSetCategory::is_zero(const Morphism& f) {
    return std::all_of(f.images().begin(), f.images().end(), [](std::size_t y) { return y == 0; });
}

PointedSubset PointedSetCategory::image_of(const Morphism& f, const Subobject& s) {
    if (!(s.ambient == f.source())) throw TypeMismatch("image_of: subset lives in a different set");
    std::vector<bool> hit(f.target().size, false);
    for (std::size_t x : s.elements) hit[f(x)] = true;
    PointedSubset out{f.target(), {}};
    for (std::size_t y = 0; y < hit.size(); ++y)
        if (hit[y]) out.elements.push_back(y);
    return out;
}

PointedSubset PointedSetCategory::whole(const Object& a) {
    PointedSubset s{a, {}};
    for (std::size_t x = 0; x < a.size; ++x) s.elements.push_back(x);
    return s;
}

bool PointedSetCategory::contains(const Subobject& big, const Subobject& small) {
    if (!(big.ambient == small.ambient)) throw TypeMismatch("contains: different ambient sets");
    return std::includes(big.elements.begin(), big.elements.end(), small.elements.begin(), small.elements.end());
}

std::string PointedSetCategory::to_string(const Object& a) { return "P" + std::to_string(a.size); }

std::string PointedSetCategory::to_string(const Morphism& f) {
    std::ostringstream out;
    out << '[';
    for (std::size_t x = 0; x < f.images().size(); ++x) out << (x ? " " : "") << f(x);
    out << ']';
    return out.str();
}

std::string PointedSetCategory::to_string(const Subobject& s) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < s.elements.size(); ++i) out << (i ? "," : "") << s.elements[i];
    out << '}';
    return out.str();
}

}  // namespace promov
