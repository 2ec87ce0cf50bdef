#include "promov/abelian.hpp"

#include <sstream>
#include <stdexcept>

namespace promov {

FgAbelianObject::FgAbelianObject(IntVector factors) : factors_(std::move(factors)) {
    for (const auto& e : factors_)
        if (e < 0) throw std::invalid_argument("FgAbelianObject: negative factor " + e.get_str());
}

bool FgAbelianObject::is_finite() const {
    for (const auto& e : factors_)
        if (e == 0) return false;
    return true;
}

std::optional<Integer> FgAbelianObject::order() const {
    Integer n = 1;
    for (const auto& e : factors_) {
        if (e == 0) return std::nullopt;
        n *= e;
    }
    return n;
}

FgAbelianObject FgAbelianObject::canonical() const {
    if (factors_.empty()) return {};
    SnfDecomposition s = snf(IntMatrix::diagonal(factors_));
    IntVector out;
    std::size_t free = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Integer& d = s.D(i, i);
        if (d == 0) ++free;
        else if (d != 1) out.push_back(d);
    }
    for (std::size_t i = 0; i < free; ++i) out.emplace_back(0);
    return FgAbelianObject(std::move(out));
}

std::string FgAbelianObject::to_string() const {
    if (factors_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += " + ";
        s += factors_[i] == 0 ? std::string("Z") : "Z/" + factors_[i].get_str();
    }
    return s;
}

IntVector reduce_element(const FgAbelianObject& a, IntVector x) {
    if (x.size() != a.rank()) throw TypeMismatch("reduce_element: wrong number of coordinates");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = reduce_mod(x[i], a.factor(i));
    return x;
}

FgAbelianMorphism::FgAbelianMorphism(FgAbelianObject source, FgAbelianObject target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
        throw std::invalid_argument("FgAbelianMorphism: matrix is " + std::to_string(matrix_.rows()) + "x" +
                                    std::to_string(matrix_.cols()) + ", expected " +
                                    std::to_string(target_.rank()) + "x" + std::to_string(source_.rank()));
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
        for (std::size_t j = 0; j < matrix_.cols(); ++j) {
            Integer& v = matrix_(i, j);
            v = reduce_mod(v, target_.factor(i));
            const Integer& s = source_.factor(j);
            if (s != 0 && reduce_mod(s * v, target_.factor(i)) != 0)
                throw std::invalid_argument("FgAbelianMorphism: generator " + std::to_string(j) + " of order " +
                                            s.get_str() + " is sent to an element of a different order (row " +
                                            std::to_string(i) + ")");
        }
}

FgAbelianMorphism FgAbelianMorphism::identity(const FgAbelianObject& a) {
    return {a, a, IntMatrix::identity(a.rank())};
}

FgAbelianMorphism FgAbelianMorphism::zero(const FgAbelianObject& a, const FgAbelianObject& b) {
    return {a, b, IntMatrix(b.rank(), a.rank())};
}

IntVector FgAbelianMorphism::apply(const IntVector& x) const {
    if (x.size() != source_.rank()) throw TypeMismatch("apply: element has the wrong rank");
    return reduce_element(target_, matrix_ * x);
}

FgAbelianMorphism compose(const FgAbelianMorphism& g, const FgAbelianMorphism& f) {
    if (!(f.target() == g.source()))
        throw TypeMismatch("compose: target " + f.target().to_string() + " differs from source " +
                           g.source().to_string());
    return {f.source(), g.target(), g.matrix() * f.matrix()};
}

bool morphisms_equal(const FgAbelianMorphism& f, const FgAbelianMorphism& g) {
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw TypeMismatch("morphisms_equal: different hom-sets");
    return f.matrix() == g.matrix();
}

namespace {

IntMatrix stack_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw TypeMismatch("subgroup generator has the wrong rank");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<IntVector> relation_rows(const FgAbelianObject& a) {
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < a.rank(); ++i) {
        if (a.factor(i) == 0) continue;
        IntVector r(a.rank(), Integer(0));
        r[i] = a.factor(i);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace

AbelianSubgroup generated_subgroup(const FgAbelianObject& a, const std::vector<IntVector>& generators) {
    std::vector<IntVector> rows = relation_rows(a);
    rows.insert(rows.end(), generators.begin(), generators.end());
    return {a, hermite_rows(stack_rows(rows, a.rank()))};
}

AbelianSubgroup image_subobject(const FgAbelianMorphism& f) {
    std::vector<IntVector> gens;
    for (std::size_t j = 0; j < f.matrix().cols(); ++j) gens.push_back(f.matrix().col(j));
    return generated_subgroup(f.target(), gens);
}

AbelianSubgroup image_of(const FgAbelianMorphism& f, const AbelianSubgroup& h) {
    if (!(h.ambient == f.source())) throw TypeMismatch("image_of: subgroup lives in a different group");
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < h.basis.rows(); ++i) gens.push_back(f.matrix() * h.basis.row(i));
    return generated_subgroup(f.target(), gens);
}

bool subobjects_equal(const AbelianSubgroup& a, const AbelianSubgroup& b) {
    if (!(a.ambient == b.ambient)) throw TypeMismatch("subobjects_equal: different ambient groups");
    return a.basis == b.basis;
}

bool contains(const AbelianSubgroup& big, const AbelianSubgroup& small) {
    if (!(big.ambient == small.ambient)) throw TypeMismatch("contains: different ambient groups");
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < big.basis.rows(); ++i) rows.push_back(big.basis.row(i));
    for (std::size_t i = 0; i < small.basis.rows(); ++i) rows.push_back(small.basis.row(i));
    return hermite_rows(stack_rows(rows, big.ambient.rank())) == big.basis;
}

std::optional<FgAbelianMorphism> solve_factorization(
    const FactorizationProblem<FgAbelianObject, FgAbelianMorphism>& problem) {
    const FgAbelianObject& src = problem.source;
    const FgAbelianObject& tgt = problem.target;
    const std::size_t n = src.rank();
    const std::size_t m = tgt.rank();
    auto var = [n](std::size_t i, std::size_t j) { return i * n + j; };

    std::vector<IntVector> rows;
    IntVector rhs;
    IntVector moduli;
    auto add_row = [&](IntVector row, Integer b, Integer modulus) {
        rows.push_back(std::move(row));
        rhs.push_back(std::move(b));
        moduli.push_back(std::move(modulus));
    };

    // u must respect the relations of its source.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (src.factor(j) == 0) continue;
            IntVector row(m * n, Integer(0));
            row[var(i, j)] = src.factor(j);
            add_row(std::move(row), 0, tgt.factor(i));
        }

    for (const auto& c : problem.constraints) {
        const IntMatrix& L = c.known.matrix();
        const IntMatrix& R = c.result.matrix();
        if (c.side == Side::Post) {
            if (!(c.known.source() == tgt) || !(c.result.source() == src) ||
                !(c.result.target() == c.known.target()))
                throw TypeMismatch("solve_factorization: post-constraint has the wrong shape");
            const FgAbelianObject& z = c.known.target();
            for (std::size_t l = 0; l < z.rank(); ++l)
                for (std::size_t j = 0; j < n; ++j) {
                    IntVector row(m * n, Integer(0));
                    for (std::size_t i = 0; i < m; ++i) row[var(i, j)] = L(l, i);
                    add_row(std::move(row), R(l, j), z.factor(l));
                }
        } else {
            if (!(c.known.target() == src) || !(c.result.target() == tgt) ||
                !(c.result.source() == c.known.source()))
                throw TypeMismatch("solve_factorization: pre-constraint has the wrong shape");
            const std::size_t w = c.known.source().rank();
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t k = 0; k < w; ++k) {
                    IntVector row(m * n, Integer(0));
                    for (std::size_t j = 0; j < n; ++j) row[var(i, j)] = L(j, k);
                    add_row(std::move(row), R(i, k), tgt.factor(i));
                }
        }
    }

    IntMatrix a(rows.size(), m * n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < m * n; ++c) a(r, c) = rows[r][c];
    auto x = solve_congruence_system(a, rhs, moduli);
    if (!x) return std::nullopt;
    IntMatrix u(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) u(i, j) = (*x)[var(i, j)];
    return FgAbelianMorphism(src, tgt, std::move(u));
}

std::vector<FgAbelianMorphism> enumerate_homs(const FgAbelianObject& a, const FgAbelianObject& b,
                                              std::size_t cap) {
    const std::size_t n = a.rank();
    const std::size_t m = b.rank();
    // Allowed values per entry, row-major.
    std::vector<std::vector<Integer>> choices(m * n);
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto& opts = choices[i * n + j];
            const Integer& t = b.factor(i);
            const Integer& s = a.factor(j);
            if (t == 0) {
                if (s == 0) throw InfiniteObject("enumerate_homs: Hom(" + a.to_string() + ", " + b.to_string() +
                                                 ") is infinite");
                opts.emplace_back(0);
            } else {
                if (!t.fits_ulong_p() || t.get_ui() > cap)
                    throw EnumerationCapExceeded("enumerate_homs: target factor too large");
                for (unsigned long v = 0; v < t.get_ui(); ++v)
                    if (s == 0 || reduce_mod(s * v, t) == 0) opts.emplace_back(v);
            }
            if (total > cap / opts.size())
                throw EnumerationCapExceeded("enumerate_homs: more than " + std::to_string(cap) + " maps");
            total *= opts.size();
        }

    std::vector<FgAbelianMorphism> out;
    out.reserve(total);
    std::vector<std::size_t> pos(m * n, 0);
    for (std::size_t count = 0; count < total; ++count) {
        IntMatrix mat(m, n);
        for (std::size_t k = 0; k < m * n; ++k) mat(k / n, k % n) = choices[k][pos[k]];
        out.emplace_back(a, b, std::move(mat));
        for (std::size_t k = m * n; k-- > 0;) {
            if (++pos[k] < choices[k].size()) break;
            pos[k] = 0;
        }
    }
    return out;
}

std::size_t element_count(const FgAbelianObject& a) {
    auto order = a.order();
    if (!order) throw InfiniteObject("element_count: " + a.to_string() + " is infinite");
    if (!order->fits_ulong_p() || order->get_ui() > kHomEnumerationCap)
        throw EnumerationCapExceeded("element_count: " + a.to_string() + " is too large to enumerate");
    return order->get_ui();
}

std::size_t element_index(const FgAbelianObject& a, const IntVector& x) {
    IntVector r = reduce_element(a, x);
    std::size_t index = 0;
    std::size_t scale = 1;
    for (std::size_t i = 0; i < a.rank(); ++i) {
        index += r[i].get_ui() * scale;
        scale *= a.factor(i).get_ui();
    }
    return index;
}

IntVector element_at(const FgAbelianObject& a, std::size_t index) {
    IntVector x(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) {
        const std::size_t e = a.factor(i).get_ui();
        x[i] = static_cast<unsigned long>(index % e);
        index /= e;
    }
    return x;
}

PointedMap forget(const FgAbelianMorphism& f) {
    const std::size_t ns = element_count(f.source());
    const std::size_t nt = element_count(f.target());
    std::vector<std::size_t> images(ns);
    for (std::size_t x = 0; x < ns; ++x) images[x] = element_index(f.target(), f.apply(element_at(f.source(), x)));
    return {PointedFiniteSet(ns), PointedFiniteSet(nt), std::move(images)};
}

AbelianSubgroup AbelianCategory::whole(const Object& a) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < a.rank(); ++i) {
        IntVector e(a.rank(), Integer(0));
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    return generated_subgroup(a, gens);
}

std::string AbelianCategory::to_string(const Morphism& f) { return f.matrix().to_string(); }

std::string AbelianCategory::to_string(const Subobject& s) {
    std::ostringstream out;
    out << '<';
    for (std::size_t i = 0; i < s.basis.rows(); ++i) {
        if (i) out << ", ";
        out << '(';
        for (std::size_t j = 0; j < s.basis.cols(); ++j) out << (j ? "," : "") << s.basis(i, j).get_str();
        out << ')';
    }
    out << '>';
    return out.str();
}

}  // namespace promov
