#include "promov/intlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace promov {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("IntMatrix: entry count does not match shape");
    }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long v : r) entries_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& diag) {
    IntMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

IntVector IntMatrix::row(std::size_t i) const {
    return {entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

IntVector IntMatrix::col(std::size_t j) const {
    IntVector c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& v) { return v == 0; });
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && (*this)(i, j) != 0) return false;
    return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix product: shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Integer& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("IntMatrix * vector: shape mismatch");
    IntVector y(a.rows(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

std::string IntMatrix::to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) out << ", ";
        out << '[';
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out << ", ";
            out << (*this)(i, j).get_str();
        }
        out << ']';
    }
    out << ']';
    return out.str();
}

Integer determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Integer reduce_mod(const Integer& x, const Integer& m) {
    if (m == 0) return x;
    Integer r;
    Integer am = abs(m);
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), am.get_mpz_t());
    return r;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Position of the smallest nonzero |D(i,j)| with i, j >= t, row-major first.
std::optional<std::pair<std::size_t, std::size_t>> smallest_pivot(const IntMatrix& d, std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
            if (d(i, j) == 0) continue;
            Integer v = abs(d(i, j));
            if (!best || v < best_abs) {
                best = {i, j};
                best_abs = v;
            }
        }
    return best;
}

}  // namespace

IntVector SnfDecomposition::invariant_factors() const {
    IntVector out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
        if (D(i, i) != 0) out.push_back(D(i, i));
    return out;
}

SnfDecomposition snf(const IntMatrix& a) {
    SnfDecomposition s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
    IntMatrix& U = s.U;
    IntMatrix& D = s.D;
    IntMatrix& V = s.V;
    const std::size_t n = std::min(D.rows(), D.cols());

    for (std::size_t t = 0; t < n; ++t) {
        auto pivot = smallest_pivot(D, t);
        if (!pivot) break;
        D.swap_rows(t, pivot->first);
        U.swap_rows(t, pivot->first);
        D.swap_cols(t, pivot->second);
        V.swap_cols(t, pivot->second);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < D.rows(); ++i) {
                if (D(i, t) == 0) continue;
                Integer q = -floor_div(D(i, t), D(t, t));
                D.add_row_multiple(i, t, q);
                U.add_row_multiple(i, t, q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < D.cols(); ++j) {
                if (D(t, j) == 0) continue;
                Integer q = -floor_div(D(t, j), D(t, t));
                D.add_col_multiple(j, t, q);
                V.add_col_multiple(j, t, q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot survived; move it into place.
                std::size_t bi = t, bj = t;
                Integer best = abs(D(t, t));
                for (std::size_t i = t + 1; i < D.rows(); ++i)
                    if (D(i, t) != 0 && abs(D(i, t)) < best) {
                        best = abs(D(i, t));
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < D.cols(); ++j)
                    if (D(t, j) != 0 && abs(D(t, j)) < best) {
                        best = abs(D(t, j));
                        bi = t;
                        bj = j;
                    }
                D.swap_rows(t, bi);
                U.swap_rows(t, bi);
                D.swap_cols(t, bj);
                V.swap_cols(t, bj);
                continue;
            }
            // Row t and column t are clear; enforce divisibility of the rest.
            bool divisible = true;
            for (std::size_t i = t + 1; i < D.rows() && divisible; ++i)
                for (std::size_t j = t + 1; j < D.cols(); ++j)
                    if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                        D.add_row_multiple(t, i, 1);
                        U.add_row_multiple(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            U.negate_row(t);
        }
    }
    return s;
}

IntMatrix hermite_rows(const IntMatrix& a) {
    IntMatrix h = a;
    std::size_t row = 0;
    for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
        for (;;) {
            std::optional<std::size_t> best;
            for (std::size_t r = row; r < h.rows(); ++r)
                if (h(r, col) != 0 && (!best || abs(h(r, col)) < abs(h(*best, col)))) best = r;
            if (!best) break;
            h.swap_rows(row, *best);
            bool clean = true;
            for (std::size_t r = row + 1; r < h.rows(); ++r) {
                if (h(r, col) == 0) continue;
                h.add_row_multiple(r, row, -floor_div(h(r, col), h(row, col)));
                if (h(r, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(row, col) == 0) continue;
        if (h(row, col) < 0) h.negate_row(row);
        for (std::size_t r = 0; r < row; ++r)
            h.add_row_multiple(r, row, -floor_div(h(r, col), h(row, col)));
        ++row;
    }
    std::vector<Integer> kept(h.entries().begin(),
                              h.entries().begin() + static_cast<std::ptrdiff_t>(row * h.cols()));
    return IntMatrix(row, h.cols(), std::move(kept));
}

std::optional<IntVector> solve_congruence_system(const IntMatrix& a, const IntVector& b,
                                                 const IntVector& moduli) {
    if (b.size() != a.rows() || moduli.size() != a.rows()) {
        throw std::invalid_argument("solve_congruence_system: dimension mismatch");
    }
    const std::size_t n = a.cols();
    std::size_t extra = 0;
    for (const auto& m : moduli) {
        if (m < 0) throw std::invalid_argument("solve_congruence_system: negative modulus");
        if (m != 0) ++extra;
    }
    // A x + diag(m) y = b over the integers.
    IntMatrix full(a.rows(), n + extra);
    for (std::size_t i = 0, k = n; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) full(i, j) = a(i, j);
        if (moduli[i] != 0) full(i, k++) = moduli[i];
    }
    if (full.cols() == 0) {
        for (std::size_t i = 0; i < b.size(); ++i)
            if (reduce_mod(b[i], moduli[i]) != 0) return std::nullopt;
        return IntVector{};
    }
    SnfDecomposition s = snf(full);
    IntVector ub = s.U * b;
    IntVector w(full.cols(), Integer(0));
    for (std::size_t i = 0; i < ub.size(); ++i) {
        const Integer d = i < std::min(s.D.rows(), s.D.cols()) ? s.D(i, i) : Integer(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
            continue;
        }
        if (!mpz_divisible_p(ub[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
        Integer q;
        mpz_divexact(q.get_mpz_t(), ub[i].get_mpz_t(), d.get_mpz_t());
        w[i] = q;
    }
    IntVector z = s.V * w;
    z.resize(n);
    return z;
}

}  // namespace promov
