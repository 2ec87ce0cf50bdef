#pragma once

// Exact integer linear algebra over arbitrary-precision integers.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace promov {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static IntMatrix diagonal(const IntVector& diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Integer>& entries() const { return entries_; }

    IntVector row(std::size_t i) const;
    IntVector col(std::size_t j) const;

    IntMatrix transpose() const;
    bool is_zero() const;
    bool is_diagonal() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    void negate_row(std::size_t i);

    friend bool operator==(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> entries_;
};

IntVector operator*(const IntMatrix& a, const IntVector& x);

/// Determinant by fraction-free (Bareiss) elimination. Requires a square matrix.
Integer determinant(const IntMatrix& a);

/// U * A * V = D with U, V unimodular and D in Smith normal form.
struct SnfDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;

    /// Nonzero diagonal of D, in order (each divides the next).
    IntVector invariant_factors() const;
    std::size_t rank() const { return invariant_factors().size(); }
};

/// Smith normal form. Pivots are the smallest nonzero absolute value in the
/// remaining block, first in row-major scan order.
SnfDecomposition snf(const IntMatrix& a);

/// Row Hermite normal form of the lattice spanned by the rows of `a`: upper
/// echelon, positive pivots, entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped, so the result is the unique canonical basis.
IntMatrix hermite_rows(const IntMatrix& a);

/// Any x with (A x)_i == b_i (mod m_i), where m_i == 0 means exact equality.
/// Returns nullopt exactly when the system has no integer solution.
/// Throws std::invalid_argument on inconsistent dimensions.
std::optional<IntVector> solve_congruence_system(const IntMatrix& a, const IntVector& b,
                                                 const IntVector& moduli);

/// Floor-style remainder in [0, |m|) for m != 0; identity when m == 0.
Integer reduce_mod(const Integer& x, const Integer& m);

}  // namespace promov
