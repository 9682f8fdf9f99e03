#pragma once

// Small dense exact linear algebra used throughout: matrices over the
// radical field or over the rationals, Gaussian elimination, nullspaces,
// and an integer Hermite normal form for lattice comparisons.

#include <optional>
#include <stdexcept>
#include <vector>

#include "scalar.hpp"

namespace cox {

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Scalar> {
    static bool is_zero(const Scalar& x) { return x.is_zero(); }
    static Scalar inverse(const Scalar& x) { return x.inverse(); }
};

template <>
struct FieldTraits<Rational> {
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational inverse(const Rational& x) {
        if (x == 0) throw std::domain_error("Rational: division by zero");
        return 1 / x;
    }
};

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<T>& data() const { return a_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (FieldTraits<T>::is_zero(aik)) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    if (FieldTraits<T>::is_zero(b(k, j))) continue;
                    r(i, j) += aik * b(k, j);
                }
            }
        return r;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("Matrix: vector size");
        std::vector<T> r(rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                if (FieldTraits<T>::is_zero((*this)(i, j))) continue;
                r[i] += (*this)(i, j) * v[j];
            }
        return r;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

// Row echelon form in place; returns pivot column indices.
template <class T>
std::vector<int> row_reduce(Matrix<T>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int r = row; r < m.rows(); ++r)
            if (!FieldTraits<T>::is_zero(m(r, col))) {
                p = r;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        T inv = FieldTraits<T>::inverse(m(row, col));
        for (int c = 0; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || FieldTraits<T>::is_zero(m(r, col))) continue;
            T f = m(r, col);
            for (int c = 0; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
int rank(Matrix<T> m) {
    return static_cast<int>(row_reduce(m).size());
}

// Basis of the right nullspace {v : m v = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
    std::vector<int> pivots = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(m.cols());
        v[free] = T(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve m x = b; nullopt when inconsistent (any solution is returned).
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
    Matrix<T> aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[static_cast<size_t>(i)];
    }
    std::vector<int> pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<T> x(m.cols());
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), m.cols());
    return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("Matrix: not square");
    int n = m.rows();
    Matrix<T> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = T(1);
    }
    std::vector<int> pivots = row_reduce(aug);
    if (static_cast<int>(pivots.size()) != n || pivots[static_cast<size_t>(n) - 1] != n - 1)
        throw std::invalid_argument("Matrix: singular");
    Matrix<T> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

using Integer = mpz_class;

// Row-style Hermite normal form of the lattice spanned by the input rows.
// Returns the nonzero HNF rows.
inline std::vector<std::vector<Integer>> hermite_normal_form(std::vector<std::vector<Integer>> rows) {
    if (rows.empty()) return {};
    size_t cols = rows[0].size();
    size_t top = 0;
    for (size_t col = 0; col < cols && top < rows.size(); ++col) {
        // Euclidean elimination below `top` in this column
        for (;;) {
            size_t best = top;
            bool any = false;
            for (size_t r = top; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                if (!any || mpz_cmpabs(rows[r][col].get_mpz_t(), rows[best][col].get_mpz_t()) < 0 ||
                    rows[best][col] == 0)
                    best = r;
                any = true;
            }
            if (!any) break;
            std::swap(rows[top], rows[best]);
            bool reduced = true;
            for (size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                Integer q = rows[r][col] / rows[top][col]; // truncated division
                for (size_t c = 0; c < cols; ++c) rows[r][c] -= q * rows[top][c];
                if (rows[r][col] != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (rows[top][col] != 0) {
            if (rows[top][col] < 0)
                for (size_t c = 0; c < cols; ++c) rows[top][c] = -rows[top][c];
            // reduce the rows above
            for (size_t r = 0; r < top; ++r) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
                if (q != 0)
                    for (size_t c = 0; c < cols; ++c) rows[r][c] -= q * rows[top][c];
            }
            ++top;
        }
    }
    rows.resize(top);
    return rows;
}

// Index of the lattice spanned by `rows` inside Z^n; 0 when the span has
// rank < n.
inline Integer lattice_index(const std::vector<std::vector<Integer>>& rows, size_t n) {
    auto hnf = hermite_normal_form(rows);
    if (hnf.size() != n) return 0;
    Integer det = 1;
    size_t col = 0;
    for (size_t r = 0; r < n; ++r) {
        while (col < hnf[r].size() && hnf[r][col] == 0) ++col;
        if (col >= hnf[r].size()) return 0;
        det *= hnf[r][col];
        ++col;
    }
    return det;
}

} // namespace cox
