#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "sphtrop/qvector.hpp"

namespace sphtrop {

/// Dense rational matrix; doubles as a linear map from codomain-dim column
/// vectors (apply acts on the right: y = M x, domain dim = cols()).
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
        return m;
    }

    static Matrix from_rows(const std::vector<QVector>& rows) {
        if (rows.empty()) return Matrix(0, 0);
        Matrix m(rows.size(), rows[0].dim());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].dim() != m.cols_) throw DimensionMismatch("Matrix: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QVector row(std::size_t i) const {
        QVector r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }
    QVector col(std::size_t j) const {
        QVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    QVector apply(const QVector& x) const {
        if (x.dim() != cols_) throw DimensionMismatch("Matrix::apply: dimension mismatch");
        QVector y(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Rational acc;
            for (std::size_t j = 0; j < cols_; ++j) acc += at(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    /// this ∘ other, requires other.rows() == cols().
    Matrix compose(const Matrix& other) const {
        if (other.rows_ != cols_) throw DimensionMismatch("Matrix::compose: dimension mismatch");
        Matrix p(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < other.cols_; ++j)
                    p.at(i, j) += at(i, k) * other.at(k, j);
            }
        return p;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

/// Result of Gaussian elimination to reduced row echelon form.
struct Rref {
    std::vector<QVector> rows;   // nonzero rows, pivot entries normalized to 1
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return rows.size(); }
};

inline Rref rref(std::vector<QVector> rows) {
    Rref out;
    if (rows.empty()) return out;
    std::size_t dim = rows[0].dim();
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Rational inv = Rational(1) / rows[r][c];
        rows[r] = inv * rows[r];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            rows[i] = rows[i] - rows[i][c] * rows[r];
        }
        out.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

/// Canonical basis of a subspace spanned by the given vectors: reduced row
/// echelon rows rescaled to primitive integer vectors.
inline std::vector<QVector> canonical_subspace_basis(const std::vector<QVector>& gens) {
    Rref r = rref(gens);
    std::vector<QVector> rows;
    rows.reserve(r.rows.size());
    for (const auto& row : r.rows) rows.push_back(row.primitive_signless());
    return rows;
}

/// Reduce v modulo the row space of an rref basis: subtracts multiples of the
/// basis rows so the pivot coordinates of the result are zero.
inline QVector reduce_mod_subspace(const QVector& v, const Rref& basis) {
    QVector r = v;
    for (std::size_t i = 0; i < basis.rows.size(); ++i) {
        std::size_t p = basis.pivots[i];
        if (r[p].is_zero()) continue;
        r = r - (r[p] / basis.rows[i][p]) * basis.rows[i];
    }
    return r;
}

/// Matrix of the projection N -> N along the subspace onto the complement
/// where all pivot coordinates vanish.
inline Matrix quotient_projection(std::size_t dim, const std::vector<QVector>& subspace_gens) {
    Rref basis = rref(subspace_gens);
    Matrix p = Matrix::identity(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        QVector img = reduce_mod_subspace(unit_vector(dim, j), basis);
        for (std::size_t i = 0; i < dim; ++i) p.at(i, j) = img[i];
    }
    return p;
}

/// Solve M x = b exactly; nullopt when inconsistent. When the system is
/// underdetermined, free variables are set to zero.
inline std::optional<QVector> solve(const Matrix& m, const QVector& b) {
    if (b.dim() != m.rows()) throw DimensionMismatch("solve: rhs dimension mismatch");
    std::vector<QVector> aug;
    aug.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        QVector row(m.cols() + 1);
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
        row[m.cols()] = b[i];
        aug.push_back(std::move(row));
    }
    Rref r = rref(aug);
    QVector x(m.cols());
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (r.pivots[i] == m.cols()) return std::nullopt;  // row (0 ... 0 | 1)
        x[r.pivots[i]] = r.rows[i][m.cols()];
    }
    return x;
}

inline std::size_t rank_of(const std::vector<QVector>& rows) { return rref(rows).rank(); }

} // namespace sphtrop
