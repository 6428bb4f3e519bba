#pragma once

// Fraction-exact dense linear algebra. Everything here is templated on the
// scalar of the input expression and intended for field scalars (Rational);
// no pivoting heuristics, the first nonzero entry is taken as pivot.

#include "fanforge/rational.hpp"

#include <optional>
#include <vector>

namespace fanforge {

template <typename Scalar>
struct Rref {
    Mat<Scalar> reduced;
    std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row, ascending

    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

template <typename Derived>
Rref<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
    using Scalar = typename Derived::Scalar;
    Rref<Scalar> out{input.eval(), {}};
    Mat<Scalar>& m = out.reduced;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index pivot = row;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row) m.row(pivot).swap(m.row(row));
        const Scalar inv = Scalar(1) / m(row, col);
        for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Scalar factor = m(i, col);
            for (Eigen::Index j = col; j < m.cols(); ++j) {
                if (m(row, j) != 0) m(i, j) -= factor * m(row, j);
            }
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
    return rref(m).rank();
}

/// Basis of the right kernel, one vector per column. Each basis vector has a 1
/// in its free coordinate, so the basis is canonical for a given matrix.
template <typename Derived>
Mat<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    const auto r = rref(m);
    const Eigen::Index n = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (auto p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Eigen::Index> free_cols;
    for (Eigen::Index j = 0; j < n; ++j)
        if (!is_pivot[static_cast<std::size_t>(j)]) free_cols.push_back(j);
    Mat<Scalar> basis = Mat<Scalar>::Zero(n, static_cast<Eigen::Index>(free_cols.size()));
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const Eigen::Index f = free_cols[k];
        const auto kk = static_cast<Eigen::Index>(k);
        basis(f, kk) = Scalar(1);
        for (std::size_t i = 0; i < r.pivots.size(); ++i) {
            basis(r.pivots[i], kk) = -r.reduced(static_cast<Eigen::Index>(i), f);
        }
    }
    return basis;
}

/// Some solution of m x = rhs (free variables set to zero), or nullopt if inconsistent.
template <typename DerivedA, typename DerivedB>
std::optional<Vec<typename DerivedA::Scalar>> solve(const Eigen::MatrixBase<DerivedA>& m,
                                                    const Eigen::MatrixBase<DerivedB>& rhs) {
    using Scalar = typename DerivedA::Scalar;
    Mat<Scalar> aug(m.rows(), m.cols() + 1);
    aug.leftCols(m.cols()) = m;
    aug.col(m.cols()) = rhs;
    const auto r = rref(aug);
    if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
    Vec<Scalar> x = Vec<Scalar>::Zero(m.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        x(r.pivots[i]) = r.reduced(static_cast<Eigen::Index>(i), m.cols());
    }
    return x;
}

/// Inverse of a square matrix, or nullopt when singular.
template <typename Derived>
std::optional<Mat<typename Derived::Scalar>> inverse(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = m.rows();
    if (m.cols() != n) return std::nullopt;
    if (n == 0) return Mat<Scalar>(0, 0);
    Mat<Scalar> aug(n, 2 * n);
    aug.leftCols(n) = m;
    aug.rightCols(n) = Mat<Scalar>::Identity(n, n);
    const auto r = rref(aug);
    if (r.rank() < n || r.pivots[static_cast<std::size_t>(n - 1)] >= n) return std::nullopt;
    return Mat<Scalar>(r.reduced.rightCols(n));
}

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
    using Scalar = typename Derived::Scalar;
    Mat<Scalar> m = input.eval();
    const Eigen::Index n = m.rows();
    Scalar det(1);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        while (pivot < n && m(pivot, col) == 0) ++pivot;
        if (pivot == n) return Scalar(0);
        if (pivot != col) {
            m.row(pivot).swap(m.row(col));
            det = -det;
        }
        det *= m(col, col);
        for (Eigen::Index i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            const Scalar factor = m(i, col) / m(col, col);
            for (Eigen::Index j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
        }
    }
    return det;
}

/// Rows of `m` selected by index, in the given order.
template <typename Derived>
Mat<typename Derived::Scalar> select_rows(const Eigen::MatrixBase<Derived>& m,
                                          const std::vector<int>& rows) {
    Mat<typename Derived::Scalar> out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
    return out;
}

/// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(static_cast<const std::vector<int>&>(idx));
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace fanforge
