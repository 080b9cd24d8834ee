/// Dense exact linear algebra over the scalar field plus the numeric
/// helpers (Hermitian spectra, numeric kernels) backed by Eigen.  Exact
/// kernels of large sparse systems are split into connected components
/// first, so the rational-function elimination only ever sees small blocks.

#pragma once

#include "qinduct/ring.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <vector>

namespace qinduct {

template <class R>
class Mat {
public:
    Mat() = default;
    Mat(size_t r, size_t c) : rows_(r), cols_(c), d_(r * c, RingOps<R>::zero()) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    R& at(size_t i, size_t j) { return d_[i * cols_ + j]; }
    const R& at(size_t i, size_t j) const { return d_[i * cols_ + j]; }

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = RingOps<R>::one();
        return m;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat r(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                if (RingOps<R>::is_zero(a.at(i, k))) continue;
                for (size_t j = 0; j < b.cols_; ++j) {
                    if (RingOps<R>::is_zero(b.at(k, j))) continue;
                    r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
                }
            }
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat r(a.rows_, a.cols_);
        for (size_t i = 0; i < a.d_.size(); ++i) r.d_[i] = a.d_[i] - b.d_[i];
        return r;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (size_t i = 0; i < a.d_.size(); ++i)
            if (!(a.d_[i] == b.d_[i])) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& x : d_)
            if (!RingOps<R>::is_zero(x)) return false;
        return true;
    }

    Mat conj_transpose() const {
        Mat r(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = RingOps<R>::conj(at(i, j));
        return r;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<R> d_;
};

/// in-place reduced row echelon form; returns pivot columns
template <class R>
std::vector<size_t> rref(Mat<R>& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t sel = row;
        while (sel < m.rows() && RingOps<R>::is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        R piv_val = m.at(row, col);
        for (size_t j = 0; j < m.cols(); ++j)
            if (!RingOps<R>::is_zero(m.at(row, j))) m.at(row, j) = m.at(row, j) / piv_val;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || RingOps<R>::is_zero(m.at(i, col))) continue;
            R f = m.at(i, col);
            for (size_t j = 0; j < m.cols(); ++j)
                if (!RingOps<R>::is_zero(m.at(row, j)))
                    m.at(i, j) = m.at(i, j) - f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class R>
size_t rank(Mat<R> m) {
    return rref(m).size();
}

/// kernel basis (as columns of coefficients) of m x = 0
template <class R>
std::vector<std::vector<R>> kernel(Mat<R> m) {
    std::vector<size_t> piv = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : piv) is_pivot[c] = true;
    std::vector<std::vector<R>> basis;
    for (size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<R> v(m.cols(), RingOps<R>::zero());
        v[free] = RingOps<R>::one();
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class R>
Mat<R> inverse(const Mat<R>& m) {
    size_t n = m.rows();
    Mat<R> aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = RingOps<R>::one();
    }
    auto piv = rref(aug);
    if (piv.size() != n || piv[n - 1] != n - 1)
        throw DomainError("inverse: singular matrix");
    Mat<R> r(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
    return r;
}

/// sparse linear system rows (column index -> coefficient); kernel computed
/// per connected component of the row/column incidence graph
template <class R>
std::vector<std::vector<std::pair<int, R>>> sparse_kernel(
    const std::vector<std::vector<std::pair<int, R>>>& rows, int num_cols) {
    // union-find over columns
    std::vector<int> parent(num_cols);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& row : rows)
        for (size_t i = 1; i < row.size(); ++i) {
            int a = find(row[0].first), b = find(row[i].first);
            if (a != b) parent[a] = b;
        }
    std::vector<std::vector<int>> comp_cols(num_cols);
    for (int c = 0; c < num_cols; ++c) comp_cols[find(c)].push_back(c);

    std::vector<std::vector<const std::vector<std::pair<int, R>>*>> comp_rows(num_cols);
    for (const auto& row : rows)
        if (!row.empty()) comp_rows[find(row[0].first)].push_back(&row);

    std::vector<std::vector<std::pair<int, R>>> out;
    for (int rep = 0; rep < num_cols; ++rep) {
        const auto& cols = comp_cols[rep];
        if (cols.empty()) continue;
        const auto& rws = comp_rows[rep];
        if (rws.empty()) {
            for (int c : cols) out.push_back({{c, RingOps<R>::one()}});
            continue;
        }
        std::vector<int> col_pos(num_cols, -1);
        for (size_t i = 0; i < cols.size(); ++i) col_pos[cols[i]] = static_cast<int>(i);
        Mat<R> m(rws.size(), cols.size());
        for (size_t r = 0; r < rws.size(); ++r)
            for (const auto& [c, v] : *rws[r]) m.at(r, col_pos[c]) = m.at(r, col_pos[c]) + v;
        for (const auto& k : kernel(std::move(m))) {
            std::vector<std::pair<int, R>> vec;
            for (size_t i = 0; i < cols.size(); ++i)
                if (!RingOps<R>::is_zero(k[i])) vec.emplace_back(cols[i], k[i]);
            out.push_back(std::move(vec));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// numeric helpers
// ---------------------------------------------------------------------------

inline Eigen::MatrixXcd to_eigen(const Mat<Scalar>& m, const NumericContext& ctx) {
    Eigen::MatrixXcd r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m.at(i, j).eval(ctx);
    return r;
}

inline Eigen::MatrixXcd to_eigen(const Mat<Complex>& m) {
    Eigen::MatrixXcd r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m.at(i, j);
    return r;
}

/// smallest eigenvalue of the Hermitian part (matrix expected Hermitian)
inline double min_eigenvalue_hermitian(const Eigen::MatrixXcd& h) {
    if (h.rows() == 0) return 0.0;
    Eigen::MatrixXcd sym = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
    return es.eigenvalues().minCoeff();
}

inline double hermitian_defect(const Eigen::MatrixXcd& h) {
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace qinduct
