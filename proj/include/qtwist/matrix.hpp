// Dense matrices over an exact scalar ring, plus Gaussian elimination
// for the field cases (Rat, GaussRat). Everything is by-value and exact;
// sizes here are tiny (at most a few hundred rows), so no pivoting
// strategy beyond "first nonzero" is needed.
#pragma once

#include "qtwist/gauss.hpp"
#include "qtwist/rational.hpp"

#include <cassert>
#include <utility>
#include <vector>

namespace qtwist {

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Mat identity(int n, T one, T zero = T{}) {
        Mat m(n, n, zero);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }
    const T& operator()(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    Mat transpose() const {
        Mat r(cols_, rows_, zero_like());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    T trace() const {
        assert(rows_ == cols_);
        T s = zero_like();
        for (int i = 0; i < rows_; ++i) s = s + (*this)(i, i);
        return s;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        assert(x.rows_ == y.rows_ && x.cols_ == y.cols_);
        Mat r = x;
        for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = r.a_[k] + y.a_[k];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        assert(x.rows_ == y.rows_ && x.cols_ == y.cols_);
        Mat r = x;
        for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = r.a_[k] - y.a_[k];
        return r;
    }
    friend Mat operator-(const Mat& x) {
        Mat r = x;
        for (auto& v : r.a_) v = x.zero_like() - v;
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        assert(x.cols_ == y.rows_);
        Mat r(x.rows_, y.cols_, x.zero_like());
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const T& v = x(i, k);
                if (v == x.zero_like()) continue;
                for (int j = 0; j < y.cols_; ++j) r(i, j) = r(i, j) + v * y(k, j);
            }
        return r;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    // A zero of the scalar type; uses an existing entry so that types
    // whose zero needs context (e.g. polynomials in n variables) work too.
    T zero_like() const {
        if (a_.empty()) return T{};
        return a_[0] - a_[0];
    }

    bool all_zero() const {
        T z = zero_like();
        for (const auto& v : a_)
            if (!(v == z)) return false;
        return true;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> a_;
};

template <class T, class S>
Mat<T> scale(const S& s, const Mat<T>& m) {
    Mat<T> r = m;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = s * m(i, j);
    return r;
}

using RatMat = Mat<Rat>;
using GaussMat = Mat<GaussRat>;

// --- field linear algebra (T must support exact division and is_zero) ---

// In-place row reduction to reduced echelon form; returns pivot columns.
template <class T>
std::vector<int> rref(Mat<T>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int sel = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!is_zero(m(i, c))) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
        T inv_pivot = m(r, c);
        for (int j = 0; j < m.cols(); ++j) m(r, j) = m(r, j) / inv_pivot;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            T f = m(i, c);
            for (int j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
int rank(Mat<T> m) {
    return static_cast<int>(rref(m).size());
}

// Basis of the right kernel, one column per basis vector.
template <class T>
Mat<T> nullspace(Mat<T> m) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    int nfree = m.cols() - static_cast<int>(pivots.size());
    Mat<T> basis(m.cols(), nfree, m.zero_like());
    int k = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        basis(c, k) = T{1};
        for (size_t pi = 0; pi < pivots.size(); ++pi) {
            // row pi has its pivot at column pivots[pi]
            basis(pivots[pi], k) = m.zero_like() - m(static_cast<int>(pi), c);
        }
        ++k;
    }
    return basis;
}

template <class T>
Mat<T> inverse(const Mat<T>& m) {
    assert(m.rows() == m.cols());
    int n = m.rows();
    Mat<T> aug(n, 2 * n, m.zero_like());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = T{1};
    }
    std::vector<int> piv = rref(aug);
    if (static_cast<int>(piv.size()) != n || piv.back() != n - 1)
        throw std::domain_error("inverse: singular matrix");
    Mat<T> inv(n, n, m.zero_like());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// Horizontal/vertical concatenation helpers for subspace work.
template <class T>
Mat<T> hstack(const Mat<T>& x, const Mat<T>& y) {
    assert(x.rows() == y.rows());
    Mat<T> r(x.rows(), x.cols() + y.cols(), x.zero_like());
    for (int i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < x.cols(); ++j) r(i, j) = x(i, j);
        for (int j = 0; j < y.cols(); ++j) r(i, x.cols() + j) = y(i, j);
    }
    return r;
}

template <class T>
Mat<T> vstack(const Mat<T>& x, const Mat<T>& y) {
    assert(x.cols() == y.cols());
    Mat<T> r(x.rows() + y.rows(), x.cols(), x.zero_like());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r(i, j) = x(i, j);
    for (int i = 0; i < y.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r(x.rows() + i, j) = y(i, j);
    return r;
}

// col-span(x) == col-span(y), decided exactly by ranks.
template <class T>
bool same_column_span(const Mat<T>& x, const Mat<T>& y) {
    if (x.rows() != y.rows()) return false;
    int rx = rank(x);
    int ry = rank(y);
    if (rx != ry) return false;
    return rank(hstack(x, y)) == rx;
}

template <class T>
GaussMat complexify(const Mat<T>& m) {
    GaussMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = GaussRat(m(i, j));
    return r;
}

}  // namespace qtwist
