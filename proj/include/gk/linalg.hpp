#pragma once

// Small dense exact linear algebra over a field (Rational or Scalar):
// Gaussian elimination, kernel/image bases, consistent solves with a
// minimal-norm tie-break, all without rounding.

#include <optional>
#include <vector>

#include "gk/errors.hpp"
#include "gk/scalar.hpp"

namespace gk {

inline Rational conj(const Rational& r) { return r; }

template <class F>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, F(0)) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    F& operator()(int i, int j) { return a_[i * cols_ + j]; }
    const F& operator()(int i, int j) const { return a_[i * cols_ + j]; }

    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols_ != y.rows_) throw Error("matrix shape mismatch");
        Mat r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const F& v = x(i, k);
                if (v == F(0)) continue;
                for (int j = 0; j < y.cols_; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }
    friend Mat operator+(const Mat& x, const Mat& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw Error("matrix shape mismatch");
        Mat r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw Error("matrix shape mismatch");
        Mat r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
        return r;
    }
    Mat operator*(const F& c) const {
        Mat r = *this;
        for (auto& v : r.a_) v = v * c;
        return r;
    }
    Mat operator-() const { return *this * F(-1); }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!(v == F(0))) return false;
        return true;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    Mat conj_transpose() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = conj((*this)(i, j));
        return r;
    }

    std::vector<F> apply(const std::vector<F>& x) const {
        if ((int)x.size() != cols_) throw Error("matrix/vector shape mismatch");
        std::vector<F> r(rows_, F(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * x[j];
        return r;
    }

    Mat col(int j) const {
        Mat r(rows_, 1);
        for (int i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
        return r;
    }

    static Mat from_columns(const std::vector<std::vector<F>>& cols) {
        if (cols.empty()) return Mat(0, 0);
        Mat r((int)cols[0].size(), (int)cols.size());
        for (int j = 0; j < r.cols_; ++j)
            for (int i = 0; i < r.rows_; ++i) r(i, j) = cols[j][i];
        return r;
    }
    std::vector<std::vector<F>> columns() const {
        std::vector<std::vector<F>> out(cols_, std::vector<F>(rows_));
        for (int j = 0; j < cols_; ++j)
            for (int i = 0; i < rows_; ++i) out[j][i] = (*this)(i, j);
        return out;
    }

  private:
    int rows_, cols_;
    std::vector<F> a_;
};

// Row-reduces m in place; returns pivot column indices.
template <class F>
std::vector<int> rref(Mat<F>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!(m(i, c) == F(0))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        F inv = F(1) / m(r, c);
        for (int j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == F(0)) continue;
            F f = m(i, c);
            for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
int rank(Mat<F> m) {
    return (int)rref(m).size();
}

template <class F>
std::vector<std::vector<F>> kernel_basis(Mat<F> m) {
    int n = m.cols();
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<F> v(n, F(0));
        v[c] = F(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m((int)r, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Particular solution of A x = b, or nullopt if inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& A, const std::vector<F>& b) {
    if ((int)b.size() != A.rows()) throw Error("solve: shape mismatch");
    Mat<F> aug(A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
        aug(i, A.cols()) = b[i];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == A.cols()) return std::nullopt;
    std::vector<F> x(A.cols(), F(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug((int)r, A.cols());
    return x;
}

template <class F>
Mat<F> inverse(const Mat<F>& A) {
    if (A.rows() != A.cols()) throw Error("inverse: not square");
    int n = A.rows();
    Mat<F> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n + i) = F(1);
    }
    std::vector<int> pivots = rref(aug);
    if ((int)pivots.size() != n || pivots.back() >= n)
        throw Unsolvable("singular matrix");
    Mat<F> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// Hermitian inner product  u* G v  (G positive-definite Gram matrix).
template <class F>
F gram_ip(const std::vector<F>& u, const Mat<F>& G, const std::vector<F>& v) {
    F s(0);
    for (int i = 0; i < G.rows(); ++i)
        for (int j = 0; j < G.cols(); ++j) s += conj(u[i]) * G(i, j) * v[j];
    return s;
}

// Solution of A x = b with minimal Gram norm x* G x: the particular solution
// with its ker(A)-component removed. Returns nullopt when inconsistent.
template <class F>
std::optional<std::vector<F>> solve_min_norm(const Mat<F>& A,
                                             const std::vector<F>& b,
                                             const Mat<F>& G) {
    auto x0 = solve(A, b);
    if (!x0) return std::nullopt;
    auto ker = kernel_basis(A);
    if (ker.empty()) return x0;
    int k = (int)ker.size();
    Mat<F> M(k, k);  // K* G K
    std::vector<F> rhs(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) M(i, j) = gram_ip(ker[i], G, ker[j]);
        rhs[i] = gram_ip(ker[i], G, *x0);
    }
    auto c = solve(M, rhs);
    if (!c) throw Error("Gram system unexpectedly singular");
    for (int i = 0; i < k; ++i)
        for (size_t j = 0; j < x0->size(); ++j) (*x0)[j] -= (*c)[i] * ker[i][j];
    return x0;
}

// Gaussian elimination with Scalar pivots applied to right-hand sides in a
// module V over the Scalars (V needs +=, -=, scaling by Scalar, is_zero()).
// Returns a particular solution or nullopt when inconsistent.
template <class V>
std::optional<std::vector<V>> solve_module(Mat<Scalar> A, std::vector<V> b,
                                           const V& zero) {
    std::vector<int> pivot_of_row;
    int r = 0;
    for (int c = 0; c < A.cols() && r < A.rows(); ++c) {
        int p = -1;
        for (int i = r; i < A.rows(); ++i)
            if (!(A(i, c) == Scalar(0))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r) {
            for (int j = 0; j < A.cols(); ++j) std::swap(A(p, j), A(r, j));
            std::swap(b[p], b[r]);
        }
        Scalar inv = Scalar(1) / A(r, c);
        for (int j = c; j < A.cols(); ++j) A(r, j) *= inv;
        b[r] = b[r] * inv;
        for (int i = 0; i < A.rows(); ++i) {
            if (i == r || A(i, c) == Scalar(0)) continue;
            Scalar f = A(i, c);
            for (int j = c; j < A.cols(); ++j) A(i, j) -= f * A(r, j);
            b[i] -= b[r] * f;
        }
        pivot_of_row.push_back(c);
        ++r;
    }
    for (int i = r; i < A.rows(); ++i)
        if (!b[i].is_zero()) return std::nullopt;
    std::vector<V> x(A.cols(), zero);
    for (int i = 0; i < r; ++i) x[pivot_of_row[i]] = b[i];
    return x;
}

}  // namespace gk
