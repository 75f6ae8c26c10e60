#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dgp/common.hpp"
#include "dgp/number_field.hpp"
#include "dgp/rational.hpp"

namespace dgp {

/// Exact field scalar usable by the generic linear algebra.
template <class K>
concept FieldScalar = std::regular<K> && requires(const K a, const K b) {
    K(0);
    K(1);
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { a / b } -> std::convertible_to<K>;
};

/// Dense row-major matrix over an exact field. Zero-dimensional shapes are
/// first-class: 0 x n and n x 0 matrices behave per the usual conventions.
template <FieldScalar K>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, K(0)) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<K> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows_ * cols_)
            throw InternalError("Mat: entry count does not match shape");
    }
    /// Row-major initializer; all rows must have equal length.
    Mat(std::initializer_list<std::initializer_list<K>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        a_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw InternalError("Mat: ragged initializer");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }

    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const {
        for (const K& x : a_)
            if (!(x == K(0))) return false;
        return true;
    }
    bool is_identity() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!((*this)(i, j) == (i == j ? K(1) : K(0)))) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<K> row(std::size_t i) const {
        return std::vector<K>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    std::vector<K> col(std::size_t j) const {
        std::vector<K> c(rows_, K(0));
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap((*this)(i, c), (*this)(j, c));
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    friend Mat operator+(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw InternalError("Mat: shape mismatch in +");
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw InternalError("Mat: shape mismatch in -");
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
        return r;
    }
    Mat operator-() const {
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = K(0) - a_[i];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw InternalError("Mat: shape mismatch in *");
        Mat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const K& aik = a(i, k);
                if (aik == K(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r(i, j) = r(i, j) + aik * b(k, j);
            }
        return r;
    }
    friend Mat operator*(const K& c, const Mat& m) {
        Mat r(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.a_.size(); ++i) r.a_[i] = c * m.a_[i];
        return r;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<K> a_;
};

using QMat = Mat<Rational>;
using QVec = std::vector<Rational>;

template <FieldScalar K>
std::vector<K> mat_apply(const Mat<K>& m, const std::vector<K>& v) {
    if (v.size() != m.cols()) throw InternalError("apply: shape mismatch");
    std::vector<K> r(m.rows(), K(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] = r[i] + m(i, j) * v[j];
    return r;
}

/// Transpose; linear duality sends a map to its dual in the dual bases.
template <FieldScalar K>
Mat<K> dual(const Mat<K>& m) {
    return m.transpose();
}

/// Kronecker product in the basis (v_i (x) w_j) with the second index
/// fastest: (A(x)B)[(i*rB + k), (j*cB + l)] = A[i][j] * B[k][l].
template <FieldScalar K>
Mat<K> kron(const Mat<K>& a, const Mat<K>& b) {
    Mat<K> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const K& aij = a(i, j);
            if (aij == K(0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

/// Commutation matrix V(x)W -> W(x)V, e_i(x)f_j |-> f_j(x)e_i, where
/// dim V = n and dim W = m.
template <FieldScalar K>
Mat<K> swap_matrix(std::size_t n, std::size_t m) {
    Mat<K> s(n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) s(j * n + i, i * m + j) = K(1);
    return s;
}

template <FieldScalar K>
Mat<K> hstack(const Mat<K>& a, const Mat<K>& b) {
    if (a.rows() != b.rows()) throw InternalError("hstack: row mismatch");
    Mat<K> r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

template <FieldScalar K>
Mat<K> vstack(const Mat<K>& a, const Mat<K>& b) {
    if (a.cols() != b.cols()) throw InternalError("vstack: col mismatch");
    Mat<K> r(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
    return r;
}

/// Reduced row echelon form in place. Pivot columns are leftmost possible,
/// pivots are 1 with zeros above and below; returns pivot column indices.
/// Deterministic: first nonzero entry scanning rows top-down per column.
template <FieldScalar K>
std::vector<std::size_t> rref(Mat<K>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t sel = r;
        while (sel < m.rows() && m(sel, c) == K(0)) ++sel;
        if (sel == m.rows()) continue;
        m.swap_rows(r, sel);
        K p = m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) / p;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            K f = m(i, c);
            if (f == K(0)) continue;
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <FieldScalar K>
std::size_t rank(Mat<K> m) {
    return rref(m).size();
}

/// One solution of M x = rhs with free variables set to zero, or nullopt if
/// the system is inconsistent.
template <FieldScalar K>
std::optional<std::vector<K>> solve(const Mat<K>& m, const std::vector<K>& rhs) {
    if (rhs.size() != m.rows()) throw InternalError("solve: shape mismatch");
    Mat<K> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i];
    }
    std::vector<std::size_t> piv = rref(aug);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    std::vector<K> x(m.cols(), K(0));
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug(k, m.cols());
    return x;
}

/// Column-wise solve of M X = B with free variables set to zero; nullopt if
/// any column is inconsistent (bad_col, when given, receives the offending
/// column of B).
template <FieldScalar K>
std::optional<Mat<K>> solve_many(const Mat<K>& m, const Mat<K>& b,
                                 std::size_t* bad_col = nullptr) {
    if (b.rows() != m.rows()) throw InternalError("solve_many: shape mismatch");
    Mat<K> aug = hstack(m, b);
    std::vector<std::size_t> piv = rref(aug);
    for (std::size_t p : piv)
        if (p >= m.cols()) {
            if (bad_col) *bad_col = p - m.cols();
            return std::nullopt;
        }
    Mat<K> x(m.cols(), b.cols());
    for (std::size_t k = 0; k < piv.size(); ++k)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(piv[k], j) = aug(k, m.cols() + j);
    return x;
}

template <FieldScalar K>
std::optional<Mat<K>> inverse(const Mat<K>& m) {
    if (!m.is_square()) return std::nullopt;
    std::size_t n = m.rows();
    Mat<K> aug = hstack(m, Mat<K>::identity(n));
    std::vector<std::size_t> piv = rref(aug);
    if (piv.size() != n || (n > 0 && piv.back() != n - 1)) return std::nullopt;
    Mat<K> r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

/// Determinant by exact Gaussian elimination. det of the 0 x 0 matrix is 1.
template <FieldScalar K>
K det(Mat<K> m) {
    if (!m.is_square()) throw InternalError("det: matrix not square");
    K result(1);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::size_t sel = c;
        while (sel < m.rows() && m(sel, c) == K(0)) ++sel;
        if (sel == m.rows()) return K(0);
        if (sel != c) {
            m.swap_rows(c, sel);
            result = K(0) - result;
        }
        result = result * m(c, c);
        for (std::size_t i = c + 1; i < m.rows(); ++i) {
            if (m(i, c) == K(0)) continue;
            K f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = m(i, j) - f * m(c, j);
        }
    }
    return result;
}

/// Entrywise lift of a rational matrix into a larger coefficient field.
template <FieldScalar K>
Mat<K> lift(const QMat& m) {
    Mat<K> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = K(m(i, j));
    return r;
}

} // namespace dgp
