#pragma once

#include <cassert>
#include <initializer_list>
#include <ostream>
#include <utility>

#include "tilehom/arith.hpp"

namespace tilehom {

/// Dense matrix over a GMP-backed ring (Int or Rat), row-major.
/// Zero rows and/or columns are legal; such matrices represent maps
/// to or from the zero module.
template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {
        assert(rows >= 0 && cols >= 0);
    }
    Mat(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = int(init.size());
        cols_ = rows_ ? int(init.begin()->size()) : 0;
        e_.reserve(size_t(rows_) * cols_);
        for (const auto& row : init) {
            assert(int(row.size()) == cols_);
            for (const auto& v : row) e_.push_back(v);
        }
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Mat zero(int r, int c) { return Mat(r, c); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return e_[size_t(i) * cols_ + j];
    }
    const T& operator()(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return e_[size_t(i) * cols_ + j];
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    /// Lexicographic order on (rows, cols, entries); used for canonical sorting.
    bool operator<(const Mat& o) const {
        if (rows_ != o.rows_) return rows_ < o.rows_;
        if (cols_ != o.cols_) return cols_ < o.cols_;
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] != o.e_[i]) return e_[i] < o.e_[i];
        return false;
    }

    Mat operator*(const Mat& o) const {
        assert(cols_ == o.rows_);
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& v : r.e_) v = -v;
        return r;
    }

    Mat transposed() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_zero() const {
        for (const auto& v : e_)
            if (v != 0) return false;
        return true;
    }

    std::vector<T> row(int i) const {
        std::vector<T> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    void set_row(int i, const std::vector<T>& r) {
        assert(int(r.size()) == cols_);
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
    }
    void swap_rows(int i, int j) {
        for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(int i, int j) {
        for (int r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }

    /// Rows of `below` appended under the rows of `*this` (same width).
    Mat stacked(const Mat& below) const {
        assert(cols_ == below.cols_ || rows_ == 0 || below.rows_ == 0);
        int c = rows_ ? cols_ : below.cols_;
        Mat r(rows_ + below.rows_, c);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (int i = 0; i < below.rows_; ++i)
            for (int j = 0; j < below.cols_; ++j) r(rows_ + i, j) = below(i, j);
        return r;
    }

    /// Columns of `right` appended after the columns of `*this` (same height).
    Mat augmented(const Mat& right) const {
        assert(rows_ == right.rows_ || cols_ == 0 || right.cols_ == 0);
        int rr = cols_ ? rows_ : right.rows_;
        Mat r(rr, cols_ + right.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (int i = 0; i < right.rows_; ++i)
            for (int j = 0; j < right.cols_; ++j) r(i, cols_ + j) = right(i, j);
        return r;
    }

    Mat submatrix(const std::vector<int>& rws, const std::vector<int>& cls) const {
        Mat r(int(rws.size()), int(cls.size()));
        for (size_t i = 0; i < rws.size(); ++i)
            for (size_t j = 0; j < cls.size(); ++j) r(int(i), int(j)) = (*this)(rws[i], cls[j]);
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Mat& m) {
        os << "[";
        for (int i = 0; i < m.rows_; ++i) {
            os << (i ? " [" : "[");
            for (int j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
            os << "]" << (i + 1 < m.rows_ ? "\n" : "");
        }
        return os << "]";
    }

private:
    int rows_, cols_;
    std::vector<T> e_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

inline RatMat to_rational(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

/// Clears denominators: returns (integer matrix, common denominator d) with m = result/d.
inline std::pair<IntMat, Int> clear_denominators(const RatMat& m) {
    Int d = 1;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) d = lcm(d, m(i, j).get_den());
    IntMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r(i, j) = m(i, j).get_num() * divexact(d, m(i, j).get_den());
    return {r, d};
}

/// Determinant by fraction-free (Bareiss-style via rational elimination kept simple).
template <typename T>
inline T det(const Mat<T>& m) {
    assert(m.rows() == m.cols());
    int n = m.rows();
    if (n == 0) return T(1);
    RatMat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Rat(m(i, j));
    Rat d(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (a(r, c) != 0) { piv = r; break; }
        if (piv < 0) return T(0);
        if (piv != c) { a.swap_rows(piv, c); d = -d; }
        d *= a(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            Rat f = a(r, c) / a(c, c);
            for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    if constexpr (std::is_same_v<T, Int>) {
        d.canonicalize();
        assert(d.get_den() == 1);
        return d.get_num();
    } else {
        return d;
    }
}

}  // namespace tilehom
