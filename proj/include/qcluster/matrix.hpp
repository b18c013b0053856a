#pragma once

#include "qcluster/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace qcluster {

using IntVec = std::vector<long>;
using QVec = std::vector<Rational>;

/// Dense row-major matrix with value semantics.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0)
    {
        Matrix m(rows.size(), rows.empty() ? cols : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("ragged matrix rows");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols_);
        }
        return m;
    }

    /// Columns given as vectors of equal length.
    static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows = 0)
    {
        Matrix m(cols.empty() ? rows : cols.front().size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_)
                throw std::invalid_argument("ragged matrix columns");
            for (std::size_t i = 0; i < m.rows_; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    T& at(std::size_t i, std::size_t j)
    {
        check(i, j);
        return (*this)(i, j);
    }
    const T& at(std::size_t i, std::size_t j) const
    {
        check(i, j);
        return (*this)(i, j);
    }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator-() const
    {
        Matrix m(*this);
        for (auto& x : m.data_)
            x = -x;
        return m;
    }

    Matrix& operator+=(const Matrix& o)
    {
        same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o)
    {
        same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x)
    {
        if (a.cols_ != x.size())
            throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<T> y(a.rows_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                y[i] += a(i, k) * x[k];
        return y;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
    }

    bool is_skew() const
    {
        if (rows_ != cols_)
            return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                if ((*this)(i, j) != -(*this)(j, i))
                    return false;
        return true;
    }

    template <class U, class F>
    Matrix<U> map(F f) const
    {
        Matrix<U> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = f((*this)(i, j));
        return m;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m)
    {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j ? "," : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

private:
    void check(std::size_t i, std::size_t j) const
    {
        if (i >= rows_ || j >= cols_)
            throw std::out_of_range("matrix index out of range");
    }
    void same_shape(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<long>;
using QMatrix = Matrix<Rational>;

inline QMatrix to_rational(const IntMatrix& m)
{
    return m.map<Rational>([](long x) { return Rational(x); });
}

inline QVec to_rational(const IntVec& v)
{
    return QVec(v.begin(), v.end());
}

/// Throws unless every entry is integral.
inline IntMatrix to_integer(const QMatrix& m)
{
    return m.map<long>([](const Rational& x) { return to_long(x); });
}

inline IntVec to_integer(const QVec& v)
{
    IntVec out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(to_long(x));
    return out;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot product length mismatch");
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/// x^T A y
template <class T>
T bilinear(const std::vector<T>& x, const Matrix<T>& a, const std::vector<T>& y)
{
    if (x.size() != a.rows() || y.size() != a.cols())
        throw std::invalid_argument("bilinear form shape mismatch");
    T s(0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (x[i] == 0)
            continue;
        T t(0);
        for (std::size_t j = 0; j < a.cols(); ++j)
            t += a(i, j) * y[j];
        s += x[i] * t;
    }
    return s;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(QMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(QMatrix m)
{
    return row_reduce(m).size();
}

enum class SolveStatus { inconsistent, unique, underdetermined };

struct SolveResult {
    SolveStatus status = SolveStatus::inconsistent;
    QVec x; // filled when unique
};

/// Exact solve of A x = b, possibly overdetermined.
inline SolveResult solve(const QMatrix& a, const QVec& b)
{
    if (b.size() != a.rows())
        throw std::invalid_argument("solve: right-hand side length mismatch");
    QMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const auto pivots = row_reduce(aug);
    SolveResult res;
    if (!pivots.empty() && pivots.back() == a.cols())
        return res;
    if (pivots.size() < a.cols()) {
        res.status = SolveStatus::underdetermined;
        return res;
    }
    res.status = SolveStatus::unique;
    res.x.assign(a.cols(), Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        res.x[pivots[r]] = aug(r, a.cols());
    return res;
}

inline std::optional<QMatrix> inverse(const QMatrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return QMatrix();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    const auto pivots = row_reduce(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
        return std::nullopt;
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

} // namespace qcluster
