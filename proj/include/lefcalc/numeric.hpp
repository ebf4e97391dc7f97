#pragma once

// Exact integer/rational value types and a small dense integer matrix.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "lefcalc/error.hpp"

namespace lefcalc {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Int>;

inline IntVector make_vector(std::initializer_list<long long> xs) {
    IntVector v;
    v.reserve(xs.size());
    for (long long x : xs) v.emplace_back(x);
    return v;
}

inline Int dot(std::span<const Int> x, std::span<const Int> y) {
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline bool is_zero(std::span<const Int> x) {
    return std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
}

/// Exact rational as "p/q" (or "p" when integral). Never a decimal.
inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1) os << '/' << boost::multiprecision::denominator(q);
    return os.str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int den(s.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in rational '" + s + "'");
        return Rational(Int(s.substr(0, slash)), den);
    } catch (const std::runtime_error&) {
        throw InputError("malformed rational '" + s + "'");
    }
}

/// Dense row-major integer matrix.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw InputError("ragged matrix literal");
            for (long long x : r) data_.emplace_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw InputError("row length mismatch");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Int> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Int> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    IntVector row_vector(std::size_t r) const {
        auto s = row(r);
        return {s.begin(), s.end()};
    }
    IntVector col_vector(std::size_t c) const {
        IntVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    bool symmetric() const {
        if (!square()) return false;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r + 1; c < cols_; ++c)
                if ((*this)(r, c) != (*this)(c, r)) return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }
    // row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Int& k) {
        if (k == 0) return;
        for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
    }
    // col[dst] += k * col[src]
    void add_col(std::size_t dst, std::size_t src, const Int& k) {
        if (k == 0) return;
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
    }
    void negate_col(std::size_t c) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
    }

    bool operator==(const Matrix&) const = default;

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

    friend IntVector operator*(const Matrix& a, std::span<const Int> x) {
        if (a.cols_ != x.size()) throw InputError("matrix-vector dimension mismatch");
        IntVector y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) y[i] = dot(a.row(i), x);
        return y;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r ? ", [" : "[");
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? ", " : "") << m(r, c);
            os << ']';
        }
        return os << ']';
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// Fraction-free (Bareiss) determinant.
inline Int determinant(Matrix m) {
    if (!m.square()) throw InputError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

}  // namespace lefcalc
