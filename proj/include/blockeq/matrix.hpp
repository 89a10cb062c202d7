#pragma once

// Dense row-major matrices over exact rings (GMP integers and rationals).

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace blockeq {

using Integer = mpz_class;
using Rational = mpq_class;

template <typename T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("matrix: entry count does not match shape");
    }

    // Row-wise literal, e.g. {{1, 2}, {3, 4}}. All rows must have equal length.
    Matrix(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw std::invalid_argument("matrix: ragged initializer");
            for (long v : r) data_.emplace_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    static Matrix column(std::span<const T> values) {
        return Matrix(values.size(), 1, std::vector<T>(values.begin(), values.end()));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<T>& entries() const { return data_; }
    std::vector<T>& entries() { return data_; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw std::out_of_range("matrix: submatrix out of range");
        Matrix s(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
        return s;
    }

    // Rows and columns picked by index lists, in the given order.
    Matrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
        Matrix s(row_idx.size(), col_idx.size());
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j) s(i, j) = (*this)(row_idx[i], col_idx[j]);
        return s;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
            throw std::out_of_range("matrix: block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix col(std::size_t c) const { return submatrix(0, c, rows_, 1); }
    Matrix row(std::size_t r) const { return submatrix(r, 0, 1, cols_); }

    // Elementary operations used by the normal-form routines.
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    // row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const T& k) {
        if (k == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
    }
    // col[dst] += k * col[src]
    void add_col(std::size_t dst, std::size_t src, const T& k) {
        if (k == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }
    void negate_col(std::size_t c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a) {
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = -a.data_[k];
        return r;
    }
    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = s * a.data_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix: product dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        T tmp;
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    tmp = aik * b(k, j);
                    r(i, j) += tmp;
                }
            }
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (i) os << ',';
            os << '[';
            for (std::size_t j = 0; j < m.cols_; ++j) {
                if (j) os << ',';
                os << m(i, j);
            }
            os << ']';
        }
        return os << ']';
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& a) {
    RatMatrix r(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.entries().size(); ++k) r.entries()[k] = a.entries()[k];
    return r;
}

// Throws when some entry is not an integer.
inline IntMatrix to_integer(const RatMatrix& a) {
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        const Rational& q = a.entries()[k];
        if (q.get_den() != 1) throw std::domain_error("matrix: non-integral entry");
        r.entries()[k] = q.get_num();
    }
    return r;
}

// Block diagonal sum.
template <typename T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> r(a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

// [a | b]
template <typename T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("matrix: hconcat row mismatch");
    Matrix<T> r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

// [a ; b]
template <typename T>
Matrix<T> vconcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("matrix: vconcat column mismatch");
    Matrix<T> r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

// Compact byte encoding of an integer matrix, used as a hash key for search states.
// Two matrices have the same key iff they are equal.
inline void append_key(std::string& out, const Integer& v) {
    const int sgn = ::sgn(v);
    std::size_t count = 0;
    unsigned char buf[256];
    if (sgn == 0) {
        out.push_back(0);
        return;
    }
    const std::size_t bytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    if (bytes < sizeof(buf)) {
        mpz_export(buf, &count, 1, 1, 1, 0, v.get_mpz_t());
        out.push_back(static_cast<char>(sgn > 0 ? 1 : 2));
        out.push_back(static_cast<char>(count));
        out.append(reinterpret_cast<const char*>(buf), count);
    } else {
        std::vector<unsigned char> big(bytes);
        mpz_export(big.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
        out.push_back(static_cast<char>(sgn > 0 ? 3 : 4));
        const auto len = static_cast<std::uint32_t>(count);
        out.append(reinterpret_cast<const char*>(&len), sizeof(len));
        out.append(reinterpret_cast<const char*>(big.data()), count);
    }
}

// Reads one integer written by append_key starting at pos; advances pos.
inline Integer read_key(const std::string& in, std::size_t& pos) {
    Integer v;
    const auto tag = static_cast<unsigned char>(in[pos++]);
    if (tag == 0) return v;
    std::size_t count = 0;
    if (tag <= 2) {
        count = static_cast<unsigned char>(in[pos++]);
    } else {
        std::uint32_t len = 0;
        std::copy_n(in.data() + pos, sizeof(len), reinterpret_cast<char*>(&len));
        pos += sizeof(len);
        count = len;
    }
    mpz_import(v.get_mpz_t(), count, 1, 1, 1, 0, in.data() + pos);
    pos += count;
    if (tag == 2 || tag == 4) v = -v;
    return v;
}

inline std::string matrix_key(const IntMatrix& m) {
    std::string key;
    key.reserve(m.entries().size() * 3);
    for (const auto& v : m.entries()) append_key(key, v);
    return key;
}

}  // namespace blockeq
