#ifndef QHOM_MATRIX_HPP
#define QHOM_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace qhom {

template <class S>
using Vector = std::vector<S>;

/**
 * Dense row-major matrix over an exact field.
 *
 * Products skip zero entries, which keeps path-algebra data (mostly 0 and
 * +-1) cheap even though the storage is dense.
 */
template <class S>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}
    Matrix(std::initializer_list<std::initializer_list<S>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto &row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
            for (const auto &x : row) data_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }
    static Matrix from_columns(std::size_t rows, const std::vector<Vector<S>> &columns) {
        Matrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }
    static Matrix from_rows(std::size_t cols, const std::vector<Vector<S>> &rows) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    S &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<S> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const S> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    Vector<S> column(std::size_t j) const {
        Vector<S> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    Vector<S> row_vector(std::size_t i) const { return Vector<S>(row(i).begin(), row(i).end()); }

    bool is_zero() const {
        for (const auto &x : data_)
            if (!qhom::is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix &o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const S &a = (*this)(i, k);
                if (qhom::is_zero(a)) continue;
                auto orow = o.row(k);
                auto rrow = r.row(i);
                for (std::size_t j = 0; j < o.cols_; ++j)
                    if (!qhom::is_zero(orow[j])) rrow[j] += a * orow[j];
            }
        }
        return r;
    }

    Vector<S> operator*(const Vector<S> &v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
        Vector<S> r(rows_, S(0));
        for (std::size_t j = 0; j < cols_; ++j) {
            if (qhom::is_zero(v[j])) continue;
            for (std::size_t i = 0; i < rows_; ++i) {
                const S &a = (*this)(i, j);
                if (!qhom::is_zero(a)) r[i] += a * v[j];
            }
        }
        return r;
    }

    Matrix operator+(const Matrix &o) const {
        check_same(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k)
            if (!qhom::is_zero(o.data_[k])) r.data_[k] += o.data_[k];
        return r;
    }
    Matrix operator-(const Matrix &o) const {
        check_same(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k)
            if (!qhom::is_zero(o.data_[k])) r.data_[k] -= o.data_[k];
        return r;
    }
    Matrix scaled(const S &c) const {
        Matrix r = *this;
        for (auto &x : r.data_)
            if (!qhom::is_zero(x)) x *= c;
        return r;
    }
    Matrix &add_scaled(const Matrix &o, const S &c) {
        check_same(o);
        if (qhom::is_zero(c)) return *this;
        for (std::size_t k = 0; k < data_.size(); ++k)
            if (!qhom::is_zero(o.data_[k])) data_[k] += c * o.data_[k];
        return *this;
    }

    friend bool operator==(const Matrix &a, const Matrix &b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            if (!(a.data_[k] == b.data_[k])) return false;
        return true;
    }

    /// Columns [first, first + count).
    Matrix columns(std::size_t first, std::size_t count) const {
        Matrix r(rows_, count);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < count; ++j) r(i, j) = (*this)(i, first + j);
        return r;
    }
    Matrix select_rows(const std::vector<std::size_t> &idx) const {
        Matrix r(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
        return r;
    }
    Matrix select_columns(const std::vector<std::size_t> &idx) const {
        Matrix r(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
        return r;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix &b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).str();
            os << "]";
        }
        os << "]";
        return os.str();
    }

private:
    void check_same(const Matrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<S> data_;
};

template <class S>
Matrix<S> hstack(const Matrix<S> &a, const Matrix<S> &b) {
    if (a.rows() != b.rows() && a.cols() && b.cols()) throw std::invalid_argument("hstack row mismatch");
    std::size_t rows = a.cols() ? a.rows() : b.rows();
    Matrix<S> r(rows, a.cols() + b.cols());
    if (a.cols()) r.set_block(0, 0, a);
    if (b.cols()) r.set_block(0, a.cols(), b);
    return r;
}

template <class S>
Matrix<S> vstack(const Matrix<S> &a, const Matrix<S> &b) {
    if (a.cols() != b.cols() && a.rows() && b.rows()) throw std::invalid_argument("vstack column mismatch");
    std::size_t cols = a.rows() ? a.cols() : b.cols();
    Matrix<S> r(a.rows() + b.rows(), cols);
    if (a.rows()) r.set_block(0, 0, a);
    if (b.rows()) r.set_block(a.rows(), 0, b);
    return r;
}

template <class S>
Matrix<S> block_diagonal(const std::vector<Matrix<S>> &blocks) {
    std::size_t r = 0, c = 0;
    for (const auto &b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix<S> m(r, c);
    r = c = 0;
    for (const auto &b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

/// Kronecker product; index (i, k) of the result's rows is i * b.rows() + k.
template <class S>
Matrix<S> kron(const Matrix<S> &a, const Matrix<S> &b) {
    Matrix<S> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const S &x = a(i, j);
            if (is_zero(x)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (!is_zero(b(k, l))) r(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
    return r;
}

template <class S>
bool is_zero_vector(const Vector<S> &v) {
    for (const auto &x : v)
        if (!is_zero(x)) return false;
    return true;
}

template <class S>
Vector<S> unit_vector(std::size_t n, std::size_t i) {
    Vector<S> v(n, S(0));
    v[i] = S(1);
    return v;
}

}  // namespace qhom

#endif  // QHOM_MATRIX_HPP
