#include "gave/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gave/errors.hpp"

namespace gave {

namespace {

void require_same_size(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("vector sizes " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
}

}  // namespace

Vector& Vector::operator+=(const Vector& o) {
    require_same_size(*this, o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& o) {
    require_same_size(*this, o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

Vector& Vector::operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector a) { return a *= s; }
Vector operator-(Vector a) { return a *= -1.0; }

double dot(const Vector& a, const Vector& b) {
    require_same_size(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double norm_inf(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void axpy(double a, const Vector& x, Vector& y) {
    require_same_size(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Vector abs(const Vector& v) {
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = std::abs(v[i]);
    return r;
}

void DenseMatrix::layout(std::size_t rows, std::size_t cols, std::size_t lower,
                         std::size_t upper) {
    if (rows == 0 || cols == 0) throw InvalidSize("matrix dimensions must be positive");
    rows_ = rows;
    cols_ = cols;
    kl_ = std::min(lower, rows - 1);
    ku_ = std::min(upper, cols - 1);
    offset_.resize(rows + 1);
    offset_[0] = 0;
    for (std::size_t i = 0; i < rows; ++i) offset_[i + 1] = offset_[i] + (row_end(i) - row_begin(i));
    data_.assign(offset_[rows], 0.0);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols) {
    layout(rows, cols, rows, cols);
}

DenseMatrix DenseMatrix::banded(std::size_t rows, std::size_t cols, std::size_t lower,
                                std::size_t upper) {
    DenseMatrix m;
    m.layout(rows, cols, lower, upper);
    return m;
}

DenseMatrix DenseMatrix::identity(std::size_t n, double scale) {
    DenseMatrix m = banded(n, 0, 0);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = scale;
    return m;
}

DenseMatrix DenseMatrix::diagonal(const Vector& d) {
    DenseMatrix m = banded(d.size(), 0, 0);
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<double> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw ShapeMismatch("ragged row list");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return from_row_major(r, c, entries);
}

DenseMatrix DenseMatrix::from_row_major(std::size_t rows, std::size_t cols,
                                        const std::vector<double>& entries) {
    if (entries.size() != rows * cols)
        throw ShapeMismatch("entry count does not match rows x cols");
    DenseMatrix m(rows, cols);
    m.data_ = entries;
    return m;
}

double& DenseMatrix::at(std::size_t i, std::size_t j) {
    if (i >= rows_ || !in_band(i, j))
        throw std::out_of_range("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                ") outside stored band");
    return data_[offset_[i] + (j - row_begin(i))];
}

DenseMatrix DenseMatrix::widened(std::size_t lower, std::size_t upper) const {
    DenseMatrix m = banded(rows_, cols_, std::max(lower, kl_), std::max(upper, ku_));
    for (std::size_t i = 0; i < rows_; ++i)
        std::copy(row_data(i), row_data(i) + (row_end(i) - row_begin(i)),
                  m.row_data(i) + (row_begin(i) - m.row_begin(i)));
    return m;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t = banded(cols_, rows_, ku_, kl_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = row_data(i);
        for (std::size_t j = row_begin(i); j < row_end(i); ++j) t.at(j, i) = r[j - row_begin(i)];
    }
    return t;
}

std::vector<double> DenseMatrix::row_major() const {
    if (is_full()) return data_;
    return to_full().data_;
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

bool DenseMatrix::is_nonnegative() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return x >= 0.0; });
}

Vector DenseMatrix::operator*(const Vector& x) const {
    if (x.size() != cols_)
        throw DimensionMismatch("matrix has " + std::to_string(cols_) + " columns, vector has " +
                                std::to_string(x.size()) + " entries");
    Vector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = row_data(i);
        const double* xv = x.data() + row_begin(i);
        std::size_t len = row_end(i) - row_begin(i);
        double s = 0.0;
        for (std::size_t k = 0; k < len; ++k) s += r[k] * xv[k];
        y[i] = s;
    }
    return y;
}

Vector DenseMatrix::transpose_times(const Vector& x) const {
    if (x.size() != rows_) throw DimensionMismatch("transpose product dimension mismatch");
    Vector y(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = row_data(i);
        double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t j = row_begin(i); j < row_end(i); ++j) y[j] += r[j - row_begin(i)] * xi;
    }
    return y;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& o) const {
    if (cols_ != o.rows_) throw ShapeMismatch("matrix product inner dimensions differ");
    DenseMatrix c = banded(rows_, o.cols_, kl_ + o.kl_, ku_ + o.ku_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* a = row_data(i);
        double* ci = c.row_data(i);
        std::size_t c0 = c.row_begin(i);
        for (std::size_t k = row_begin(i); k < row_end(i); ++k) {
            double aik = a[k - row_begin(i)];
            if (aik == 0.0) continue;
            const double* b = o.row_data(k);
            std::size_t b0 = o.row_begin(k), b1 = o.row_end(k);
            for (std::size_t j = b0; j < b1; ++j) ci[j - c0] += aik * b[j - b0];
        }
    }
    return c;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
}

bool DenseMatrix::operator==(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        std::size_t lo = std::min(row_begin(i), o.row_begin(i));
        std::size_t hi = std::max(row_end(i), o.row_end(i));
        for (std::size_t j = lo; j < hi; ++j)
            if ((*this)(i, j) != o(i, j)) return false;
    }
    return true;
}

namespace {

DenseMatrix combine(const DenseMatrix& a, const DenseMatrix& b, double sign) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("matrix sum of different shapes");
    DenseMatrix c = a.widened(b.lower_bandwidth(), b.upper_bandwidth());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        const double* r = b.row_data(i);
        double* ci = c.row_data(i);
        std::size_t c0 = c.row_begin(i);
        for (std::size_t j = b.row_begin(i); j < b.row_end(i); ++j)
            ci[j - c0] += sign * r[j - b.row_begin(i)];
    }
    return c;
}

}  // namespace

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) { return combine(a, b, 1.0); }
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) { return combine(a, b, -1.0); }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }
DenseMatrix operator-(DenseMatrix a) { return a *= -1.0; }

DenseMatrix abs(const DenseMatrix& u) {
    DenseMatrix r = u;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        double* row = r.row_data(i);
        for (std::size_t k = 0; k < r.row_end(i) - r.row_begin(i); ++k) row[k] = std::abs(row[k]);
    }
    return r;
}

bool matrix_leq(const DenseMatrix& u, const DenseMatrix& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols())
        throw ShapeMismatch("matrix_leq on different shapes");
    for (std::size_t i = 0; i < u.rows(); ++i) {
        std::size_t lo = std::min(u.row_begin(i), v.row_begin(i));
        std::size_t hi = std::max(u.row_end(i), v.row_end(i));
        for (std::size_t j = lo; j < hi; ++j)
            if (!(u(i, j) <= v(i, j))) return false;
    }
    return true;
}

}  // namespace gave
