#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace gave {

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n, double fill = 0.0) : v_(n, fill) {}
    Vector(std::initializer_list<double> xs) : v_(xs) {}
    explicit Vector(std::vector<double> xs) : v_(std::move(xs)) {}

    std::size_t size() const { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }
    double& operator[](std::size_t i) { return v_[i]; }
    const double* data() const { return v_.data(); }
    double* data() { return v_.data(); }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }
    auto begin() { return v_.begin(); }
    auto end() { return v_.end(); }
    const std::vector<double>& values() const { return v_; }

    Vector& operator+=(const Vector& o);
    Vector& operator-=(const Vector& o);
    Vector& operator*=(double s);

    bool operator==(const Vector& o) const = default;

private:
    std::vector<double> v_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector a);
Vector operator-(Vector a);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double norm_inf(const Vector& v);
// y += a * x
void axpy(double a, const Vector& x, Vector& y);
Vector abs(const Vector& v);

// Row-major matrix with optional band structure. Entries outside
// [i - lower, i + upper] are structural zeros and are not stored; with full
// bandwidths the storage is plain row-major rows x cols.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);
    static DenseMatrix banded(std::size_t rows, std::size_t cols, std::size_t lower,
                              std::size_t upper);
    static DenseMatrix banded(std::size_t n, std::size_t lower, std::size_t upper) {
        return banded(n, n, lower, upper);
    }
    static DenseMatrix identity(std::size_t n, double scale = 1.0);
    static DenseMatrix diagonal(const Vector& d);
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static DenseMatrix from_row_major(std::size_t rows, std::size_t cols,
                                      const std::vector<double>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t lower_bandwidth() const { return kl_; }
    std::size_t upper_bandwidth() const { return ku_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_full() const { return kl_ + 1 >= rows_ && ku_ + 1 >= cols_; }
    bool empty() const { return rows_ == 0; }

    // stored column range [row_begin(i), row_end(i)) of row i
    std::size_t row_begin(std::size_t i) const { return i > kl_ ? i - kl_ : 0; }
    std::size_t row_end(std::size_t i) const { return i + ku_ + 1 < cols_ ? i + ku_ + 1 : cols_; }
    const double* row_data(std::size_t i) const { return data_.data() + offset_[i]; }
    double* row_data(std::size_t i) { return data_.data() + offset_[i]; }
    bool in_band(std::size_t i, std::size_t j) const {
        return j >= row_begin(i) && j < row_end(i);
    }

    double operator()(std::size_t i, std::size_t j) const {
        return in_band(i, j) ? data_[offset_[i] + (j - row_begin(i))] : 0.0;
    }
    // throws std::out_of_range outside the stored band
    double& at(std::size_t i, std::size_t j);

    DenseMatrix widened(std::size_t lower, std::size_t upper) const;
    DenseMatrix to_full() const { return widened(rows_, cols_); }
    DenseMatrix transpose() const;
    std::vector<double> row_major() const;
    double max_abs() const;
    bool is_nonnegative() const;

    Vector operator*(const Vector& x) const;
    // U^T x without forming the transpose
    Vector transpose_times(const Vector& x) const;
    DenseMatrix operator*(const DenseMatrix& o) const;
    DenseMatrix& operator*=(double s);

    // value equality, independent of the stored band
    bool operator==(const DenseMatrix& o) const;

private:
    void layout(std::size_t rows, std::size_t cols, std::size_t lower, std::size_t upper);

    std::size_t rows_ = 0, cols_ = 0, kl_ = 0, ku_ = 0;
    std::vector<std::size_t> offset_;
    std::vector<double> data_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix operator-(DenseMatrix a);

DenseMatrix abs(const DenseMatrix& u);
// componentwise U <= V
bool matrix_leq(const DenseMatrix& u, const DenseMatrix& v);

class LuFactorization {
public:
    explicit LuFactorization(const DenseMatrix& m);

    std::size_t dim() const { return n_; }
    Vector solve(const Vector& v) const;
    void solve_in_place(Vector& v) const;
    // column-by-column solve, dense result
    DenseMatrix solve(const DenseMatrix& rhs) const;
    DenseMatrix inverse() const;

    const DenseMatrix& factors() const { return lu_; }
    const std::vector<std::size_t>& pivots() const { return piv_; }

private:
    std::size_t n_ = 0, kl_ = 0;
    DenseMatrix lu_;
    std::vector<std::size_t> piv_;
};

inline constexpr double kPivotThreshold = 1e-14;

LuFactorization factorize(const DenseMatrix& m);
inline Vector solve(const LuFactorization& f, const Vector& v) { return f.solve(v); }

double two_norm(const DenseMatrix& u);
double spectral_radius(const DenseMatrix& u);

}  // namespace gave
