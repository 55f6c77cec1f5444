#include <algorithm>
#include <cmath>
#include <string>

#include "gave/errors.hpp"
#include "gave/linalg.hpp"

namespace gave {

// Banded partial-pivoting LU in the style of LAPACK's gbtf2: row interchanges
// can push the upper bandwidth of U up to kl + ku, and `ju` tracks how far
// fill can actually have reached so untouched columns are skipped.
LuFactorization::LuFactorization(const DenseMatrix& m) {
    if (m.empty()) throw InvalidSize("cannot factorize an empty matrix");
    if (!m.is_square())
        throw NonSquare("factorize needs a square matrix, got " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
    n_ = m.rows();
    kl_ = m.lower_bandwidth();
    std::size_t ku = m.upper_bandwidth();
    lu_ = m.widened(kl_, kl_ + ku);
    piv_.resize(n_);

    std::vector<double> colmax(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = m.row_begin(i); j < m.row_end(i); ++j)
            colmax[j] = std::max(colmax[j], std::abs(m(i, j)));

    std::size_t ju = 0;
    for (std::size_t j = 0; j < n_; ++j) {
        std::size_t km = std::min(kl_, n_ - 1 - j);
        std::size_t p = j;
        double best = std::abs(lu_(j, j));
        for (std::size_t i = j + 1; i <= j + km; ++i) {
            double v = std::abs(lu_(i, j));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (colmax[j] == 0.0 || best < kPivotThreshold * colmax[j])
            throw SingularMatrix("pivot " + std::to_string(best) + " in column " +
                                 std::to_string(j) + " is below threshold");
        piv_[j] = p;
        ju = std::max(ju, std::min(j + ku + (p - j), n_ - 1));

        if (p != j)
            for (std::size_t c = j; c <= ju; ++c) std::swap(lu_.at(j, c), lu_.at(p, c));

        double pivot = lu_(j, j);
        const double* urow = lu_.row_data(j) + (j + 1 - lu_.row_begin(j));
        for (std::size_t i = j + 1; i <= j + km; ++i) {
            double& lij = lu_.at(i, j);
            if (lij == 0.0) continue;
            lij /= pivot;
            double l = lij;
            double* row = lu_.row_data(i) + (j + 1 - lu_.row_begin(i));
            for (std::size_t c = 0; c + j + 1 <= ju; ++c) row[c] -= l * urow[c];
        }
    }
}

void LuFactorization::solve_in_place(Vector& v) const {
    if (v.size() != n_)
        throw DimensionMismatch("solve: right-hand side has " + std::to_string(v.size()) +
                                " entries, factorization is " + std::to_string(n_));
    for (std::size_t j = 0; j < n_; ++j) {
        std::size_t p = piv_[j];
        if (p != j) std::swap(v[j], v[p]);
        double vj = v[j];
        if (vj == 0.0) continue;
        std::size_t km = std::min(kl_, n_ - 1 - j);
        for (std::size_t i = j + 1; i <= j + km; ++i) v[i] -= lu_(i, j) * vj;
    }
    for (std::size_t i = n_; i-- > 0;) {
        const double* row = lu_.row_data(i);
        std::size_t b = lu_.row_begin(i), e = lu_.row_end(i);
        double s = v[i];
        for (std::size_t c = i + 1; c < e; ++c) s -= row[c - b] * v[c];
        v[i] = s / row[i - b];
    }
}

Vector LuFactorization::solve(const Vector& v) const {
    Vector w = v;
    solve_in_place(w);
    return w;
}

// all right-hand sides at once, as row operations on a row-major copy
DenseMatrix LuFactorization::solve(const DenseMatrix& rhs) const {
    if (rhs.rows() != n_) throw DimensionMismatch("solve: right-hand side row count differs");
    DenseMatrix x = rhs.to_full();
    const std::size_t k = x.cols();
    if (k == 0) return x;
    for (std::size_t j = 0; j < n_; ++j) {
        std::size_t p = piv_[j];
        double* xj = x.row_data(j);
        if (p != j) std::swap_ranges(xj, xj + k, x.row_data(p));
        std::size_t km = std::min(kl_, n_ - 1 - j);
        for (std::size_t i = j + 1; i <= j + km; ++i) {
            double l = lu_(i, j);
            if (l == 0.0) continue;
            double* xi = x.row_data(i);
            for (std::size_t c = 0; c < k; ++c) xi[c] -= l * xj[c];
        }
    }
    for (std::size_t i = n_; i-- > 0;) {
        const double* row = lu_.row_data(i);
        std::size_t b = lu_.row_begin(i), e = lu_.row_end(i);
        double* xi = x.row_data(i);
        for (std::size_t c = i + 1; c < e; ++c) {
            double u = row[c - b];
            if (u == 0.0) continue;
            const double* xc = x.row_data(c);
            for (std::size_t t = 0; t < k; ++t) xi[t] -= u * xc[t];
        }
        double d = row[i - b];
        for (std::size_t t = 0; t < k; ++t) xi[t] /= d;
    }
    return x;
}

DenseMatrix LuFactorization::inverse() const { return solve(DenseMatrix::identity(n_)); }

LuFactorization factorize(const DenseMatrix& m) { return LuFactorization(m); }

}  // namespace gave
