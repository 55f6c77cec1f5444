#pragma once

// Test-side oracles. Everything here is written against plain std::vector
// storage so the checks do not route through the library's own LU or norms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "gave/linalg.hpp"
#include "gave/problem.hpp"

namespace oracle {

using Mat = std::vector<std::vector<double>>;
using Vec = std::vector<double>;

inline Mat zeros(std::size_t r, std::size_t c) { return Mat(r, Vec(c, 0.0)); }

inline Mat eye(std::size_t n, double s = 1.0) {
    Mat m = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = s;
    return m;
}

inline Mat from(const gave::DenseMatrix& a) {
    Mat m = zeros(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
    return m;
}

inline gave::DenseMatrix to_dense(const Mat& m) {
    gave::DenseMatrix d(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) d.at(i, j) = m[i][j];
    return d;
}

inline Vec from(const gave::Vector& v) { return Vec(v.begin(), v.end()); }
inline gave::Vector to_vec(const Vec& v) { return gave::Vector(v); }

inline Mat mul(const Mat& a, const Mat& b) {
    Mat c = zeros(a.size(), b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline Vec mul(const Mat& a, const Vec& x) {
    Vec y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

inline Mat transpose(const Mat& a) {
    Mat t = zeros(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline Mat add(const Mat& a, const Mat& b, double s = 1.0) {
    Mat c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += s * b[i][j];
    return c;
}

inline Mat scale(double s, Mat a) {
    for (auto& r : a)
        for (auto& v : r) v *= s;
    return a;
}

inline Vec axpby(double a, const Vec& x, double b, const Vec& y) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = a * x[i] + b * y[i];
    return z;
}

inline Vec vabs(Vec x) {
    for (auto& v : x) v = std::fabs(v);
    return x;
}

inline double nrm2(const Vec& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double max_diff(const Vec& a, const Vec& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

// Gauss-Jordan with full pivoting
inline Mat inverse(Mat a) {
    std::size_t n = a.size();
    Mat inv = eye(n);
    std::vector<std::size_t> colperm(n);
    for (std::size_t i = 0; i < n; ++i) colperm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k, pc = k;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (std::fabs(a[i][j]) > std::fabs(a[pr][pc])) pr = i, pc = j;
        if (a[pr][pc] == 0.0) throw std::runtime_error("oracle: singular");
        std::swap(a[k], a[pr]);
        std::swap(inv[k], inv[pr]);
        if (pc != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(a[i][k], a[i][pc]);
            std::swap(colperm[k], colperm[pc]);
        }
        double p = a[k][k];
        for (std::size_t j = 0; j < n; ++j) a[k][j] /= p, inv[k][j] /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0.0) continue;
            double f = a[i][k];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[k][j], inv[i][j] -= f * inv[k][j];
        }
    }
    // undo the column permutation: rows of inv belong to permuted unknowns
    Mat out = zeros(n, n);
    for (std::size_t k = 0; k < n; ++k) out[colperm[k]] = inv[k];
    return out;
}

// cyclic Jacobi; eigenvalues of a symmetric matrix
inline Vec sym_eigenvalues(Mat a) {
    std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                double th = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (th >= 0 ? 1.0 : -1.0) / (std::fabs(th) + std::sqrt(th * th + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    Vec ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
    return ev;
}

inline double norm2_jacobi(const Mat& u) {
    Vec ev = sym_eigenvalues(mul(transpose(u), u));
    return std::sqrt(std::max(0.0, *std::max_element(ev.begin(), ev.end())));
}

// characteristic polynomial det(lambda I - a) for n <= 3
inline std::function<double(double)> char_poly(const Mat& a) {
    std::size_t n = a.size();
    if (n == 1) return [=](double l) { return l - a[0][0]; };
    if (n == 2) {
        double tr = a[0][0] + a[1][1], det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        return [=](double l) { return l * l - tr * l + det; };
    }
    if (n != 3) throw std::runtime_error("oracle: char_poly needs n <= 3");
    double tr = a[0][0] + a[1][1] + a[2][2];
    double c1 = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0] +
                a[1][1] * a[2][2] - a[1][2] * a[2][1];
    double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                 a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                 a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    return [=](double l) { return ((l - tr) * l + c1) * l - det; };
}

// largest real root of p on [0, hi] where p(hi) > 0 and the root is a sign change:
// scan down, then bisect
inline double largest_root(const std::function<double(double)>& p, double hi) {
    const int steps = 200000;
    double h = hi / steps;
    double x = hi;
    while (x > 0.0 && p(x) > 0.0) x -= h;
    if (x <= 0.0) return 0.0;
    double lo = x, up = x + h;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + up);
        (p(mid) > 0.0 ? up : lo) = mid;
    }
    return 0.5 * (lo + up);
}

// determinant by partial-pivot elimination
inline double det(Mat a) {
    std::size_t n = a.size();
    double d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a[i][k]) > std::fabs(a[p][k])) p = i;
        if (a[p][k] == 0.0) return 0.0;
        if (p != k) std::swap(a[p], a[k]), d = -d;
        d *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return d;
}

// Perron root of a nonnegative matrix with a simple Perron root; char poly
// coefficients for n <= 3, determinant evaluation beyond
inline double perron_root(const Mat& a) {
    double hi = 0.0;
    for (const auto& r : a) {
        double s = 0.0;
        for (double v : r) s += v;
        hi = std::max(hi, s);
    }
    std::function<double(double)> p;
    if (a.size() <= 3) {
        p = char_poly(a);
    } else {
        p = [a](double l) { return det(add(eye(a.size(), l), a, -1.0)); };
    }
    return largest_root(p, hi * (1.0 + 1e-9) + 1e-12);
}

// top eigenvalue of a symmetric PSD n <= 3 matrix
inline double top_eigenvalue(const Mat& g) {
    double hi = 0.0;
    for (const auto& r : g) {
        double s = 0.0;
        for (double v : r) s += std::fabs(v);
        hi = std::max(hi, s);
    }
    return largest_root(char_poly(g), hi * (1.0 + 1e-9) + 1e-12);
}

inline Mat random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Mat m = zeros(r, c);
    for (auto& row : m)
        for (auto& v : row) v = u(rng);
    return m;
}

inline Vec random_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vec v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

// 6x6 GAVE with ||A^{-1}B|| < 0.9 (oracle 2-norm), b from a random x*
inline gave::GaveProblem random_problem(std::mt19937_64& rng, std::size_t n = 6,
                                        bool identity_B = false) {
    Mat A = random_matrix(rng, n, n, -1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) A[i][i] += (A[i][i] >= 0 ? 1.0 : -1.0) * (n + 1.0);
    Mat B = identity_B ? eye(n) : random_matrix(rng, n, n, -1.0, 1.0);
    double k = norm2_jacobi(mul(inverse(A), B));
    if (identity_B) {
        // ||A^{-1}|| < 0.9 by rescaling A
        std::uniform_real_distribution<double> u(1.15, 3.0);
        A = scale(k * u(rng), A);
    } else {
        std::uniform_real_distribution<double> u(0.2, 0.85);
        B = scale(u(rng) / k, B);
    }
    Vec xs = random_vec(rng, n, -1.0, 1.0);
    return gave::problem_with_solution(to_dense(A), to_dense(B), to_vec(xs));
}

}  // namespace oracle
