#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "gave/errors.hpp"
#include "gave/linalg.hpp"

namespace gave {

namespace {

constexpr double kPowerTol = 1e-10;
constexpr std::size_t kPowerCap = 100000;

// all-ones is exact for many structured matrices but can also be an exact
// non-dominant singular vector (constant row sums), so a seeded random start
// is always run as well
Vector start_vector(std::size_t n, int attempt) {
    Vector v(n, 1.0);
    if (attempt > 0) {
        std::mt19937_64 gen(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(attempt));
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (std::size_t i = 0; i < n; ++i) v[i] = dist(gen);
    }
    return (1.0 / norm2(v)) * v;
}

// Rayleigh quotient ||Uv||^2 from one start; stops on a small eigen-residual or
// once the (monotone) quotient stagnates
double power_estimate(const DenseMatrix& u, Vector v) {
    double lambda = 0.0;
    for (std::size_t it = 0; it < kPowerCap; ++it) {
        Vector w = u * v;
        double next = dot(w, w);
        Vector z = u.transpose_times(w);
        double zn = norm2(z);
        if (zn == 0.0 || next == 0.0) return std::sqrt(std::max(lambda, next));
        Vector r = z;
        axpy(-next, v, r);
        bool stalled = it > 20 && next - lambda <= 1e-15 * next;
        lambda = next;
        if (norm2(r) <= kPowerTol * lambda || stalled) break;
        v = (1.0 / zn) * std::move(z);
    }
    return std::sqrt(lambda);
}

}  // namespace

// Power iteration on U^T U; the larger of the two start estimates
double two_norm(const DenseMatrix& u) {
    if (u.max_abs() == 0.0) return 0.0;
    std::size_t n = u.cols();
    return std::max(power_estimate(u, start_vector(n, 0)), power_estimate(u, start_vector(n, 1)));
}

double spectral_radius(const DenseMatrix& u) {
    if (!u.is_square())
        throw NonSquare("spectral_radius needs a square matrix, got " + std::to_string(u.rows()) +
                        "x" + std::to_string(u.cols()));
    std::size_t n = u.rows();
    if (n == 1) return std::abs(u(0, 0));
    if (n == 2) {
        double tr = u(0, 0) + u(1, 1);
        double det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
        double disc = tr * tr - 4.0 * det;
        if (disc < 0.0) return std::sqrt(det);
        double s = std::sqrt(disc);
        return std::max(std::abs((tr + s) / 2.0), std::abs((tr - s) / 2.0));
    }
    if (!u.is_nonnegative())
        throw NegativeEntry("spectral_radius beyond 2x2 is only supported for nonnegative matrices");

    // (U + I) shares the Perron vector of U and is primitive on each
    // irreducible block, so the iteration cannot cycle.
    Vector x(n, 1.0);
    double prev = -1.0;
    for (std::size_t it = 0; it < kPowerCap; ++it) {
        Vector ux = u * x;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] <= 0.0) continue;
            double q = ux[i] / x[i];
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        if (hi == 0.0) return 0.0;
        if (hi - lo <= kPowerTol * hi) return 0.5 * (lo + hi);
        // reducible matrices can leave the Collatz-Wielandt bounds apart;
        // fall back to a stagnating norm-ratio estimate
        Vector next = ux + x;
        double scale = norm_inf(next);
        double est = scale / norm_inf(x) - 1.0;
        if (it > 50 && std::abs(est - prev) <= 1e-14 * std::max(1.0, est)) return est;
        prev = est;
        x = (1.0 / scale) * std::move(next);
    }
    throw NoConvergence("spectral_radius power iteration did not converge");
}

}  // namespace gave
