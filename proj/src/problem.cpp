#include "gave/problem.hpp"

#include <string>

#include "gave/errors.hpp"
#include "gave/matrix_market.hpp"

namespace gave {

GaveProblem make_problem(DenseMatrix A, DenseMatrix B, Vector b,
                         std::optional<Vector> known_solution) {
    if (!A.is_square()) throw NonSquare("A must be square");
    if (!B.is_square()) throw NonSquare("B must be square");
    std::size_t n = A.rows();
    if (B.rows() != n || b.size() != n)
        throw DimensionMismatch("A is " + std::to_string(n) + "x" + std::to_string(n) + ", B is " +
                                std::to_string(B.rows()) + "x" + std::to_string(B.cols()) +
                                ", b has " + std::to_string(b.size()) + " entries");
    if (known_solution && known_solution->size() != n)
        throw DimensionMismatch("known solution has the wrong length");
    return GaveProblem{std::move(A), std::move(B), std::move(b), std::move(known_solution)};
}

GaveProblem problem_with_solution(DenseMatrix A, DenseMatrix B, const Vector& x_star) {
    Vector b = A * x_star - B * abs(x_star);
    return make_problem(std::move(A), std::move(B), std::move(b), x_star);
}

ResidualReport residual(const GaveProblem& p, const Vector& x) {
    if (x.size() != p.dim())
        throw DimensionMismatch("residual: x has " + std::to_string(x.size()) +
                                " entries, problem has " + std::to_string(p.dim()));
    Vector r = p.A * x;
    r -= p.B * abs(x);
    r -= p.b;
    ResidualReport rep;
    rep.abs_res = norm2(r);
    double nb = norm2(p.b);
    rep.res = nb > 0.0 ? rep.abs_res / nb : rep.abs_res;
    return rep;
}

namespace {

// block-banded n x n matrix: diagonal blocks band(diag; inner...), off-diagonal
// blocks outer[k-1] * I at block distance k
DenseMatrix block_band(std::size_t m, std::size_t blocks, double diag,
                       const std::vector<double>& inner, const std::vector<double>& outer) {
    std::size_t n = m * blocks;
    std::size_t bw = outer.size() * m;
    DenseMatrix a = DenseMatrix::banded(n, bw, bw);
    for (std::size_t blk = 0; blk < blocks; ++blk) {
        std::size_t base = blk * m;
        for (std::size_t r = 0; r < m; ++r) {
            a.at(base + r, base + r) = diag;
            for (std::size_t k = 1; k <= inner.size() && r + k < m; ++k) {
                a.at(base + r, base + r + k) = inner[k - 1];
                a.at(base + r + k, base + r) = inner[k - 1];
            }
        }
        for (std::size_t k = 1; k <= outer.size() && blk + k < blocks; ++k)
            for (std::size_t r = 0; r < m; ++r) {
                a.at(base + r, base + k * m + r) = outer[k - 1];
                a.at(base + k * m + r, base + r) = outer[k - 1];
            }
    }
    return a;
}

}  // namespace

GaveProblem block_banded_problem(BlockCoupling kind, std::size_t m, std::size_t blocks) {
    if (m < 8 || blocks < 9)
        throw InvalidSize("block-banded problems need m >= 8 and blocks >= 9 (got m=" +
                          std::to_string(m) + ", blocks=" + std::to_string(blocks) + ")");
    std::size_t n = m * blocks;
    DenseMatrix A = block_band(m, blocks, 36.0, {-1.5, -0.5, -1.5}, {-1.5, -0.5, -1.5, -0.5}) +
                    DenseMatrix::identity(n, 0.2);
    DenseMatrix B;
    Vector xs(n);
    if (kind == BlockCoupling::Unit) {
        B = block_band(m, blocks, 3.0, {-1.0, -1.0, -1.0}, {-1.0, -1.0, -1.0, -1.0});
        for (std::size_t i = 0; i < n; ++i) xs[i] = i % 2 == 0 ? 0.5 : 1.0;
    } else {
        B = block_band(m, blocks, 16.0, {-0.5, -0.5, -0.5, -0.5}, {-0.5, -0.5, -0.5, -0.5});
        for (std::size_t i = 0; i < n; ++i) xs[i] = i % 2 == 0 ? -0.5 : 1.0;
    }
    return problem_with_solution(std::move(A), std::move(B), xs);
}

GaveProblem picard_norm_pair(int which) {
    DenseMatrix A, B;
    if (which == 1) {
        A = DenseMatrix::from_rows({{-10, 6}, {2, -95}});
        B = DenseMatrix::from_rows({{7, -9}, {8, 1}});
    } else if (which == 2) {
        A = DenseMatrix::from_rows({{12, -0.5}, {-0.5, 12}});
        B = DenseMatrix::from_rows({{7, -8}, {-6, -4}});
    } else {
        throw InvalidSize("picard pair must be 1 or 2");
    }
    return make_problem(std::move(A), std::move(B), Vector(2, 0.0));
}

GaveProblem load_problem(const std::string& path_A, const std::string& path_B,
                         const std::string& path_b) {
    return make_problem(read_matrix_market_file(path_A), read_matrix_market_file(path_B),
                        read_vector_market_file(path_b));
}

void save_problem(const GaveProblem& p, const std::string& path_A, const std::string& path_B,
                  const std::string& path_b) {
    write_matrix_market_file(path_A, p.A);
    write_matrix_market_file(path_B, p.B);
    write_vector_market_file(path_b, p.b);
}

}  // namespace gave
