#pragma once

#include <optional>
#include <string>

#include "gave/linalg.hpp"

namespace gave {

// Ax - B|x| = b
struct GaveProblem {
    DenseMatrix A;
    DenseMatrix B;
    Vector b;
    std::optional<Vector> known_solution;

    std::size_t dim() const { return b.size(); }
};

// checks shapes; throws NonSquare / DimensionMismatch
GaveProblem make_problem(DenseMatrix A, DenseMatrix B, Vector b,
                         std::optional<Vector> known_solution = std::nullopt);
// b = A x* - B|x*|
GaveProblem problem_with_solution(DenseMatrix A, DenseMatrix B, const Vector& x_star);

struct ResidualReport {
    double res = 0.0;      // relative to ||b||, or absolute when b = 0
    double abs_res = 0.0;
};

ResidualReport residual(const GaveProblem& p, const Vector& x);

// Block-banded test families on n = blocks * m unknowns. Both share
// A = blockband(S1; -1.5I, -0.5I, -1.5I, -0.5I) + I/5 with S1 = band(36; -1.5, -0.5, -1.5).
// Unit coupling:  B = blockband(band(3; -1, -1, -1); -I x4),       x* = (1/2, 1, 1/2, 1, ...)
// Half coupling:  B = blockband(band(16; -0.5 x4); -0.5I x4),      x* = (-1/2, 1, -1/2, 1, ...)
enum class BlockCoupling { Unit, Half };

GaveProblem block_banded_problem(BlockCoupling kind, std::size_t m, std::size_t blocks);

// 2x2 (A, B) pairs separating ||A^{-1}B|| < 1 from rho(|A^{-1}B|) < 1; b = 0
GaveProblem picard_norm_pair(int which);

GaveProblem load_problem(const std::string& path_A, const std::string& path_B,
                         const std::string& path_b);
void save_problem(const GaveProblem& p, const std::string& path_A, const std::string& path_B,
                  const std::string& path_b);

}  // namespace gave
