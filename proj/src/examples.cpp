#include "gave/examples.hpp"

namespace gave {

namespace {

DenseMatrix coupled(double diag, double s1, double s2) {
    return DenseMatrix::from_rows(
        {{diag, s1, s2, 0}, {s1, diag, 0, s2}, {s2, 0, diag, s1}, {0, s2, s1, diag}});
}

ComparisonExample assemble(std::string name, DenseMatrix M, double nscale, DenseMatrix B,
                           const Vector& xs, double q, double q1, double h, double theta,
                           MethodSpec other) {
    const std::size_t n = 4;
    DenseMatrix N = DenseMatrix::identity(n, nscale);
    ComparisonExample ex;
    ex.name = std::move(name);
    ex.problem = problem_with_solution(M - N, std::move(B), xs);
    ex.grms = make_grms_config(M, N, LinearOperator::identity(n, q), LinearOperator::identity(n, q1),
                               LinearOperator::identity(n, h), theta);
    ex.grms_spec.name = Method::GRMS;
    ex.grms_spec.params = {{"theta", theta}};
    ex.grms_spec.matrix_params = {{"M", M},
                                  {"Q", DenseMatrix::identity(n, q)},
                                  {"Q1", DenseMatrix::identity(n, q1)},
                                  {"H", DenseMatrix::identity(n, h)}};
    ex.other = std::move(other);
    return ex;
}

}  // namespace

ComparisonExample rms_comparison_example() {
    DenseMatrix M = coupled(8, -1.5, 1.5);
    MethodSpec rms{Method::RMS, {{"tau", 1.21}}, {{"M", M}}};
    return assemble("ex41", M, -0.125, coupled(2, -1.5, 1.5), Vector{-0.5, 0, -0.5, 0}, 0.98,
                    0.97, 0.01, 0.66, std::move(rms));
}

ComparisonExample mgsor_comparison_example() {
    MethodSpec mgsor{Method::MGSOR,
                     {{"alpha", 1.05}, {"beta", 1.07}},
                     {{"Q", DenseMatrix::identity(4, 0.982)}}};
    return assemble("ex42", coupled(24, -1, -1), 0.25, DenseMatrix::identity(4),
                    Vector{0.5, 0, 0.5, 0}, 0.982, 0.981, 0.01, 1.0, std::move(mgsor));
}

ComparisonExample nsor_comparison_example() {
    MethodSpec nsor{Method::NSOR, {{"omega", 1.1}, {"sigma", 0.98}}, {}};
    return assemble("ex43", coupled(4, -0.5, 0.5), 0.1, DenseMatrix::identity(4),
                    Vector{0.5, 0, 0.5, 0}, 0.99, 0.98, 0.01, 1.0, std::move(nsor));
}

}  // namespace gave
