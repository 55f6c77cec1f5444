#include <doctest.h>

#include <random>

#include "gave/errors.hpp"
#include "gave/solver.hpp"
#include "support.hpp"

using namespace gave;
using oracle::Mat;
using oracle::Vec;

namespace {

struct Direct {
    std::vector<Vec> xs, ys;
};

// straight transcription of the two-step update with explicit inverses
Direct direct_grms(const GaveProblem& p, const Mat& M, const Mat& Q, const Mat& Q1, const Mat& H,
                   double th, Vec x, Vec y, int steps) {
    Mat A = oracle::from(p.A), B = oracle::from(p.B);
    Mat N = oracle::add(M, A, -1.0), Q2 = oracle::add(Q1, Q, -1.0);
    Mat Mi = oracle::inverse(M), Q1i = oracle::inverse(Q1);
    Vec b = oracle::from(p.b);
    Direct d;
    for (int k = 0; k < steps; ++k) {
        Vec rhs = oracle::axpby(1.0, oracle::mul(N, x), 1.0, oracle::mul(B, oracle::mul(Q, y)));
        rhs = oracle::axpby(1.0, rhs, 1.0, b);
        Vec xn = oracle::mul(Mi, rhs);
        Vec t = oracle::axpby(th, oracle::mul(Q2, y), th, oracle::vabs(xn));
        t = oracle::axpby(1.0, t, 1.0, oracle::mul(H, oracle::axpby(1.0, xn, -1.0, x)));
        y = oracle::axpby(1.0 - th, y, 1.0, oracle::mul(Q1i, t));
        x = xn;
        d.xs.push_back(x);
        d.ys.push_back(y);
    }
    return d;
}

StopRule fixed_steps(std::size_t k) {
    StopRule s;
    s.tol = 1e-300;
    s.max_iter = k;
    return s;
}

}  // namespace

TEST_CASE("solve_grms follows the two-step update iterate for iterate") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        GaveProblem p = oracle::random_problem(rng);
        std::size_t n = p.dim();
        Mat M = oracle::from(p.A);
        Mat pert = oracle::random_matrix(rng, n, n, -0.2, 0.2);
        M = oracle::add(M, pert);
        Mat Q = oracle::add(oracle::eye(n), oracle::random_matrix(rng, n, n, -0.05, 0.05));
        Mat Q1 = oracle::add(oracle::eye(n, 1.3), oracle::random_matrix(rng, n, n, -0.05, 0.05));
        Mat H = oracle::random_matrix(rng, n, n, -0.1, 0.1);
        double th = 0.6 + 0.1 * (trial % 5);
        Vec x0 = oracle::random_vec(rng, n, -1, 1), y0 = oracle::random_vec(rng, n, -1, 1);

        DenseMatrix Md = oracle::to_dense(M);
        GrmsConfig cfg = make_grms_config(Md, Md - p.A, oracle::to_dense(Q), oracle::to_dense(Q1),
                                          oracle::to_dense(H), th);
        SolveOptions opt;
        opt.keep_iterates = true;
        IterationOutcome out = solve_grms(p, cfg, oracle::to_vec(x0), oracle::to_vec(y0), fixed_steps(15), opt);
        Direct d = direct_grms(p, M, Q, Q1, H, th, x0, y0, 15);
        REQUIRE(out.x_iterates->size() == 16);
        for (int k = 0; k < 15; ++k) {
            CHECK(oracle::max_diff(oracle::from((*out.x_iterates)[k + 1]), d.xs[k]) <= 1e-12);
            CHECK(oracle::max_diff(oracle::from((*out.y_iterates)[k + 1]), d.ys[k]) <= 1e-12);
        }
    }
}

TEST_CASE("RMS embedding matches a direct RMS loop and NMS at tau = 1") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        GaveProblem p = oracle::random_problem(rng);
        std::size_t n = p.dim();
        Mat A = oracle::from(p.A), B = oracle::from(p.B);
        Mat M = oracle::add(A, oracle::random_matrix(rng, n, n, -0.2, 0.2));
        Mat N = oracle::add(M, A, -1.0), Mi = oracle::inverse(M);
        double tau = trial % 2 ? 1.0 : 0.7 + 0.05 * trial;
        double th = tau;
        Vec x0 = oracle::random_vec(rng, n, -1, 1);
        Vec y0 = oracle::vabs(x0);

        DenseMatrix Md = oracle::to_dense(M);
        GrmsConfig cfg = make_grms_config(Md, Md - p.A, LinearOperator::identity(n),
                                          LinearOperator::identity(n, th / tau), LinearOperator::zero(n), th);
        SolveOptions opt;
        opt.keep_iterates = true;
        IterationOutcome g = solve_grms(p, cfg, oracle::to_vec(x0), oracle::to_vec(y0), fixed_steps(12), opt);

        Vec x = x0, y = y0, b = oracle::from(p.b);
        for (int k = 0; k < 12; ++k) {
            Vec rhs = oracle::axpby(1.0, oracle::mul(N, x), 1.0, oracle::mul(B, y));
            x = oracle::mul(Mi, oracle::axpby(1.0, rhs, 1.0, b));
            y = oracle::axpby(1.0 - tau, y, tau, oracle::vabs(x));
            CHECK(oracle::max_diff(oracle::from((*g.x_iterates)[k + 1]), x) <= 1e-12);
        }

        if (tau == 1.0) {
            OneStepConfig nms{LinearOperator(Md), LinearOperator(Md - p.A), 0.0};
            IterationOutcome o = solve_one_step(p, nms, oracle::to_vec(x0), fixed_steps(12), opt);
            for (int k = 0; k <= 12; ++k)
                CHECK(oracle::max_diff(oracle::from((*o.x_iterates)[k]), oracle::from((*g.x_iterates)[k])) <= 1e-12);
        }
    }
}

TEST_CASE("one-step engine with momentum follows its direct loop") {
    std::mt19937_64 rng(23);
    GaveProblem p = oracle::random_problem(rng);
    std::size_t n = p.dim();
    Mat A = oracle::from(p.A), B = oracle::from(p.B);
    Mat W = oracle::eye(n, 2.0);
    Mat M1 = oracle::add(A, W), N1 = W, M1i = oracle::inverse(M1);
    double beta = 0.3;
    Vec x0 = oracle::random_vec(rng, n, -1, 1), b = oracle::from(p.b);
    OneStepConfig cfg{oracle::to_dense(M1), oracle::to_dense(N1), beta};
    SolveOptions opt;
    opt.keep_iterates = true;

    SUBCASE("zero-momentum first step") {
        IterationOutcome o = solve_one_step(p, cfg, oracle::to_vec(x0), fixed_steps(10), opt);
        Vec x = x0, prev = x0;
        for (int k = 0; k < 10; ++k) {
            Vec rhs = oracle::axpby(1.0, oracle::mul(N1, x), 1.0, oracle::mul(B, oracle::vabs(x)));
            rhs = oracle::axpby(1.0, rhs, beta, oracle::axpby(1.0, x, -1.0, prev));
            Vec xn = oracle::mul(M1i, oracle::axpby(1.0, rhs, 1.0, b));
            prev = x;
            x = xn;
            CHECK(oracle::max_diff(oracle::from((*o.x_iterates)[k + 1]), x) <= 1e-12);
        }
    }
    SUBCASE("bootstrap through y0") {
        Vec y0 = oracle::random_vec(rng, n, 0, 1);
        opt.bootstrap_y0 = oracle::to_vec(y0);
        IterationOutcome o = solve_one_step(p, cfg, oracle::to_vec(x0), fixed_steps(3), opt);
        Vec rhs = oracle::axpby(1.0, oracle::mul(N1, x0), 1.0, oracle::mul(B, y0));
        Vec x1 = oracle::mul(M1i, oracle::axpby(1.0, rhs, 1.0, b));
        CHECK(oracle::max_diff(oracle::from((*o.x_iterates)[1]), x1) <= 1e-12);
    }
}

TEST_CASE("converged runs satisfy the fixed-point equations") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        GaveProblem p = oracle::random_problem(rng);
        std::size_t n = p.dim();
        DenseMatrix M = p.A;
        GrmsConfig cfg = make_grms_config(M, M - p.A, LinearOperator::identity(n, 1.05),
                                          LinearOperator::identity(n, 1.0), LinearOperator::zero(n), 0.9);
        StopRule stop;
        stop.tol = 1e-10;
        IterationOutcome o = solve_grms(p, cfg, Vector(n), Vector(n), stop);
        REQUIRE(o.status == Status::Converged);
        CHECK(residual(p, o.x).res <= stop.tol);
        CHECK(o.res_history.back() <= stop.tol);
        CHECK(o.iterations == o.res_history.size());
        Vector qy = cfg.Q.apply(*o.y);
        CHECK(norm2(qy - abs(o.x)) <= 10 * stop.tol * std::max(1.0, norm2(o.x)));
        CHECK(norm2(o.x - *p.known_solution) <= 1e3 * stop.tol * norm2(*p.known_solution));
    }
}

TEST_CASE("runs are deterministic") {
    std::mt19937_64 rng(25);
    GaveProblem p = oracle::random_problem(rng);
    std::size_t n = p.dim();
    GrmsConfig cfg = make_grms_config(p.A, DenseMatrix(n, n), LinearOperator::identity(n),
                                      LinearOperator::identity(n, 1.1), LinearOperator::zero(n), 1.0);
    StopRule stop;
    IterationOutcome a = solve_grms(p, cfg, Vector(n, 0.3), Vector(n), stop);
    IterationOutcome b = solve_grms(p, cfg, Vector(n, 0.3), Vector(n), stop);
    CHECK(a.res_history == b.res_history);
    CHECK(a.x == b.x);
}

TEST_CASE("error trace is only available on traced runs") {
    std::mt19937_64 rng(26);
    GaveProblem p = oracle::random_problem(rng);
    std::size_t n = p.dim();
    OneStepConfig cfg{LinearOperator(p.A), LinearOperator(DenseMatrix(n, n)), 0.0};
    IterationOutcome plain = solve_one_step(p, cfg, Vector(n), StopRule{});
    CHECK_THROWS_AS(record_error_trace(plain), TraceUnavailable);
    SolveOptions opt;
    opt.trace = true;
    IterationOutcome traced = solve_one_step(p, cfg, Vector(n), StopRule{}, opt);
    CHECK(record_error_trace(traced).size() == traced.iterations);
}

TEST_CASE("status: diverged and iteration cap") {
    // x <- 3|x| + 1 grows geometrically
    GaveProblem p = make_problem(DenseMatrix::from_rows({{1}}), DenseMatrix::from_rows({{3}}), Vector{1});
    OneStepConfig picard{LinearOperator(p.A), LinearOperator(DenseMatrix(1, 1)), 0.0};
    IterationOutcome d = solve_one_step(p, picard, Vector{1}, StopRule{});
    CHECK(d.status == Status::Diverged);
    CHECK(d.iterations < 500);
    CHECK(d.res_history.back() > 1e10);

    GaveProblem q = make_problem(DenseMatrix::from_rows({{1}}), DenseMatrix::from_rows({{0.9}}), Vector{1});
    OneStepConfig slow{LinearOperator(q.A), LinearOperator(DenseMatrix(1, 1)), 0.0};
    StopRule few;
    few.max_iter = 5;
    IterationOutcome m = solve_one_step(q, slow, Vector{0}, few);
    CHECK(m.status == Status::MaxIterReached);
    CHECK(m.iterations == 5);
    CHECK(to_string(m.status) == "MaxIterReached");
}

TEST_CASE("configuration validation") {
    std::mt19937_64 rng(27);
    GaveProblem p = oracle::random_problem(rng);
    std::size_t n = p.dim();
    auto I = LinearOperator::identity(n);
    CHECK_THROWS_AS(solve_grms(p, make_grms_config(p.A, DenseMatrix(n, n), I, I, LinearOperator::zero(n), 0.0),
                               Vector(n), Vector(n), StopRule{}),
                    InvalidConfig);
    // A != M - N
    GrmsConfig bad = make_grms_config(p.A, DenseMatrix::identity(n), I, I, LinearOperator::zero(n), 1.0);
    CHECK_THROWS_AS(solve_grms(p, bad, Vector(n), Vector(n), StopRule{}), InvalidConfig);
    // Q != Q1 - Q2
    GrmsConfig good = make_grms_config(p.A, DenseMatrix(n, n), I, I, LinearOperator::zero(n), 1.0);
    GrmsConfig q = good;
    q.Q2 = LinearOperator::identity(n, 0.5);
    CHECK_THROWS_AS(solve_grms(p, q, Vector(n), Vector(n), StopRule{}), InvalidConfig);
    CHECK_THROWS_AS(solve_grms(p, good, Vector(n + 1), Vector(n), StopRule{}), DimensionMismatch);
    StopRule zero_tol;
    zero_tol.tol = 0.0;
    CHECK_THROWS_AS(solve_grms(p, good, Vector(n), Vector(n), zero_tol), InvalidConfig);
    GrmsConfig small = make_grms_config(DenseMatrix::identity(2), DenseMatrix::identity(2), I, I,
                                        LinearOperator::zero(n), 1.0);
    CHECK_THROWS_AS(solve_grms(p, small, Vector(n), Vector(n), StopRule{}), DimensionMismatch);
}
