#include <doctest.h>

#include <random>

#include "gave/analysis.hpp"
#include "gave/errors.hpp"
#include "gave/examples.hpp"
#include "support.hpp"

using namespace gave;

namespace {

double rho2(double t11, double t12, double t21, double t22) {
    double tr = t11 + t22, det = t11 * t22 - t12 * t21;
    return 0.5 * (tr + std::sqrt(tr * tr - 4 * det));
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

ConvergenceConstants sample(std::mt19937_64& rng, double& theta) {
    std::uniform_real_distribution<double> u(0.0, 2.0), t(1e-9, 2.0);
    ConvergenceConstants k{u(rng), u(rng), u(rng), u(rng), u(rng)};
    theta = t(rng);
    return k;
}

}  // namespace

TEST_CASE("example T matrices and spectral radii") {
    ComparisonExample e1 = rms_comparison_example();
    IterationMatrix2x2 t1 = build_T(constants(e1.problem, e1.grms), e1.grms.theta);
    CHECK(near(t1(0, 0), 0.0250, 5e-4));
    CHECK(near(t1(0, 1), 0.4455, 5e-4));
    CHECK(near(t1(1, 0), 0.0276, 5e-4));
    CHECK(near(t1(1, 1), 0.6545, 5e-4));
    CHECK(near(t1.rho, 0.6734, 5e-4));
    IterationMatrix2x2 r1 = build_comparison_matrix(MatrixKind::RMS, e1.other, e1.problem);
    CHECK(near(r1(0, 0), 0.0250, 5e-4));
    CHECK(near(r1(0, 1), 0.4545, 5e-4));
    CHECK(near(r1(1, 0), 0.0302, 5e-4));
    CHECK(near(r1(1, 1), 0.7600, 5e-4));
    CHECK(near(r1.rho, 0.7783, 5e-4));

    ComparisonExample e2 = mgsor_comparison_example();
    CHECK(near(build_T(constants(e2.problem, e2.grms), e2.grms.theta).rho, 0.0651, 5e-4));
    CHECK(near(build_comparison_matrix(MatrixKind::MGSOR, e2.other, e2.problem).rho, 0.1480, 5e-4));

    ComparisonExample e3 = nsor_comparison_example();
    CHECK(near(build_T(constants(e3.problem, e3.grms), e3.grms.theta).rho, 0.3914, 5e-4));
    IterationMatrix2x2 r3 = build_comparison_matrix(MatrixKind::NSOR, e3.other, e3.problem);
    CHECK(near(r3.rho, 0.9544, 5e-4));
    CHECK(near(r3(0, 0), 0.1000, 5e-4));
    CHECK(near(r3(0, 1), 0.3793, 5e-4));
    CHECK(near(r3(1, 1), 0.6605, 5e-4));

    for (const auto& e : {e1, e2, e3}) {
        CHECK(e.problem.dim() == 4);
        CHECK(residual(e.problem, *e.problem.known_solution).abs_res <= 1e-12);
    }
}

TEST_CASE("constants are the stated operator norms") {
    std::mt19937_64 rng(31);
    GaveProblem p = oracle::random_problem(rng);
    std::size_t n = p.dim();
    oracle::Mat A = oracle::from(p.A), B = oracle::from(p.B);
    oracle::Mat M = oracle::add(A, oracle::random_matrix(rng, n, n, -0.3, 0.3));
    oracle::Mat Q = oracle::add(oracle::eye(n), oracle::random_matrix(rng, n, n, -0.1, 0.1));
    oracle::Mat Q1 = oracle::add(oracle::eye(n, 1.5), oracle::random_matrix(rng, n, n, -0.1, 0.1));
    oracle::Mat H = oracle::random_matrix(rng, n, n, -0.2, 0.2);
    oracle::Mat Mi = oracle::inverse(M), Q1i = oracle::inverse(Q1);
    GrmsConfig cfg = make_grms_config(oracle::to_dense(M), oracle::to_dense(oracle::add(M, A, -1.0)),
                                      oracle::to_dense(Q), oracle::to_dense(Q1), oracle::to_dense(H), 0.8);
    ConvergenceConstants k = constants(p, cfg);
    using oracle::mul;
    using oracle::norm2_jacobi;
    CHECK(k.a == doctest::Approx(norm2_jacobi(mul(Mi, oracle::add(M, A, -1.0)))).epsilon(1e-10));
    CHECK(k.c == doctest::Approx(norm2_jacobi(mul(Mi, mul(B, Q)))).epsilon(1e-10));
    CHECK(k.d == doctest::Approx(norm2_jacobi(mul(Q1i, oracle::add(Q1, Q, -1.0)))).epsilon(1e-10));
    CHECK(k.alpha == doctest::Approx(norm2_jacobi(Q1i)).epsilon(1e-10));
    CHECK(k.beta == doctest::Approx(norm2_jacobi(mul(Q1i, H))).epsilon(1e-10));

    GrmsConfig plain = make_grms_config(p.A, DenseMatrix(n, n), LinearOperator::identity(n),
                                        LinearOperator::identity(n), LinearOperator::zero(n), 1.0);
    ConvergenceConstants z = constants(p, plain);
    CHECK(z.a == 0.0);
    CHECK(z.beta == 0.0);
    CHECK(z.d == 0.0);
}

TEST_CASE("build_T entries and closed-form radius") {
    IterationMatrix2x2 zero = build_T({0, 0, 0, 0.7, 0}, 1.0);
    for (double v : zero.entries) CHECK(v == 0.0);
    CHECK(zero.rho == 0.0);

    ConvergenceConstants k{0.2, 0.3, 0.1, 1.2, 0.05};
    double th = 0.8;
    IterationMatrix2x2 t = build_T(k, th);
    double s = th * k.alpha + k.beta;
    CHECK(t(0, 0) == k.a);
    CHECK(t(0, 1) == k.c);
    CHECK(t(1, 0) == doctest::Approx(k.a * s + k.beta));
    CHECK(t(1, 1) == doctest::Approx(k.c * s + th * k.d + std::fabs(1 - th)));
    CHECK(t.rho == doctest::Approx(rho2(t(0, 0), t(0, 1), t(1, 0), t(1, 1))));
    CHECK(t.kind == MatrixKind::GRMS);
}

TEST_CASE("GRMS conditions: reductions and Young-lemma sampling") {
    // a = d = beta = 0, alpha = 1, theta = 1 reduces to c < 1
    CHECK(check_grms_conditions({0, 0.5, 0, 1, 0}, 1.0).satisfied);
    CHECK_FALSE(check_grms_conditions({0, 1.0, 0, 1, 0}, 1.0).satisfied);

    std::mt19937_64 rng(32);
    int satisfied = 0, bad = 0;
    for (int i = 0; i < 10000; ++i) {
        double th;
        ConvergenceConstants k = sample(rng, th);
        ConditionReport r = check_grms_conditions(k, th);
        if (!r.satisfied) continue;
        ++satisfied;
        IterationMatrix2x2 t = build_T(k, th);
        if (!(rho2(t(0, 0), t(0, 1), t(1, 0), t(1, 1)) < 1.0)) ++bad;
    }
    CHECK(bad == 0);
    CHECK(satisfied > 0);
}

TEST_CASE("theta window") {
    ConvergenceConstants k{0.3, 0.2, 0.1, 1.0, 0.0};
    ConditionReport w = theta_window(k);
    REQUIRE(w.satisfied);
    REQUIRE(w.theta_interval);
    CHECK(w.theta_interval->first == 0.0);
    CHECK(w.theta_interval->second ==
          doctest::Approx(2 * (1 - k.a) / ((1 - k.a) * (1 + k.d) + k.c * k.alpha)));

    ConditionReport none = theta_window({1.2, 0.2, 0.1, 1.0, 0.0});
    CHECK_FALSE(none.satisfied);
    CHECK_FALSE(none.theta_interval);

    ComparisonExample e2 = mgsor_comparison_example();
    ConditionReport w2 = theta_window(constants(e2.problem, e2.grms));
    REQUIRE(w2.theta_interval);
    CHECK(w2.theta_interval->first < 1.0);
    CHECK(1.0 < w2.theta_interval->second);

    // every theta inside a window passes the theorem's conditions
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int windows = 0;
    for (int i = 0; i < 2000; ++i) {
        ConvergenceConstants c{0.9 * u(rng), 0.5 * u(rng), 0.9 * u(rng), 2 * u(rng), 0.5 * u(rng)};
        ConditionReport r = theta_window(c);
        if (!r.theta_interval) continue;
        ++windows;
        auto [lo, hi] = *r.theta_interval;
        for (int s = 1; s <= 20; ++s) {
            double th = lo + (hi - lo) * s / 21.0;
            if (!(th > lo && th < hi)) continue;
            CHECK(check_grms_conditions(c, th).satisfied);
        }
    }
    CHECK(windows > 100);
}

TEST_CASE("named method conditions") {
    MethodSpec picard;
    picard.name = Method::Picard;
    ConditionReport p1 = check_method_condition(picard, picard_norm_pair(1));
    ConditionReport p2 = check_method_condition(picard, picard_norm_pair(2));
    CHECK_FALSE(p1.satisfied);
    CHECK(p2.satisfied);
    CHECK(summary(p2).find("satisfied") != std::string::npos);
    CHECK(summary(p1).find("violated") != std::string::npos);

    // FPI with ||A^{-1}|| >= 1 fails whatever tau is
    GaveProblem big = make_problem(DenseMatrix::identity(2, 0.5), DenseMatrix::identity(2), Vector(2, 1.0));
    MethodSpec fpi;
    fpi.name = Method::FPI;
    for (double tau : {0.1, 0.5, 1.0, 1.5}) {
        fpi.params["tau"] = tau;
        CHECK_FALSE(check_method_condition(fpi, big).satisfied);
    }
    GaveProblem ok = make_problem(DenseMatrix::identity(2, 4.0), DenseMatrix::identity(2), Vector(2, 1.0));
    fpi.params["tau"] = 1.0;
    CHECK(check_method_condition(fpi, ok).satisfied);
    fpi.params["tau"] = 2.0 / (1.0 + 0.25) + 0.01;
    CHECK_FALSE(check_method_condition(fpi, ok).satisfied);

    // SOR-like bound 2/(1 + sqrt(nu)) with nu = 0.25
    MethodSpec sor;
    sor.name = Method::SOR_like;
    sor.params["omega"] = 2.0 / 1.5 - 0.01;
    CHECK(check_method_condition(sor, ok).satisfied);
    sor.params["omega"] = 2.0 / 1.5 + 0.01;
    CHECK_FALSE(check_method_condition(sor, ok).satisfied);

    MethodSpec grms;
    grms.name = Method::GRMS;
    CHECK_THROWS_AS(check_method_condition(grms, ok), UnsupportedMethod);

    FlatCondition first = flatten(p2).front();
    CHECK(first.which == p2.which);
    CHECK(first.holds);
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(DenseMatrix::from_rows({{0, 1}, {1, 0}})));
    CHECK_FALSE(is_irreducible(DenseMatrix::identity(2)));
    CHECK_FALSE(is_irreducible(DenseMatrix::from_rows({{1, 1}, {0, 1}})));
    CHECK(is_irreducible(DenseMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})));
    CHECK_THROWS_AS(is_irreducible(DenseMatrix::from_rows({{0, -1}, {1, 0}})), NegativeEntry);
    ComparisonExample e1 = rms_comparison_example();
    CHECK(is_irreducible(build_T(constants(e1.problem, e1.grms), e1.grms.theta).as_matrix()));
}

TEST_CASE("dominance") {
    IterationMatrix2x2 r = make_iteration_matrix({0.1, 0.2, 0.3, 0.4}, MatrixKind::GRMS);
    IterationMatrix2x2 u = make_iteration_matrix({0.1, 0.25, 0.3, 0.4}, MatrixKind::RMS);
    DominanceVerdict v = compare_dominance(r, u);
    CHECK(v.kind == Dominance::StrictOrder);
    CHECK(v.rho_small < v.rho_big);
    CHECK(compare_dominance(r, r).kind == Dominance::NotComparable);
    CHECK(compare_dominance(u, r).kind == Dominance::NotComparable);
    // dominated but reducible sum
    IterationMatrix2x2 d1 = make_iteration_matrix({0.1, 0, 0, 0.2}, MatrixKind::GRMS);
    IterationMatrix2x2 d2 = make_iteration_matrix({0.3, 0, 0, 0.2}, MatrixKind::RMS);
    CHECK(compare_dominance(d1, d2).kind == Dominance::NotComparable);
    CHECK_THROWS_AS(make_iteration_matrix({-0.1, 0, 0, 0.2}, MatrixKind::RMS), NegativeEntry);

    // random dominated pairs with irreducible sum have a strict radius gap
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        std::array<double, 4> s{}, b{};
        for (int j = 0; j < 4; ++j) {
            s[j] = uni(rng);
            b[j] = s[j] + (j == i % 4 ? 0.01 + uni(rng) : uni(rng) * (uni(rng) < 0.5));
        }
        IterationMatrix2x2 ts = make_iteration_matrix(s, MatrixKind::GRMS);
        IterationMatrix2x2 tb = make_iteration_matrix(b, MatrixKind::RMS);
        DominanceVerdict dv = compare_dominance(ts, tb);
        REQUIRE(dv.kind == Dominance::StrictOrder);
        CHECK(rho2(s[0], s[1], s[2], s[3]) < rho2(b[0], b[1], b[2], b[3]));
    }
}

TEST_CASE("comparison hypotheses on the three examples") {
    struct Row {
        ComparisonExample e;
        Comparison which;
        MatrixKind kind;
    };
    for (const auto& row : {Row{rms_comparison_example(), Comparison::VsRms, MatrixKind::RMS},
                            Row{mgsor_comparison_example(), Comparison::VsMgsor, MatrixKind::MGSOR},
                            Row{nsor_comparison_example(), Comparison::VsNsor, MatrixKind::NSOR}}) {
        CAPTURE(row.e.name);
        ConditionReport r = check_comparison_hypotheses(row.which, row.e.problem, row.e.grms, row.e.other);
        CHECK(r.satisfied);
        CHECK(summary(r) == r.which + ": satisfied");
        REQUIRE(r.theta_interval);
        CHECK(r.theta_interval->first < row.e.grms.theta);
        CHECK(row.e.grms.theta < r.theta_interval->second);
        IterationMatrix2x2 t = build_T(constants(row.e.problem, row.e.grms), row.e.grms.theta);
        IterationMatrix2x2 o = build_comparison_matrix(row.kind, row.e.other, row.e.problem);
        DominanceVerdict v = compare_dominance(t, o);
        CHECK(v.kind == Dominance::StrictOrder);
        CHECK(v.rho_small < v.rho_big);
        CHECK(v.rho_big < 1.0);
    }
    CHECK(comparison_for(Method::NSOR) == Comparison::VsNsor);
    CHECK_THROWS_AS(comparison_for(Method::SOR_like), UnsupportedPair);
    ComparisonExample e1 = rms_comparison_example();
    CHECK_THROWS_AS(check_comparison_hypotheses(Comparison::VsMgsor, e1.problem, e1.grms, e1.other), UnsupportedPair);
}

TEST_CASE("error recursion bound along a traced run") {
    for (const auto& e : {rms_comparison_example(), mgsor_comparison_example(), nsor_comparison_example()}) {
        CAPTURE(e.name);
        IterationMatrix2x2 t = build_T(constants(e.problem, e.grms), e.grms.theta);
        StopRule stop;
        stop.tol = 1e-12;
        SolveOptions opt;
        opt.trace = true;
        std::size_t n = e.problem.dim();
        IterationOutcome o = solve_grms(e.problem, e.grms, Vector(n), Vector(n), stop, opt);
        CHECK(o.status == Status::Converged);
        const ErrorTrace& tr = record_error_trace(o);
        for (std::size_t k = 1; k < tr.size(); ++k) {
            CHECK(tr[k][0] <= t(0, 0) * tr[k - 1][0] + t(0, 1) * tr[k - 1][1] + 1e-12);
            CHECK(tr[k][1] <= t(1, 0) * tr[k - 1][0] + t(1, 1) * tr[k - 1][1] + 1e-12);
        }
    }
}

TEST_CASE("condition-region containment") {
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> nu(0.0, 1.0), tau(0.0, 2.0);
    int gap = 0;
    for (int i = 0; i < 10000; ++i) {
        double v = nu(rng), t = tau(rng);
        if (fpi_earlier_region_contains(v, t)) CHECK(fpi_region_contains(v, t));
        if (fpi_region_contains(v, t) && !fpi_earlier_region_contains(v, t)) ++gap;
    }
    CHECK(gap > 0);
    CHECK_FALSE(fpi_region_contains(1.0, 0.5));
    CHECK(fpi_region_contains(0.5, 2.0 / 1.5 - 1e-9));
    CHECK_FALSE(fpi_region_contains(0.5, 2.0 / 1.5));

    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        double a = u(rng), b = u(rng) * (1.0 - a);
        if (!(a + b < 1.0)) continue;
        CHECK(fpiss_omega_bound(a, b) > fpiss_earlier_omega_bound(a, b));
    }
    CHECK(fpiss_omega_bound(0.0, 0.0) == 2.0);
}

TEST_CASE("analysis size limit") {
    GaveProblem p = block_banded_problem(BlockCoupling::Unit, 60, 40);
    MethodSpec g;
    g.name = Method::GRMS;
    MethodConfig c = instantiate(p, g);
    CHECK_THROWS_AS(constants(p, std::get<GrmsConfig>(c)), ProblemTooLarge);
}
