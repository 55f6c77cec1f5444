#include "gave/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gave/errors.hpp"

namespace gave {

std::string_view to_string(MatrixKind k) {
    switch (k) {
        case MatrixKind::GRMS: return "T";
        case MatrixKind::RMS: return "T_RMS";
        case MatrixKind::MGSOR: return "T_MGSOR";
        case MatrixKind::NSOR: return "T_NSOR";
    }
    return "?";
}

DenseMatrix IterationMatrix2x2::as_matrix() const {
    return DenseMatrix::from_rows({{entries[0], entries[1]}, {entries[2], entries[3]}});
}

IterationMatrix2x2 make_iteration_matrix(const std::array<double, 4>& entries, MatrixKind kind) {
    for (double v : entries)
        if (!(v >= 0.0)) throw NegativeEntry("iteration matrix entries must be nonnegative");
    IterationMatrix2x2 t;
    t.entries = entries;
    t.kind = kind;
    t.rho = spectral_radius(t.as_matrix());
    return t;
}

void ConditionReport::require(std::string id, double lhs, double rhs, Relation rel) {
    Inequality q{std::move(id), lhs, rhs, rel, rel == Relation::Less ? lhs < rhs : lhs <= rhs};
    satisfied = satisfied && q.holds;
    inequalities.push_back(std::move(q));
}

void ConditionReport::flag(std::string id, bool ok) {
    inequalities.push_back(Inequality{std::move(id), ok ? 1.0 : 0.0, 1.0, Relation::Flag, ok});
    satisfied = satisfied && ok;
}

const Inequality* ConditionReport::find(const std::string& id) const {
    for (const auto& q : inequalities)
        if (q.id == id) return &q;
    return nullptr;
}

std::optional<double> ConditionReport::find_value(const std::string& name) const {
    for (const auto& [k, v] : values)
        if (k == name) return v;
    return std::nullopt;
}

namespace {

std::string_view relation_text(Relation r) {
    switch (r) {
        case Relation::Less: return "<";
        case Relation::LessEq: return "<=";
        case Relation::Flag: return "holds";
    }
    return "?";
}

}  // namespace

std::string summary(const ConditionReport& r) {
    std::ostringstream os;
    os << r.which << ": " << (r.satisfied ? "satisfied" : "violated");
    if (!r.satisfied) {
        os << " (";
        bool first = true;
        for (const auto& q : r.inequalities)
            if (!q.holds) {
                os << (first ? "" : ", ") << q.id;
                first = false;
            }
        os << ")";
    }
    return os.str();
}

std::vector<FlatCondition> flatten(const ConditionReport& r) {
    std::vector<FlatCondition> out;
    for (const auto& q : r.inequalities)
        out.push_back({r.which, q.id, std::string(relation_text(q.relation)), q.lhs, q.rhs, q.holds});
    return out;
}

namespace {

void require_small(std::size_t n) {
    if (n > kAnalysisMaxDim)
        throw ProblemTooLarge("analysis forms dense " + std::to_string(n) + "x" +
                              std::to_string(n) + " products; limit is " +
                              std::to_string(kAnalysisMaxDim));
}

// ||K^{-1} R|| through column solves
double solve_norm(const DenseMatrix& k, const DenseMatrix& r) {
    return two_norm(LuFactorization(k).solve(r));
}

double max_abs_diff(const DenseMatrix& x, const DenseMatrix& y) { return (x - y).max_abs(); }

}  // namespace

ConvergenceConstants constants(const GaveProblem& p, const GrmsConfig& cfg) {
    std::size_t n = p.dim();
    require_small(n);
    validate(p, cfg);
    const auto Minv = cfg.M.inverse();
    const auto Q1inv = cfg.Q1.inverse();
    ConvergenceConstants k;
    k.a = two_norm(Minv.apply(cfg.N.to_matrix()));
    k.c = two_norm(Minv.apply(p.B * cfg.Q.to_matrix()));
    k.d = two_norm(Q1inv.apply(cfg.Q2.to_matrix()));
    k.alpha = two_norm(Q1inv.apply(DenseMatrix::identity(n)));
    k.beta = two_norm(Q1inv.apply(cfg.H.to_matrix()));
    return k;
}

IterationMatrix2x2 build_T(const ConvergenceConstants& k, double theta) {
    double s = theta * k.alpha + k.beta;
    return make_iteration_matrix(
        {k.a, k.c, k.a * s + k.beta, k.c * s + theta * k.d + std::abs(1.0 - theta)},
        MatrixKind::GRMS);
}

ConditionReport check_grms_conditions(const ConvergenceConstants& k, double theta) {
    ConditionReport r;
    r.which = "grms";
    const auto& [a, c, d, al, be] = k;
    double t1 = std::abs(1.0 - theta);
    r.require("grms.product_bound", std::abs(a * t1 + theta * a * d - c * be), 1.0);
    r.require("grms.coupling_bound", c * (theta * al + 2.0 * be), (1.0 - a) * (1.0 - t1 - theta * d));
    double rho = build_T(k, theta).rho;
    r.value("rho_T", rho);
    if (r.satisfied && !(rho < 1.0))
        throw std::logic_error("conditions hold but rho(T) = " + std::to_string(rho));
    return r;
}

ConditionReport theta_window(const ConvergenceConstants& k) {
    ConditionReport r;
    r.which = "theta_window";
    const auto& [a, c, d, al, be] = k;
    r.require("window.a_below_one", a, 1.0);
    r.require("window.c_beta", c * be, a * d + 1.0);
    r.require("window.coupling", c * (2.0 * be + al), (1.0 - a) * (1.0 - d));
    if (!r.satisfied) return r;
    double lo = 2.0 * c * be / ((1.0 - a) * (1.0 - d) - c * al);
    double hi = (2.0 * (1.0 - a) - 2.0 * c * be) / ((1.0 - a) * (1.0 + d) + c * al);
    r.value("theta_lo", lo);
    r.value("theta_hi", hi);
    r.require("window.nonempty", lo, hi);
    if (r.satisfied) r.theta_interval = std::make_pair(lo, hi);
    return r;
}

namespace {

struct RmsView {
    DenseMatrix M;
    double tau;
};

RmsView rms_view(const MethodSpec& s, const GaveProblem& p) {
    switch (s.name) {
        case Method::RMS: {
            auto it = s.matrix_params.find("M");
            return {it == s.matrix_params.end() ? p.A : it->second, s.get("tau")};
        }
        case Method::FPI: return {p.A, s.get("tau")};
        case Method::ModifiedSOR_like: {
            double w = s.get("omega");
            DluSplit d = d_l_u_split(p.A);
            return {(1.0 / w) * d.D - d.L, w};
        }
        default:
            throw UnsupportedPair(std::string(method_key(s.name)) + " has no T_RMS form");
    }
}

struct MgsorView {
    double alpha, beta;
    DenseMatrix Q;
};

MgsorView mgsor_view(const MethodSpec& s, std::size_t n) {
    auto q_of = [&] {
        auto it = s.matrix_params.find("Q");
        if (it != s.matrix_params.end()) return it->second;
        return DenseMatrix::identity(n, s.has("q") ? s.get("q") : 1.0);
    };
    switch (s.name) {
        case Method::MGSOR: return {s.get("alpha"), s.get("beta"), q_of()};
        case Method::MFPI: return {1.0, s.get("tau"), q_of()};
        case Method::SOR_like: return {s.get("omega"), s.get("omega"), DenseMatrix::identity(n)};
        default:
            throw UnsupportedPair(std::string(method_key(s.name)) + " has no T_MGSOR form");
    }
}

struct RmsNumbers {
    double a, mb, tau;
};

RmsNumbers rms_numbers(const MethodSpec& s, const GaveProblem& p) {
    RmsView v = rms_view(s, p);
    LuFactorization f(v.M);
    return {two_norm(f.solve(v.M - p.A)), two_norm(f.solve(p.B)), v.tau};
}

struct MgsorNumbers {
    double alpha, beta, g, q;
};

MgsorNumbers mgsor_numbers(const MethodSpec& s, const GaveProblem& p) {
    MgsorView v = mgsor_view(s, p.dim());
    double g = solve_norm(p.A, p.B * v.Q);
    double q = solve_norm(v.Q, DenseMatrix::identity(p.dim()));
    return {v.alpha, v.beta, g, q};
}

struct NsorNumbers {
    double omega, sigma, kappa, nA, nB, dd;
};

NsorNumbers nsor_numbers(const MethodSpec& s, const GaveProblem& p) {
    double w = s.get("omega"), sg = s.get("sigma");
    std::size_t n = p.dim();
    return {w,
            sg,
            solve_norm(p.A, p.B),
            two_norm(p.A),
            two_norm(p.B),
            two_norm(DenseMatrix::identity(n) - (w * w / sg) * p.B)};
}

void rms_condition(ConditionReport& r, const RmsNumbers& v) {
    double t1 = std::abs(1.0 - v.tau);
    r.require("rms.contraction", t1 * v.a, 1.0);
    r.require("rms.coupling", v.tau * v.mb, (1.0 - v.a) * (1.0 - t1));
}

void mgsor_condition(ConditionReport& r, const MgsorNumbers& v) {
    double ea = std::abs(1.0 - v.alpha), eb = std::abs(1.0 - v.beta);
    r.require("mgsor.contraction", ea * eb, 1.0);
    r.require("mgsor.coupling", v.alpha * v.beta * v.g * v.q, (1.0 - ea) * (1.0 - eb));
}

void nsor_condition(ConditionReport& r, const NsorNumbers& v) {
    double s = v.omega * v.omega / v.sigma, e = std::abs(1.0 - v.omega);
    r.require("nsor.contraction", std::abs(e * v.dd - s * e * v.kappa * v.nA), 1.0);
    r.require("nsor.coupling", s * v.kappa * (v.nB + e * v.nA), (1.0 - e) * (1.0 - v.dd));
}

}  // namespace

ConditionReport check_method_condition(const MethodSpec& spec, const GaveProblem& p) {
    check_params(spec);
    const std::size_t n = p.dim();
    require_small(n);
    const DenseMatrix I = DenseMatrix::identity(n);
    ConditionReport r;
    r.which = std::string(method_key(spec.name));

    switch (spec.name) {
        case Method::GRMS:
            throw UnsupportedMethod("grms: use the GRMS conditions on its constants");
        case Method::MAMS:
            throw UnsupportedMethod("mams: no sufficient condition is available");
        case Method::RMS:
        case Method::ModifiedSOR_like: {
            RmsNumbers v = rms_numbers(spec, p);
            r.value("a", v.a);
            r.value("norm_Minv_B", v.mb);
            rms_condition(r, v);
            return r;
        }
        case Method::FPI: {
            double tau = spec.get("tau");
            double kappa = solve_norm(p.A, p.B);
            r.value("kappa", kappa);
            r.require("fpi.kappa_positive", 0.0, kappa);
            r.require("fpi.kappa_below_one", kappa, 1.0);
            r.require("fpi.tau", tau, 2.0 / (1.0 + kappa));
            // the general-B form as printed carries |1 - tau| in the numerator; the
            // form implied by the MFPI reduction uses 1 - |1 - tau|
            r.value("printed_bound", std::abs(1.0 - tau) / tau);
            r.value("reduced_bound", (1.0 - std::abs(1.0 - tau)) / tau);
            r.notes.push_back(
                "general-B bound evaluated as kappa < (1 - |1 - tau|)/tau, equivalent to "
                "kappa < 1 and tau < 2/(1 + kappa); the printed |1 - tau|/tau is not used");
            return r;
        }
        case Method::SOR_like: {
            double w = spec.get("omega");
            double nu = solve_norm(p.A, p.B);
            r.value("nu", nu);
            r.require("sor.nu_positive", 0.0, nu);
            r.require("sor.nu_below_one", nu, 1.0);
            // (2 - 2 sqrt(nu))/(1 - nu) written without the removable 0/0 at nu = 1
            r.require("sor.omega", w, 2.0 / (1.0 + std::sqrt(nu)));
            return r;
        }
        case Method::MGSOR: {
            MgsorNumbers v = mgsor_numbers(spec, p);
            r.value("norm_Ainv_B_Q", v.g);
            r.value("norm_Qinv", v.q);
            mgsor_condition(r, v);
            return r;
        }
        case Method::MFPI: {
            MgsorNumbers v = mgsor_numbers(spec, p);
            double tau = v.beta;
            r.value("norm_Ainv_B_Q", v.g);
            r.value("norm_Qinv", v.q);
            r.require("mfpi.positive", 0.0, v.g * v.q);
            r.require("mfpi.bound", v.g * v.q, (1.0 - std::abs(1.0 - tau)) / tau);
            return r;
        }
        case Method::MSOR: {
            double al = spec.get("alpha"), w = spec.get("omega");
            double e = std::abs(1.0 - al * w);
            double kappa = solve_norm(p.A, p.B), nA = two_norm(p.A), nB = two_norm(p.B);
            double dd = two_norm(I - (2.0 / (2.0 - w)) * p.B);
            double w2 = std::abs(2.0 - w);
            r.value("kappa", kappa);
            r.value("norm_I_minus_scaled_B", dd);
            r.require("msor.contraction",
                      std::abs(e * std::abs(1.0 - w) + w * e * dd - (2.0 * w * e / w2) * kappa * nA), 1.0);
            r.require("msor.coupling", (2.0 * w / w2) * kappa * (w * al * nB + 2.0 * e * nA),
                      (1.0 - e) * (1.0 - std::abs(1.0 - w) - w * dd));
            return r;
        }
        case Method::NSOR: {
            NsorNumbers v = nsor_numbers(spec, p);
            r.value("kappa", v.kappa);
            r.value("norm_I_minus_scaled_B", v.dd);
            nsor_condition(r, v);
            return r;
        }
        case Method::FPI_SS: {
            double al = spec.get("alpha"), w = spec.get("omega");
            DenseMatrix K = DenseMatrix::identity(n, al) + p.A;
            LuFactorization f(K);
            double ah = two_norm(f.solve(DenseMatrix::identity(n, al) - p.A));
            double bh = 2.0 * two_norm(f.solve(p.B));
            r.value("a_hat", ah);
            r.value("b_hat", bh);
            r.require("fpiss.sum", ah + bh, 1.0);
            r.require("fpiss.omega", w, fpiss_omega_bound(ah, bh));
            return r;
        }
        case Method::Picard:
        case Method::MN:
        case Method::NMS:
        case Method::SSMN:
        case Method::NSOR_like: {
            auto cfg = std::get<OneStepConfig>(instantiate(p, spec));
            const auto Minv = cfg.M1.inverse();
            double u = two_norm(Minv.apply(cfg.N1.to_matrix()));
            double v = two_norm(Minv.apply(p.B));
            r.value("norm_M1inv_N1", u);
            r.value("norm_M1inv_B", v);
            r.require(r.which + ".contraction", u + v, 1.0);
            if (spec.name == Method::SSMN || spec.name == Method::NSOR_like)
                r.notes.push_back("evaluated through the general one-step splitting form");
            return r;
        }
    }
    throw UnsupportedMethod("unhandled method");
}

IterationMatrix2x2 build_comparison_matrix(MatrixKind kind, const MethodSpec& spec,
                                           const GaveProblem& p) {
    check_params(spec);
    require_small(p.dim());
    switch (kind) {
        case MatrixKind::RMS: {
            RmsNumbers v = rms_numbers(spec, p);
            return make_iteration_matrix(
                {v.a, v.mb, v.tau * v.a, std::abs(1.0 - v.tau) + v.tau * v.mb}, kind);
        }
        case MatrixKind::MGSOR: {
            MgsorNumbers v = mgsor_numbers(spec, p);
            double ea = std::abs(1.0 - v.alpha);
            return make_iteration_matrix({ea, v.alpha * v.g, v.beta * ea * v.q,
                                          v.alpha * v.beta * v.g * v.q + std::abs(1.0 - v.beta)},
                                         kind);
        }
        case MatrixKind::NSOR: {
            if (spec.name != Method::NSOR)
                throw UnsupportedPair(std::string(method_key(spec.name)) + " has no T_NSOR form");
            NsorNumbers v = nsor_numbers(spec, p);
            double s = v.omega * v.omega / v.sigma;
            return make_iteration_matrix({std::abs(1.0 - v.omega), v.omega * v.kappa,
                                          v.omega * std::abs(1.0 - v.omega) / v.sigma * (v.nA + v.nB),
                                          s * v.kappa * v.nB + v.dd},
                                         kind);
        }
        case MatrixKind::GRMS: break;
    }
    throw UnsupportedPair("build_T covers the GRMS matrix");
}

bool is_irreducible(const DenseMatrix& u) {
    if (!u.is_square()) throw NonSquare("is_irreducible needs a square matrix");
    if (!u.is_nonnegative()) throw NegativeEntry("is_irreducible needs a nonnegative matrix");
    std::size_t n = u.rows();
    // (I + U)^{n-1} > 0 iff every vertex reaches every other in the graph of U
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> stack{s};
        seen[s] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = u.row_begin(i); j < u.row_end(i); ++j)
                if (!seen[j] && u(i, j) > 0.0) {
                    seen[j] = 1;
                    ++count;
                    stack.push_back(j);
                }
        }
        if (count != n) return false;
    }
    return true;
}

DominanceVerdict compare_dominance(const IterationMatrix2x2& small, const IterationMatrix2x2& big) {
    DenseMatrix r = small.as_matrix(), u = big.as_matrix();
    if (!r.is_nonnegative() || !u.is_nonnegative())
        throw NegativeEntry("compare_dominance needs nonnegative matrices");
    DominanceVerdict v;
    v.rho_small = small.rho;
    v.rho_big = big.rho;
    if (matrix_leq(r, u) && !(r == u) && is_irreducible(r + u)) {
        v.kind = Dominance::StrictOrder;
        if (!(v.rho_small < v.rho_big))
            throw std::logic_error("dominated pair without a spectral-radius gap");
    }
    return v;
}

Comparison comparison_for(Method other) {
    switch (other) {
        case Method::RMS: return Comparison::VsRms;
        case Method::MGSOR: return Comparison::VsMgsor;
        case Method::NSOR: return Comparison::VsNsor;
        default:
            throw UnsupportedPair("no comparison of grms with " + std::string(method_key(other)));
    }
}

ConditionReport check_comparison_hypotheses(Comparison which, const GaveProblem& p,
                                            const GrmsConfig& cfg, const MethodSpec& other) {
    check_params(other);
    const ConvergenceConstants k = constants(p, cfg);
    const auto& [a, c, d, al, be] = k;
    const double th = cfg.theta;
    const IterationMatrix2x2 T = build_T(k, th);
    const double acd = al * c + d;

    ConditionReport r;
    r.value("a", a);
    r.value("c", c);
    r.value("d", d);
    r.value("alpha", al);
    r.value("beta", be);
    r.value("theta", th);
    r.value("rho_T", T.rho);

    switch (which) {
        case Comparison::VsRms: {
            if (other.name != Method::RMS) throw UnsupportedPair("expected an rms method spec");
            r.which = "grms_vs_rms";
            RmsView view = rms_view(other, p);
            RmsNumbers v = rms_numbers(other, p);
            double t22 = std::abs(1.0 - v.tau) + v.tau * v.mb;
            double mu = (1.0 + be * c - t22) / (1.0 - acd);
            double nu = (t22 + 1.0 - be * c) / (1.0 + acd);
            double delta = (v.tau * a - (a + 1.0) * be) / (a * al);
            double qn = two_norm(cfg.Q.to_matrix());
            DenseMatrix Mg = cfg.M.to_matrix();
            r.value("norm_Q", qn);
            r.value("mu", mu);
            r.value("nu", nu);
            r.value("Delta", delta);
            r.flag("rms.same_splitting",
                   max_abs_diff(Mg, view.M) <= 1e-12 * std::max(1.0, view.M.max_abs()));
            r.require("rms.norm_Q", qn, 1.0, Relation::LessEq);
            r.require("rms.beta_c", be * c, t22 + 1.0);
            r.require("rms.beta_a", be * (a + 1.0), v.tau * a);
            r.require("rms.alpha_c_d", acd, 1.0);
            r.require("rms.cross", al * c * (v.tau * a - be) + a * al * (1.0 - t22),
                      (1.0 - d) * (v.tau * a - be * (a + 1.0)));
            r.require("rms.theta_lower", mu, th);
            r.require("rms.theta_upper_nu", th, nu);
            r.require("rms.theta_upper_delta", th, delta);
            rms_condition(r, v);
            r.flag("T_irreducible", is_irreducible(T.as_matrix()));
            r.value("rho_other", build_comparison_matrix(MatrixKind::RMS, other, p).rho);
            break;
        }
        case Comparison::VsMgsor: {
            if (other.name != Method::MGSOR) throw UnsupportedPair("expected an mgsor method spec");
            r.which = "grms_vs_mgsor";
            MgsorNumbers v = mgsor_numbers(other, p);
            double ea = std::abs(1.0 - v.alpha);
            double t21 = v.beta * ea * v.q;
            double t22 = std::abs(1.0 - v.beta) + v.alpha * v.beta * v.g * v.q;
            double mu = (1.0 + be * c - t22) / (1.0 - acd);
            double nu = (1.0 - be * c + t22) / (1.0 + acd);
            double delta = (t21 - (a + 1.0) * be) / (a * al);
            r.value("mu", mu);
            r.value("nu", nu);
            r.value("Delta", delta);
            r.require("mgsor.a", a, ea);
            r.require("mgsor.c", c, v.alpha * v.g);
            r.require("mgsor.alpha_c_d", acd, 1.0);
            r.require("mgsor.cross", be * ((a + 1.0) * (1.0 - d) - al * c) - t21 * (1.0 - acd),
                      a * al * (t22 - 1.0));
            r.require("mgsor.theta_lower", mu, th);
            r.require("mgsor.theta_upper_nu", th, nu);
            r.require("mgsor.theta_upper_delta", th, delta);
            mgsor_condition(r, v);
            r.flag("T_irreducible", is_irreducible(T.as_matrix()));
            r.value("rho_other", build_comparison_matrix(MatrixKind::MGSOR, other, p).rho);
            break;
        }
        case Comparison::VsNsor: {
            if (other.name != Method::NSOR) throw UnsupportedPair("expected an nsor method spec");
            r.which = "grms_vs_nsor";
            NsorNumbers v = nsor_numbers(other, p);
            double s = v.omega * v.omega / v.sigma;
            double t21 = v.omega * std::abs(1.0 - v.omega) / v.sigma * (v.nA + v.nB);
            double t22 = s * v.kappa * v.nB + v.dd;
            double mu = (t22 - be * c - 1.0) / (acd - 1.0);
            double nu = (t22 - be * c + 1.0) / (1.0 + acd);
            double delta = (t21 - (a + 1.0) * be) / (a * al);
            double rhs = a * al * (t22 - 1.0);
            r.value("mu", mu);
            r.value("nu", nu);
            r.value("Delta", delta);
            r.require("nsor.a", a, std::abs(1.0 - v.omega));
            r.require("nsor.c", c, v.omega * v.kappa);
            r.require("nsor.alpha_c_d", acd, 1.0);
            r.require("nsor.cross", t21 * (acd - 1.0) - be * ((a + 1.0) * (d - 1.0) + al * c), rhs);
            double printed = t21 * (acd - 1.0) - be * ((al + 1.0) * (d - 1.0) + al * c);
            r.value("cross_printed_lhs", printed);
            r.notes.push_back(std::string("cross term evaluated with (a + 1); the printed (alpha + 1) "
                                          "variant ") +
                              (printed < rhs ? "also holds" : "fails"));
            r.require("nsor.theta_lower", mu, th);
            r.require("nsor.theta_upper_nu", th, nu);
            r.require("nsor.theta_upper_delta", th, delta);
            nsor_condition(r, v);
            r.flag("T_irreducible", is_irreducible(T.as_matrix()));
            r.value("rho_other", build_comparison_matrix(MatrixKind::NSOR, other, p).rho);
            break;
        }
    }
    r.theta_interval = std::make_pair(*r.find_value("mu"),
                                      std::min(*r.find_value("nu"), *r.find_value("Delta")));
    return r;
}

bool fpi_region_contains(double nu, double tau) {
    return nu > 0.0 && nu < 1.0 && tau > 0.0 && tau < 2.0 / (1.0 + nu);
}

bool fpi_earlier_region_contains(double nu, double tau) {
    if (!(nu > 0.0 && nu < std::sqrt(2.0) / 2.0)) return false;
    double s = std::sqrt(1.0 - nu * nu);
    return (1.0 - s) / (1.0 - nu) < tau && tau < (1.0 + s) / (1.0 + nu);
}

double fpiss_omega_bound(double a_hat, double b_hat) {
    return 2.0 * (1.0 - a_hat) / (1.0 - a_hat + b_hat);
}

double fpiss_earlier_omega_bound(double a_hat, double b_hat) { return 2.0 / (1.0 + a_hat + b_hat); }

}  // namespace gave
