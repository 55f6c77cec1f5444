#include "gave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gave/errors.hpp"

namespace gave {

GrmsConfig make_grms_config(LinearOperator M, LinearOperator N, LinearOperator Q,
                            LinearOperator Q1, LinearOperator H, double theta) {
    GrmsConfig c;
    c.Q2 = Q1 - Q;
    c.M = std::move(M);
    c.N = std::move(N);
    c.Q = std::move(Q);
    c.Q1 = std::move(Q1);
    c.H = std::move(H);
    c.theta = theta;
    return c;
}

std::string_view to_string(Status s) {
    switch (s) {
        case Status::Converged: return "Converged";
        case Status::MaxIterReached: return "MaxIterReached";
        case Status::Diverged: return "Diverged";
    }
    return "?";
}

namespace {

constexpr double kSplitTol = 1e-12;
// inverse terms are only checked through probe vectors, which carry solve rounding
constexpr double kProbeTol = 1e-11;

void require_dim(const LinearOperator& op, std::size_t n, const char* name) {
    if (op.dim() != n)
        throw DimensionMismatch(std::string(name) + " is " + std::to_string(op.dim()) +
                                "-dimensional, problem has n=" + std::to_string(n));
}

// lhs == a - b  for explicit operators (componentwise, relative to max |lhs|),
// otherwise on two deterministic probe vectors
bool splits(const LinearOperator& lhs, const LinearOperator& a, const LinearOperator& b) {
    if (!lhs.has_inverse_terms() && !a.has_inverse_terms() && !b.has_inverse_terms()) {
        DenseMatrix diff = lhs.explicit_part() - (a.explicit_part() - b.explicit_part());
        return diff.max_abs() <= kSplitTol * std::max(1.0, lhs.explicit_part().max_abs());
    }
    std::size_t n = lhs.dim();
    for (int probe = 0; probe < 2; ++probe) {
        Vector v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = probe == 0 ? 1.0 : (i % 2 ? -1.0 : 1.0) / static_cast<double>(i + 1);
        Vector l = lhs.apply(v), av = a.apply(v), bv = b.apply(v);
        double scale = std::max({1.0, norm2(l), norm2(av), norm2(bv)});
        if (norm2(l - (av - bv)) > kProbeTol * scale) return false;
    }
    return true;
}

}  // namespace

void validate(const GaveProblem& p, const GrmsConfig& cfg) {
    std::size_t n = p.dim();
    require_dim(cfg.M, n, "M");
    require_dim(cfg.N, n, "N");
    require_dim(cfg.Q, n, "Q");
    require_dim(cfg.Q1, n, "Q1");
    require_dim(cfg.Q2, n, "Q2");
    require_dim(cfg.H, n, "H");
    if (!(cfg.theta > 0.0)) throw InvalidConfig("theta must be positive");
    if (!splits(LinearOperator(p.A), cfg.M, cfg.N)) throw InvalidConfig("A != M - N");
    if (!splits(cfg.Q, cfg.Q1, cfg.Q2)) throw InvalidConfig("Q != Q1 - Q2");
}

void validate(const GaveProblem& p, const OneStepConfig& cfg) {
    std::size_t n = p.dim();
    require_dim(cfg.M1, n, "M1");
    require_dim(cfg.N1, n, "N1");
    if (!splits(LinearOperator(p.A), cfg.M1, cfg.N1)) throw InvalidConfig("A != M1 - N1");
}

namespace {

// shared bookkeeping for both engines; returns true when the run stops
bool record_step(const GaveProblem& p, const StopRule& stop, IterationOutcome& out) {
    double r = residual(p, out.x).res;
    out.res_history.push_back(r);
    out.iterations = out.res_history.size();
    if (!std::isfinite(r) || r > stop.divergence_cap) {
        out.status = Status::Diverged;
        return true;
    }
    if (r <= stop.tol) {
        out.status = Status::Converged;
        return true;
    }
    return false;
}

void check_stop_rule(const StopRule& stop) {
    if (!(stop.tol > 0.0)) throw InvalidConfig("tol must be positive");
    if (stop.max_iter < 1) throw InvalidConfig("max_iter must be at least 1");
}

}  // namespace

IterationOutcome solve_grms(const GaveProblem& p, const GrmsConfig& cfg, const Vector& x0,
                            const Vector& y0, const StopRule& stop, const SolveOptions& opts) {
    check_stop_rule(stop);
    std::size_t n = p.dim();
    if (x0.size() != n || y0.size() != n)
        throw DimensionMismatch("initial vectors must have length " + std::to_string(n));
    validate(p, cfg);
    const auto Minv = cfg.M.inverse();
    const auto Q1inv = cfg.Q1.inverse();
    const double th = cfg.theta;

    IterationOutcome out;
    out.x = x0;
    out.y = y0;
    if (opts.trace) out.error_trace.emplace();
    if (opts.keep_iterates) {
        out.x_iterates.emplace(1, x0);
        out.y_iterates.emplace(1, y0);
    }
    Vector& x = out.x;
    Vector& y = *out.y;
    out.status = Status::MaxIterReached;
    for (std::size_t k = 0; k < stop.max_iter; ++k) {
        Vector rhs = cfg.N.apply(x);
        rhs += p.B * cfg.Q.apply(y);
        rhs += p.b;
        Vector xn = Minv.apply(rhs);

        // Q1^{-1} applied once to theta Q2 y + theta |x+| + H (x+ - x)
        Vector t = th * cfg.Q2.apply(y);
        axpy(th, abs(xn), t);
        t += cfg.H.apply(xn - x);
        Vector yn = (1.0 - th) * y;
        yn += Q1inv.apply(t);

        if (out.error_trace) out.error_trace->push_back({norm2(xn - x), norm2(yn - y)});
        x = std::move(xn);
        y = std::move(yn);
        if (out.x_iterates) {
            out.x_iterates->push_back(x);
            out.y_iterates->push_back(y);
        }
        if (record_step(p, stop, out)) break;
    }
    return out;
}

IterationOutcome solve_one_step(const GaveProblem& p, const OneStepConfig& cfg, const Vector& x0,
                                const StopRule& stop, const SolveOptions& opts) {
    check_stop_rule(stop);
    std::size_t n = p.dim();
    if (x0.size() != n) throw DimensionMismatch("x0 must have length " + std::to_string(n));
    if (opts.bootstrap_y0 && opts.bootstrap_y0->size() != n)
        throw DimensionMismatch("bootstrap y0 must have length " + std::to_string(n));
    validate(p, cfg);
    const auto Minv = cfg.M1.inverse();

    IterationOutcome out;
    out.x = x0;
    if (opts.trace) out.error_trace.emplace();
    if (opts.keep_iterates) out.x_iterates.emplace(1, x0);
    Vector& x = out.x;
    Vector prev = x0;
    out.status = Status::MaxIterReached;
    for (std::size_t k = 0; k < stop.max_iter; ++k) {
        Vector rhs = cfg.N1.apply(x);
        if (k == 0 && opts.bootstrap_y0) {
            rhs += p.B * *opts.bootstrap_y0;
        } else {
            rhs += p.B * abs(x);
            if (cfg.momentum != 0.0) axpy(cfg.momentum, x - prev, rhs);
        }
        rhs += p.b;
        Vector xn = Minv.apply(rhs);
        if (out.error_trace) out.error_trace->push_back({norm2(xn - x), 0.0});
        prev = std::move(x);
        x = std::move(xn);
        if (out.x_iterates) out.x_iterates->push_back(x);
        if (record_step(p, stop, out)) break;
    }
    return out;
}

const ErrorTrace& record_error_trace(const IterationOutcome& out) {
    if (!out.error_trace) throw TraceUnavailable("run was not traced");
    return *out.error_trace;
}

}  // namespace gave
