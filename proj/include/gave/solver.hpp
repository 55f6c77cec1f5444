#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "gave/linear_operator.hpp"
#include "gave/problem.hpp"

namespace gave {

// A = M - N, Q = Q1 - Q2;
//   x+ = M^{-1}(N x + B Q y + b)
//   y+ = (1 - theta) y + theta Q1^{-1} Q2 y + theta Q1^{-1}|x+| + Q1^{-1} H (x+ - x)
struct GrmsConfig {
    LinearOperator M, N, Q, Q1, Q2, H;
    double theta = 1.0;
};

// Q2 is derived as Q1 - Q
GrmsConfig make_grms_config(LinearOperator M, LinearOperator N, LinearOperator Q,
                            LinearOperator Q1, LinearOperator H, double theta);

// x+ = M1^{-1}(N1 x + B|x| + momentum (x - x_prev) + b)
struct OneStepConfig {
    LinearOperator M1, N1;
    double momentum = 0.0;
};

// throw InvalidConfig when the splittings do not reproduce A (and Q)
void validate(const GaveProblem& p, const GrmsConfig& cfg);
void validate(const GaveProblem& p, const OneStepConfig& cfg);

struct StopRule {
    double tol = 1e-8;
    std::size_t max_iter = 500;
    double divergence_cap = 1e10;
};

enum class Status { Converged, MaxIterReached, Diverged };
std::string_view to_string(Status s);

using ErrorTrace = std::vector<std::array<double, 2>>;

struct IterationOutcome {
    Status status = Status::MaxIterReached;
    Vector x;
    std::optional<Vector> y;
    std::size_t iterations = 0;
    std::vector<double> res_history;
    // (||x(k) - x(k-1)||, ||y(k) - y(k-1)||), k = 1..iterations
    std::optional<ErrorTrace> error_trace;
    // x(0), x(1), ... when requested
    std::optional<std::vector<Vector>> x_iterates;
    std::optional<std::vector<Vector>> y_iterates;
};

struct SolveOptions {
    bool trace = false;
    bool keep_iterates = false;
    // one-step engine: compute x(1) = M1^{-1}(N1 x(0) + B y0 + b) instead of
    // a zero-momentum first step
    std::optional<Vector> bootstrap_y0;
};

IterationOutcome solve_grms(const GaveProblem& p, const GrmsConfig& cfg, const Vector& x0,
                            const Vector& y0, const StopRule& stop, const SolveOptions& opts = {});
IterationOutcome solve_one_step(const GaveProblem& p, const OneStepConfig& cfg, const Vector& x0,
                                const StopRule& stop, const SolveOptions& opts = {});

// throws TraceUnavailable unless the run was traced
const ErrorTrace& record_error_trace(const IterationOutcome& out);

}  // namespace gave
