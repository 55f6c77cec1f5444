#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gave/presets.hpp"

namespace gave {

// a = ||M^{-1}N||, c = ||M^{-1}BQ||, d = ||Q1^{-1}Q2||, alpha = ||Q1^{-1}||, beta = ||Q1^{-1}H||
struct ConvergenceConstants {
    double a = 0.0, c = 0.0, d = 0.0, alpha = 0.0, beta = 0.0;
};

enum class MatrixKind { GRMS, RMS, MGSOR, NSOR };
std::string_view to_string(MatrixKind k);

struct IterationMatrix2x2 {
    std::array<double, 4> entries{};  // row-major
    double rho = 0.0;
    MatrixKind kind = MatrixKind::GRMS;

    double operator()(int i, int j) const { return entries[2 * i + j]; }
    DenseMatrix as_matrix() const;
};

IterationMatrix2x2 make_iteration_matrix(const std::array<double, 4>& entries, MatrixKind kind);

enum class Relation { Less, LessEq, Flag };

struct Inequality {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    Relation relation = Relation::Less;
    bool holds = false;
};

struct ConditionReport {
    std::string which;
    bool satisfied = true;
    std::vector<Inequality> inequalities;
    std::optional<std::pair<double, double>> theta_interval;
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::string> notes;

    void require(std::string id, double lhs, double rhs, Relation rel = Relation::Less);
    void flag(std::string id, bool ok);
    void value(std::string name, double v) { values.emplace_back(std::move(name), v); }
    const Inequality* find(const std::string& id) const;
    std::optional<double> find_value(const std::string& name) const;
};

// "which: satisfied" or "which: violated (id, id)"
std::string summary(const ConditionReport& r);

// one row per inequality: which, id, lhs, relation, rhs, holds
struct FlatCondition {
    std::string which, id, relation;
    double lhs, rhs;
    bool holds;
};
std::vector<FlatCondition> flatten(const ConditionReport& r);

// dense analysis forms n x n products; larger problems throw ProblemTooLarge
inline constexpr std::size_t kAnalysisMaxDim = 2000;

ConvergenceConstants constants(const GaveProblem& p, const GrmsConfig& cfg);
IterationMatrix2x2 build_T(const ConvergenceConstants& k, double theta);

// |a|1-theta| + theta a d - c beta| < 1  and
// c (theta alpha + 2 beta) < (1 - a)(1 - |1-theta| - theta d)
ConditionReport check_grms_conditions(const ConvergenceConstants& k, double theta);

// open theta interval guaranteed by a < 1, c beta < a d + 1, c(2 beta + alpha) < (1-a)(1-d)
ConditionReport theta_window(const ConvergenceConstants& k);

// sufficient condition stated for the named method itself (UnsupportedMethod for
// grms, which uses check_grms_conditions, and mams)
ConditionReport check_method_condition(const MethodSpec& spec, const GaveProblem& p);

// T_RMS (rms, fpi, msorlike), T_MGSOR (mgsor, mfpi, sor), T_NSOR (nsor)
IterationMatrix2x2 build_comparison_matrix(MatrixKind kind, const MethodSpec& spec,
                                           const GaveProblem& p);

// (I + U)^{n-1} > 0; throws NegativeEntry
bool is_irreducible(const DenseMatrix& u);

enum class Dominance { StrictOrder, NotComparable };
struct DominanceVerdict {
    Dominance kind = Dominance::NotComparable;
    double rho_small = 0.0, rho_big = 0.0;
};
// StrictOrder when 0 <= small <= big, small != big and small + big is irreducible
DominanceVerdict compare_dominance(const IterationMatrix2x2& small, const IterationMatrix2x2& big);

enum class Comparison { VsRms, VsMgsor, VsNsor };
Comparison comparison_for(Method other);  // throws UnsupportedPair

// every hypothesis of the GRMS-vs-other comparison, including the theta window
// bounds; cfg is the GRMS configuration, other the competing method
ConditionReport check_comparison_hypotheses(Comparison which, const GaveProblem& p,
                                            const GrmsConfig& cfg, const MethodSpec& other);

// Fixed-point region in (nu, tau), nu = ||A^{-1}||, with B = I
bool fpi_region_contains(double nu, double tau);
// the narrower region 0 < nu < sqrt(2)/2, (1 - s)/(1 - nu) < tau < (1 + s)/(1 + nu), s = sqrt(1 - nu^2)
bool fpi_earlier_region_contains(double nu, double tau);
// shift-splitting step bounds: 2(1 - a)/(1 - a + b) versus the earlier 2/(1 + a + b)
double fpiss_omega_bound(double a_hat, double b_hat);
double fpiss_earlier_omega_bound(double a_hat, double b_hat);

}  // namespace gave
