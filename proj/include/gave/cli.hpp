#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gave/analysis.hpp"
#include "gave/examples.hpp"

namespace gave::cli {

// ex41 | ex42 | ex43 | ex51[:m=60,blocks=60] | ex52[:...] | picard-remark:1|2 | files:A,B,b
struct ProblemSpec {
    enum class Kind { Builtin, Files };
    Kind kind = Kind::Builtin;
    std::string name;
    std::size_t m = 60;
    std::size_t blocks = 60;  // defaults to m
    int which = 1;
    std::vector<std::string> paths;
    std::string text;
};

ProblemSpec parse_problem_spec(const std::string& text);  // throws ParseError

struct LoadedProblem {
    ProblemSpec spec;
    GaveProblem problem;
    std::optional<ComparisonExample> example;
    bool block_family = false;  // ex51 / ex52
};

LoadedProblem load(const ProblemSpec& spec);

// "k=v,k=v"; throws ParseError
std::map<std::string, double> parse_params(const std::string& text);

// fills problem companions: the example's own configuration for ex41-43,
// q = 10.5 for mfpi / mgsor on the block families
MethodSpec resolve_method(const LoadedProblem& lp, Method m, std::map<std::string, double> params);

// paper-default | zeros | file:PATH
Vector initial_vector(const LoadedProblem& lp, const std::string& mode);

struct RunRecord {
    std::string problem;
    std::string method;
    std::map<std::string, double> params;
    std::size_t it = 0;
    double res = 0.0;
    std::string status;
    double wall_time_s = 0.0;  // single measurement, not reproducible
    std::string condition;
    std::optional<double> rho_T;
    std::optional<std::size_t> expected_it;

    bool operator==(const RunRecord&) const = default;
};

std::string format_double(double v);
std::string format_params(const std::map<std::string, double>& p);

std::string to_csv(const std::vector<RunRecord>& rows);
std::vector<RunRecord> parse_csv(const std::string& text);  // throws ParseError
nlohmann::json to_json(const RunRecord& r);
nlohmann::json to_json(const std::vector<RunRecord>& rows);

// RFC 4180 helpers
std::string csv_field(const std::string& s);
std::vector<std::vector<std::string>> parse_csv_rows(const std::string& text);

enum class ConditionMode { Evaluate, Skip };

struct RunRequest {
    double tol = 1e-8;
    std::size_t max_iter = 500;
    std::string x0 = "paper-default";
    ConditionMode conditions = ConditionMode::Evaluate;
};

struct RunResult {
    RunRecord record;
    IterationOutcome outcome;
};

RunResult run_method(const LoadedProblem& lp, const MethodSpec& spec, const RunRequest& req);

// condition summary for a run record; "n/a" when the method has none or the
// problem exceeds the dense analysis limit
std::string condition_summary(const LoadedProblem& lp, const MethodSpec& spec,
                              std::optional<double>* rho_T = nullptr);

nlohmann::json cmd_analyze(const LoadedProblem& lp, const MethodSpec& spec);

struct CompareResult {
    nlohmann::json report;
    RunResult a, b;
};
CompareResult cmd_compare(const LoadedProblem& lp, const MethodSpec& a, const MethodSpec& b,
                          const RunRequest& req);

struct GridAxis {
    std::string name;
    std::vector<double> values;
};
// name=lo:hi:step
GridAxis parse_grid_axis(const std::string& text);
inline constexpr std::size_t kMaxGridCells = 1000000;

// full factorial run; rows sorted converged-first, then IT, then RES, ties in grid order
std::vector<RunRecord> cmd_sweep(const LoadedProblem& lp, Method m,
                                 const std::map<std::string, double>& fixed,
                                 const std::vector<GridAxis>& grid, const RunRequest& req,
                                 std::size_t threads = 0);
std::size_t sweep_threads();  // GAVE_KIT_THREADS, else hardware concurrency

struct TableFixture {
    Method method;
    // one parameter set and expected IT per m
    std::vector<std::map<std::string, double>> params;
    std::vector<std::optional<std::size_t>> expected_it;
};
const std::vector<std::size_t>& table_sizes();  // 60, 80, 90, 100, 110
const std::vector<TableFixture>& table_fixtures(int table);

// blocks = 0 means blocks = m
std::vector<RunRecord> reproduce_table(int table, const std::vector<std::size_t>& ms,
                                       std::size_t blocks, ConditionMode conditions);
nlohmann::json reproduce_example(const std::string& name);  // ex41 | ex42 | ex43
nlohmann::json reproduce_picard_remark();

// flatten a JSON document into path,value CSV rows
std::string json_to_csv(const nlohmann::json& j);

}  // namespace gave::cli
