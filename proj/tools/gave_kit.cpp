#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gave/cli.hpp"
#include "gave/errors.hpp"

using namespace gave;
using namespace gave::cli;

namespace {

struct Common {
    std::string problem;
    std::string method;
    std::string params;
    std::string output = "csv";
    std::string out;
};

struct Stop {
    double tol = 1e-8;
    std::size_t max_iter = 500;
    std::string x0 = "paper-default";
    std::string trace;
};

void add_common(CLI::App* cmd, Common& c, bool method_required = true) {
    cmd->add_option("--problem", c.problem, "ex41 | ex42 | ex43 | ex51[:m=,blocks=] | ex52[:...] | picard-remark:1|2 | files:A,B,b")
        ->required();
    auto* m = cmd->add_option("--method", c.method, "grms, rms, sor, msorlike, fpi, fpiss, nsor, mfpi, mgsor, msor, picard, mn, nms, ssmn, nsorlike, mams");
    if (method_required) m->required();
    cmd->add_option("--params", c.params, "k=v[,k=v...]");
    cmd->add_option("--output", c.output, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out, "write output to FILE instead of stdout");
}

void add_stop(CLI::App* cmd, Stop& s) {
    cmd->add_option("--tol", s.tol, "RES tolerance");
    cmd->add_option("--max-iter", s.max_iter, "iteration cap");
    cmd->add_option("--x0", s.x0, "paper-default | zeros | file:PATH");
    cmd->add_option("--trace", s.trace, "residual history CSV");
}

RunRequest request(const Stop& s) {
    RunRequest r;
    r.tol = s.tol;
    r.max_iter = s.max_iter;
    r.x0 = s.x0;
    return r;
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + c.out + "'");
    f << text;
}

std::string records_text(const Common& c, const std::vector<RunRecord>& rows) {
    return c.output == "json" ? to_json(rows).dump(2) : to_csv(rows);
}

std::string doc_text(const Common& c, const nlohmann::json& j) {
    return c.output == "json" ? j.dump(2) : json_to_csv(j);
}

void write_trace(const std::string& path, const std::vector<const std::vector<double>*>& series) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + path + "'");
    f << "iteration";
    if (series.size() == 1) f << ",res";
    else f << ",res_a,res_b";
    f << "\r\n";
    std::size_t len = 0;
    for (auto* s : series) len = std::max(len, s->size());
    for (std::size_t k = 0; k < len; ++k) {
        f << k + 1;
        for (auto* s : series) f << ',' << (k < s->size() ? format_double((*s)[k]) : "");
        f << "\r\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and analysis kit for generalized absolute value equations Ax - B|x| = b"};
    app.require_subcommand(1);

    Common solve_c, analyze_c, compare_c, sweep_c, repro_c;
    Stop solve_s, compare_s, sweep_s;

    auto* solve = app.add_subcommand("solve", "run one method");
    add_common(solve, solve_c);
    add_stop(solve, solve_s);

    auto* analyze = app.add_subcommand("analyze", "constants, T, rho(T) and condition verdicts");
    add_common(analyze, analyze_c);

    auto* compare = app.add_subcommand("compare", "comparison-theorem check and iteration race");
    add_common(compare, compare_c);
    add_stop(compare, compare_s);
    compare_s.tol = 1e-9;
    std::string against, against_params;
    compare->add_option("--against", against, "second method")->required();
    compare->add_option("--against-params", against_params, "k=v[,k=v...] for the second method");

    auto* sweep = app.add_subcommand("sweep", "full factorial parameter sweep");
    add_common(sweep, sweep_c);
    add_stop(sweep, sweep_s);
    std::vector<std::string> grid;
    sweep->add_option("--grid", grid, "name=lo:hi:step (up to three)")->required();

    auto* repro = app.add_subcommand("reproduce", "published tables and examples");
    std::string target;
    std::vector<std::size_t> ms;
    std::size_t blocks = 0;
    bool with_conditions = false;
    repro->add_option("target", target, "table1 | table2 | ex41 | ex42 | ex43 | picard-remark")
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "ex41", "ex42", "ex43", "picard-remark"}));
    repro->add_option("--m", ms, "restrict the block size m (tables)");
    repro->add_option("--blocks", blocks, "block rows (tables; default: m)");
    repro->add_flag("--conditions", with_conditions, "evaluate condition summaries (dense, slow)");
    repro->add_option("--output", repro_c.output, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    repro->add_option("--out", repro_c.out, "write output to FILE instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*solve) {
            LoadedProblem lp = load(parse_problem_spec(solve_c.problem));
            MethodSpec spec = resolve_method(lp, parse_method(solve_c.method), parse_params(solve_c.params));
            RunResult rr = run_method(lp, spec, request(solve_s));
            if (!solve_s.trace.empty()) write_trace(solve_s.trace, {&rr.outcome.res_history});
            emit(solve_c, records_text(solve_c, {rr.record}));
            return 0;
        }
        if (*analyze) {
            LoadedProblem lp = load(parse_problem_spec(analyze_c.problem));
            MethodSpec spec = resolve_method(lp, parse_method(analyze_c.method), parse_params(analyze_c.params));
            emit(analyze_c, doc_text(analyze_c, cmd_analyze(lp, spec)));
            return 0;
        }
        if (*compare) {
            LoadedProblem lp = load(parse_problem_spec(compare_c.problem));
            MethodSpec a = resolve_method(lp, parse_method(compare_c.method), parse_params(compare_c.params));
            MethodSpec b = resolve_method(lp, parse_method(against), parse_params(against_params));
            CompareResult cr = cmd_compare(lp, a, b, request(compare_s));
            if (!compare_s.trace.empty())
                write_trace(compare_s.trace, {&cr.a.outcome.res_history, &cr.b.outcome.res_history});
            emit(compare_c, doc_text(compare_c, cr.report));
            return 0;
        }
        if (*sweep) {
            LoadedProblem lp = load(parse_problem_spec(sweep_c.problem));
            std::vector<GridAxis> axes;
            for (const auto& g : grid) axes.push_back(parse_grid_axis(g));
            auto rows = cmd_sweep(lp, parse_method(sweep_c.method), parse_params(sweep_c.params), axes,
                                  request(sweep_s));
            emit(sweep_c, records_text(sweep_c, rows));
            for (const auto& r : rows)
                if (r.status == "Error") return 1;
            return 0;
        }
        if (*repro) {
            if (target == "table1" || target == "table2") {
                if (ms.empty()) ms = table_sizes();
                auto rows = reproduce_table(target == "table1" ? 1 : 2, ms, blocks,
                                            with_conditions ? ConditionMode::Evaluate : ConditionMode::Skip);
                emit(repro_c, records_text(repro_c, rows));
            } else if (target == "picard-remark") {
                emit(repro_c, doc_text(repro_c, reproduce_picard_remark()));
            } else {
                emit(repro_c, doc_text(repro_c, reproduce_example(target)));
            }
            return 0;
        }
    } catch (const gave::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
