#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gave/solver.hpp"

namespace gave {

enum class Method {
    GRMS,
    RMS,
    SOR_like,
    ModifiedSOR_like,
    FPI,
    FPI_SS,
    NSOR,
    MFPI,
    MGSOR,
    MSOR,
    Picard,
    MN,
    NMS,
    SSMN,
    NSOR_like,
    MAMS,
};

// CLI spelling: grms, rms, sor, msorlike, fpi, fpiss, nsor, mfpi, mgsor, msor,
// picard, mn, nms, ssmn, nsorlike, mams
std::string_view method_key(Method m);
Method parse_method(std::string_view key);  // throws UnsupportedMethod
const std::vector<Method>& all_methods();
bool is_grms_family(Method m);

struct MethodSpec {
    Method name = Method::GRMS;
    std::map<std::string, double> params;
    std::map<std::string, DenseMatrix> matrix_params;

    bool has(const std::string& key) const { return params.count(key) != 0; }
    double get(const std::string& key) const;
};

struct ParamKeys {
    std::vector<std::string> required;
    std::vector<std::string> optional;
    std::vector<std::string> matrices;
};
const ParamKeys& param_keys(Method m);

// throws InvalidParams on unknown keys, missing required keys, bad values
void check_params(const MethodSpec& spec);

// theta the GRMS embedding runs with: explicit "theta", else the value under
// which the method's own convergence analysis is stated
double embedding_theta(const MethodSpec& spec);

using MethodConfig = std::variant<GrmsConfig, OneStepConfig>;
MethodConfig instantiate(const GaveProblem& p, const MethodSpec& spec);

// A = D - L - U: D diagonal, -L strictly lower part, -U strictly upper part
struct DluSplit {
    DenseMatrix D, L, U;
};
DluSplit d_l_u_split(const DenseMatrix& A);

}  // namespace gave
