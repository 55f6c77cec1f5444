#include "gave/presets.hpp"

#include <algorithm>
#include <cmath>

#include "gave/errors.hpp"

namespace gave {

namespace {

struct Entry {
    Method method;
    std::string_view key;
    ParamKeys keys;
};

const std::vector<Entry>& catalog() {
    static const std::vector<Entry> table = {
        {Method::GRMS, "grms", {{}, {"theta", "zeta", "q", "q1"}, {"M", "Q", "Q1", "H"}}},
        {Method::RMS, "rms", {{"tau"}, {"theta"}, {"M"}}},
        {Method::SOR_like, "sor", {{"omega"}, {"theta"}, {}}},
        {Method::ModifiedSOR_like, "msorlike", {{"omega"}, {"theta"}, {}}},
        {Method::FPI, "fpi", {{"tau"}, {"theta"}, {}}},
        {Method::FPI_SS, "fpiss", {{"alpha", "omega"}, {"theta"}, {}}},
        {Method::NSOR, "nsor", {{"omega", "sigma"}, {"theta"}, {}}},
        {Method::MFPI, "mfpi", {{"tau"}, {"theta", "q"}, {"Q"}}},
        {Method::MGSOR, "mgsor", {{"alpha", "beta"}, {"theta", "q"}, {"Q"}}},
        {Method::MSOR, "msor", {{"alpha", "omega"}, {"theta"}, {}}},
        {Method::Picard, "picard", {{}, {}, {}}},
        {Method::MN, "mn", {{}, {}, {"Omega"}}},
        {Method::NMS, "nms", {{}, {}, {"M", "Omega"}}},
        {Method::SSMN, "ssmn", {{}, {}, {"Omega"}}},
        {Method::NSOR_like, "nsorlike", {{"alpha"}, {}, {"Omega"}}},
        {Method::MAMS, "mams", {{"beta"}, {}, {"M", "Omega"}}},
    };
    return table;
}

const Entry& entry(Method m) {
    for (const auto& e : catalog())
        if (e.method == m) return e;
    throw UnsupportedMethod("unknown method");
}

bool contains(const std::vector<std::string>& v, const std::string& k) {
    return std::find(v.begin(), v.end(), k) != v.end();
}

}  // namespace

std::string_view method_key(Method m) { return entry(m).key; }

Method parse_method(std::string_view key) {
    for (const auto& e : catalog())
        if (e.key == key) return e.method;
    throw UnsupportedMethod("unknown method '" + std::string(key) + "'");
}

const std::vector<Method>& all_methods() {
    static const std::vector<Method> ms = [] {
        std::vector<Method> v;
        for (const auto& e : catalog()) v.push_back(e.method);
        return v;
    }();
    return ms;
}

bool is_grms_family(Method m) {
    switch (m) {
        case Method::Picard:
        case Method::MN:
        case Method::NMS:
        case Method::SSMN:
        case Method::NSOR_like:
        case Method::MAMS: return false;
        default: return true;
    }
}

const ParamKeys& param_keys(Method m) { return entry(m).keys; }

double MethodSpec::get(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end())
        throw InvalidParams(std::string(method_key(name)) + ": missing parameter '" + key + "'");
    return it->second;
}

void check_params(const MethodSpec& spec) {
    const ParamKeys& keys = param_keys(spec.name);
    std::string who(method_key(spec.name));
    for (const auto& [k, v] : spec.params) {
        if (!contains(keys.required, k) && !contains(keys.optional, k))
            throw InvalidParams(who + " does not take parameter '" + k + "'");
        if (!std::isfinite(v)) throw InvalidParams(who + ": parameter '" + k + "' is not finite");
        bool signed_ok = k == "zeta" || (spec.name == Method::MAMS && k == "beta");
        if (k == "q" || k == "q1") {
            if (v == 0.0) throw InvalidParams(who + ": '" + k + "' must be nonzero");
        } else if (!signed_ok && !(v > 0.0)) {
            throw InvalidParams(who + ": '" + k + "' must be positive");
        }
    }
    for (const auto& k : keys.required)
        if (!spec.has(k)) throw InvalidParams(who + ": missing parameter '" + k + "'");
    for (const auto& [k, m] : spec.matrix_params) {
        if (!contains(keys.matrices, k))
            throw InvalidParams(who + " does not take matrix parameter '" + k + "'");
        if (!m.is_square()) throw InvalidParams(who + ": matrix '" + k + "' must be square");
    }
    if (spec.name == Method::MSOR && spec.get("omega") == 2.0)
        throw InvalidParams("msor: omega must differ from 2");
}

double embedding_theta(const MethodSpec& spec) {
    if (spec.has("theta")) return spec.get("theta");
    switch (spec.name) {
        case Method::RMS:
        case Method::FPI:
        case Method::MFPI: return spec.get("tau");
        case Method::SOR_like:
        case Method::ModifiedSOR_like:
        case Method::FPI_SS:
        case Method::MSOR: return spec.get("omega");
        case Method::MGSOR: return spec.get("beta");
        default: return 1.0;
    }
}

DluSplit d_l_u_split(const DenseMatrix& A) {
    if (!A.is_square()) throw NonSquare("d_l_u_split needs a square matrix");
    std::size_t n = A.rows();
    DluSplit s{DenseMatrix::banded(n, 0, 0), DenseMatrix::banded(n, A.lower_bandwidth(), 0),
               DenseMatrix::banded(n, 0, A.upper_bandwidth())};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = A.row_begin(i); j < A.row_end(i); ++j) {
            double v = A(i, j);
            if (j == i) s.D.at(i, i) = v;
            else if (j < i) s.L.at(i, j) = -v;
            else s.U.at(i, j) = -v;
        }
    return s;
}

namespace {

std::size_t dim_of(const GaveProblem& p) { return p.dim(); }

DenseMatrix matrix_or(const MethodSpec& spec, const std::string& key, DenseMatrix fallback,
                      std::size_t n) {
    auto it = spec.matrix_params.find(key);
    if (it == spec.matrix_params.end()) return fallback;
    if (it->second.rows() != n)
        throw DimensionMismatch(std::string(method_key(spec.name)) + ": matrix '" + key +
                                "' has the wrong size");
    return it->second;
}

double param_or(const MethodSpec& spec, const std::string& key, double fallback) {
    return spec.has(key) ? spec.get(key) : fallback;
}

DenseMatrix diag_of(const DenseMatrix& A) { return d_l_u_split(A).D; }

// D - (3/4) L, the lower-triangular splitting used by the experiment presets
DenseMatrix relaxed_lower(const DenseMatrix& A) {
    DluSplit s = d_l_u_split(A);
    return s.D - 0.75 * s.L;
}

GrmsConfig mgsor_embedding(const GaveProblem& p, double alpha, double beta, const DenseMatrix& Qm,
                           double theta) {
    LinearOperator M(DenseMatrix((1.0 / alpha) * p.A));
    LinearOperator N = M - LinearOperator(p.A);
    LinearOperator Q(Qm);
    LinearOperator Q1((theta / beta) * Qm);
    return make_grms_config(M, N, Q, Q1, LinearOperator::zero(dim_of(p)), theta);
}

// M = A/(alpha omega), Q = I, Q1 = theta (2 - omega)/(2 omega) B^{-1},
// H = theta (1 - alpha omega)/(alpha omega) B^{-1} A
GrmsConfig msor_embedding(const GaveProblem& p, double alpha, double omega, double theta) {
    std::size_t n = dim_of(p);
    double aw = alpha * omega;
    LinearOperator M(DenseMatrix((1.0 / aw) * p.A));
    LinearOperator N = M - LinearOperator(p.A);
    LinearOperator Q1, H;
    try {
        Q1 = LinearOperator::inverse_of(p.B, theta * (2.0 - omega) / (2.0 * omega));
        H = LinearOperator::inverse_times(p.B, p.A, theta * (1.0 - aw) / aw);
    } catch (const SingularMatrix& e) {
        throw InvalidParams(std::string("B must be nonsingular: ") + e.what());
    }
    return make_grms_config(M, N, LinearOperator::identity(n), Q1, H, theta);
}

GrmsConfig scaled_identity_embedding(const GaveProblem& p, DenseMatrix M, double relax,
                                     double theta) {
    std::size_t n = dim_of(p);
    LinearOperator Mo(std::move(M));
    LinearOperator N = Mo - LinearOperator(p.A);
    return make_grms_config(Mo, N, LinearOperator::identity(n),
                            LinearOperator::identity(n, theta / relax), LinearOperator::zero(n),
                            theta);
}

OneStepConfig one_step(DenseMatrix M1, DenseMatrix N1, double momentum = 0.0) {
    return OneStepConfig{LinearOperator(std::move(M1)), LinearOperator(std::move(N1)), momentum};
}

void require_invertible(const DenseMatrix& q, const char* what) {
    try {
        LuFactorization f(q);
    } catch (const SingularMatrix&) {
        throw InvalidParams(std::string(what) + " must be nonsingular");
    }
}

}  // namespace

MethodConfig instantiate(const GaveProblem& p, const MethodSpec& spec) {
    check_params(spec);
    const std::size_t n = dim_of(p);
    const DenseMatrix I = DenseMatrix::identity(n);
    const double theta = embedding_theta(spec);

    switch (spec.name) {
        case Method::GRMS: {
            double zeta = param_or(spec, "zeta", 0.0);
            LinearOperator M(matrix_or(spec, "M", relaxed_lower(p.A), n));
            LinearOperator N = M - LinearOperator(p.A);
            LinearOperator Q(matrix_or(spec, "Q", DenseMatrix::identity(n, param_or(spec, "q", 10.5)), n));
            LinearOperator Q1(matrix_or(spec, "Q1", DenseMatrix::identity(n, param_or(spec, "q1", 10.0)), n));
            LinearOperator H(matrix_or(spec, "H", DenseMatrix::identity(n, -theta * zeta), n));
            return make_grms_config(M, N, Q, Q1, H, theta);
        }
        case Method::RMS:
            return scaled_identity_embedding(p, matrix_or(spec, "M", p.A, n), spec.get("tau"), theta);
        case Method::SOR_like: {
            double w = spec.get("omega");
            return mgsor_embedding(p, w, w, I, theta);
        }
        case Method::ModifiedSOR_like: {
            double w = spec.get("omega");
            DluSplit s = d_l_u_split(p.A);
            return scaled_identity_embedding(p, (1.0 / w) * s.D - s.L, w, theta);
        }
        case Method::FPI:
            return scaled_identity_embedding(p, p.A, spec.get("tau"), theta);
        case Method::FPI_SS:
            return scaled_identity_embedding(p, 0.5 * (DenseMatrix::identity(n, spec.get("alpha")) + p.A),
                                             spec.get("omega"), theta);
        case Method::NSOR: {
            double w = spec.get("omega"), sg = spec.get("sigma");
            return msor_embedding(p, (2.0 * sg + w) / 2.0, 2.0 * w / (2.0 * sg + w), theta);
        }
        case Method::MFPI:
        case Method::MGSOR: {
            DenseMatrix Qm = matrix_or(spec, "Q", DenseMatrix::identity(n, param_or(spec, "q", 1.0)), n);
            require_invertible(Qm, "Q");
            bool mfpi = spec.name == Method::MFPI;
            return mgsor_embedding(p, mfpi ? 1.0 : spec.get("alpha"),
                                   mfpi ? spec.get("tau") : spec.get("beta"), Qm, theta);
        }
        case Method::MSOR:
            return msor_embedding(p, spec.get("alpha"), spec.get("omega"), theta);
        case Method::Picard:
            return one_step(p.A, DenseMatrix::banded(n, 0, 0));
        case Method::MN: {
            DenseMatrix W = matrix_or(spec, "Omega", diag_of(p.A), n);
            return one_step(p.A + W, W);
        }
        case Method::NMS: {
            DenseMatrix M = matrix_or(spec, "M", p.A, n);
            DenseMatrix W = matrix_or(spec, "Omega", diag_of(p.A), n);
            return one_step(M + W, (M - p.A) + W);
        }
        case Method::SSMN: {
            DenseMatrix W = matrix_or(spec, "Omega", diag_of(p.A), n);
            return one_step(0.5 * (p.A + W), 0.5 * (W - p.A));
        }
        case Method::NSOR_like: {
            double a = spec.get("alpha");
            DenseMatrix W = matrix_or(spec, "Omega", diag_of(p.A), n);
            DluSplit s = d_l_u_split(p.A);
            return one_step((1.0 / a) * (s.D + a * W - a * s.L),
                            (1.0 / a) * (a * W + (1.0 - a) * s.D + a * s.U));
        }
        case Method::MAMS: {
            DenseMatrix M = matrix_or(spec, "M", relaxed_lower(p.A), n);
            DenseMatrix W = matrix_or(spec, "Omega", diag_of(p.A), n);
            return one_step(M + W, (M - p.A) + W, spec.get("beta"));
        }
    }
    throw UnsupportedMethod("unhandled method");
}

}  // namespace gave
