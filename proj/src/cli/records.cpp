#include <charconv>
#include <sstream>

#include "gave/cli.hpp"
#include "gave/errors.hpp"

namespace gave::cli {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw ParseError("cannot format number");
    return std::string(buf, end);
}

namespace {

double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
        throw ParseError(std::string("bad ") + what + " '" + s + "'");
    return v;
}

std::size_t parse_count(const std::string& s, const char* what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParseError(std::string("bad ") + what + " '" + s + "'");
    return v;
}

const std::vector<std::string> kColumns = {"problem", "method",      "params",      "it",
                                           "res",     "status",      "wall_time_s", "condition",
                                           "rho_T",   "expected_it", "it_diff"};

}  // namespace

std::string format_params(const std::map<std::string, double>& p) {
    std::string out;
    for (const auto& [k, v] : p) {
        if (!out.empty()) out += ';';
        out += k + "=" + format_double(v);
    }
    return out;
}

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError("parameter '" + item + "' is not of the form key=value");
        std::string key = item.substr(0, eq);
        if (out.count(key)) throw ParseError("parameter '" + key + "' given twice");
        out[key] = parse_double(item.substr(eq + 1), "parameter value");
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, field_started = false;
    std::size_t i = 0;
    auto end_row = [&] {
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        field_started = false;
    };
    while (i < text.size()) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty()) throw ParseError("stray quote inside an unquoted CSV field");
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            field_started = true;
        } else if (c == '\r' || c == '\n') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_row();
        } else {
            field += c;
            field_started = true;
        }
        ++i;
    }
    if (quoted) throw ParseError("unterminated quoted CSV field");
    if (field_started || !field.empty() || !row.empty()) end_row();
    return rows;
}

std::string to_csv(const std::vector<RunRecord>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < kColumns.size(); ++i) os << (i ? "," : "") << kColumns[i];
    os << "\r\n";
    for (const auto& r : rows) {
        std::string diff;
        if (r.expected_it)
            diff = std::to_string(static_cast<long long>(r.it) - static_cast<long long>(*r.expected_it));
        std::vector<std::string> f = {r.problem,
                                      r.method,
                                      format_params(r.params),
                                      std::to_string(r.it),
                                      format_double(r.res),
                                      r.status,
                                      format_double(r.wall_time_s),
                                      r.condition,
                                      r.rho_T ? format_double(*r.rho_T) : "",
                                      r.expected_it ? std::to_string(*r.expected_it) : "",
                                      diff};
        for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << csv_field(f[i]);
        os << "\r\n";
    }
    return os.str();
}

std::vector<RunRecord> parse_csv(const std::string& text) {
    auto rows = parse_csv_rows(text);
    if (rows.empty() || rows[0] != kColumns) throw ParseError("unexpected run-record CSV header");
    std::vector<RunRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        if (f.size() != kColumns.size())
            throw ParseError("run-record CSV row " + std::to_string(i) + " has " +
                             std::to_string(f.size()) + " fields");
        RunRecord r;
        r.problem = f[0];
        r.method = f[1];
        std::string params = f[2];
        for (auto& c : params)
            if (c == ';') c = ',';
        r.params = parse_params(params);
        r.it = parse_count(f[3], "it");
        r.res = parse_double(f[4], "res");
        r.status = f[5];
        r.wall_time_s = parse_double(f[6], "wall time");
        r.condition = f[7];
        if (!f[8].empty()) r.rho_T = parse_double(f[8], "rho_T");
        if (!f[9].empty()) r.expected_it = parse_count(f[9], "expected_it");
        out.push_back(std::move(r));
    }
    return out;
}

nlohmann::json to_json(const RunRecord& r) {
    nlohmann::json j;
    j["problem"] = r.problem;
    j["method"] = r.method;
    j["params"] = r.params;
    j["it"] = r.it;
    j["res"] = r.res;
    j["status"] = r.status;
    j["wall_time_s"] = r.wall_time_s;
    j["condition"] = r.condition;
    j["rho_T"] = r.rho_T ? nlohmann::json(*r.rho_T) : nlohmann::json(nullptr);
    if (r.expected_it) {
        j["expected_it"] = *r.expected_it;
        j["it_diff"] = static_cast<long long>(r.it) - static_cast<long long>(*r.expected_it);
    } else {
        j["expected_it"] = nullptr;
    }
    return j;
}

nlohmann::json to_json(const std::vector<RunRecord>& rows) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : rows) a.push_back(to_json(r));
    return a;
}

namespace {

void flatten_json(const nlohmann::json& j, const std::string& path,
                  std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_json(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_json(j[i], path + "[" + std::to_string(i) + "]", out);
    } else if (j.is_string()) {
        out.emplace_back(path, j.get<std::string>());
    } else if (j.is_number_float()) {
        out.emplace_back(path, format_double(j.get<double>()));
    } else {
        out.emplace_back(path, j.dump());
    }
}

}  // namespace

std::string json_to_csv(const nlohmann::json& j) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten_json(j, "", rows);
    std::string out = "key,value\r\n";
    for (const auto& [k, v] : rows) out += csv_field(k) + "," + csv_field(v) + "\r\n";
    return out;
}

}  // namespace gave::cli
