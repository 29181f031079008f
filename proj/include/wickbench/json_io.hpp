#pragma once

// JSON and CSV forms of the value types:
//   ChaosExpansion   {"dim": n, "terms": [{"m": [...], "c": x}, ...]}
//   ExpCombo         {"dim": n, "terms": [{"coef": x, "h": [...]}, ...]}
//   DiscreteMeasure  {"dim": n, "atoms": [[...], ...], "weights": [...]}
// Points are CSV rows of n numbers.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "checks.hpp"
#include "chaos.hpp"
#include "exp_span.hpp"
#include "measures.hpp"
#include "report.hpp"

namespace wickbench {

using json = nlohmann::json;

/// Malformed configuration or parameter input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& require_key(const json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(what + ": missing key \"" + key + "\"");
    return j.at(key);
}

inline std::size_t read_dim(const json& j, const std::string& what) {
    const auto& d = require_key(j, "dim", what);
    if (!d.is_number_integer() || d.get<long long>() < 0) throw ConfigError(what + ": \"dim\" must be a nonnegative integer");
    return d.get<std::size_t>();
}

inline Vector read_vector(const json& j, std::size_t dim, const std::string& what) {
    if (!j.is_array()) throw ConfigError(what + ": expected an array of numbers");
    Vector v;
    for (const auto& x : j) {
        if (!x.is_number()) throw ConfigError(what + ": expected an array of numbers");
        v.push_back(x.get<double>());
    }
    if (v.size() != dim)
        throw ConfigError(what + ": length " + std::to_string(v.size()) + " does not match dim " + std::to_string(dim));
    return v;
}

inline double read_number(const json& j, const std::string& what) {
    if (!j.is_number()) throw ConfigError(what + ": expected a number");
    return j.get<double>();
}

}  // namespace detail

inline json to_json_value(const ChaosExpansion& f) {
    json terms = json::array();
    for (const auto& [m, c] : f.coeffs()) {
        json e = json::array();
        for (unsigned k : m.exponents()) e.push_back(k);
        terms.push_back({{"m", e}, {"c", c}});
    }
    return {{"dim", f.dim()}, {"terms", terms}};
}

inline json to_json_value(const ExpCombo& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) terms.push_back({{"coef", t.weight}, {"h", t.h}});
    return {{"dim", f.dim()}, {"terms", terms}};
}

inline json to_json_value(const DiscreteMeasure& nu) {
    return {{"dim", nu.dim()}, {"atoms", nu.atoms()}, {"weights", nu.weights()}};
}

inline json to_json_value(const TestFunction& f) {
    return std::visit([](const auto& g) { return to_json_value(g); }, f);
}

inline ChaosExpansion chaos_from_json(const json& j) {
    const std::string what = "chaos expansion";
    const auto dim = detail::read_dim(j, what);
    ChaosExpansion f(dim);
    const auto& terms = detail::require_key(j, "terms", what);
    if (!terms.is_array()) throw ConfigError(what + ": \"terms\" must be an array");
    for (const auto& t : terms) {
        const auto& m = detail::require_key(t, "m", what + " term");
        if (!m.is_array() || m.size() != dim) throw ConfigError(what + ": multi-index length must equal dim");
        std::vector<unsigned> e;
        for (const auto& x : m) {
            if (!x.is_number_integer() || x.get<long long>() < 0)
                throw ConfigError(what + ": multi-index entries must be nonnegative integers");
            e.push_back(x.get<unsigned>());
        }
        f.add_raw(MultiIndex(std::move(e)), detail::read_number(detail::require_key(t, "c", what + " term"), what));
    }
    return f.normalize();
}

inline ExpCombo exp_combo_from_json(const json& j) {
    const std::string what = "exponential combination";
    const auto dim = detail::read_dim(j, what);
    const auto& terms = detail::require_key(j, "terms", what);
    if (!terms.is_array()) throw ConfigError(what + ": \"terms\" must be an array");
    std::vector<ExpTerm> out;
    for (const auto& t : terms)
        out.push_back({detail::read_number(detail::require_key(t, "coef", what + " term"), what),
                       detail::read_vector(detail::require_key(t, "h", what + " term"), dim, what + " direction")});
    return ExpCombo(dim, std::move(out));
}

inline DiscreteMeasure measure_from_json(const json& j) {
    const std::string what = "measure";
    const auto dim = detail::read_dim(j, what);
    const auto& atoms = detail::require_key(j, "atoms", what);
    const auto& weights = detail::require_key(j, "weights", what);
    if (!atoms.is_array() || !weights.is_array()) throw ConfigError(what + ": atoms and weights must be arrays");
    std::vector<Vector> ys;
    for (const auto& a : atoms) ys.push_back(detail::read_vector(a, dim, what + " atom"));
    std::vector<double> ps;
    for (const auto& w : weights) ps.push_back(detail::read_number(w, what + " weight"));
    try {
        return DiscreteMeasure(dim, std::move(ys), std::move(ps));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

/// Accepts an explicit "kind" ("exp" or "chaos"); otherwise infers it from the term keys.
inline TestFunction function_from_json(const json& j) {
    std::string kind;
    if (j.is_object() && j.contains("kind")) {
        if (!j.at("kind").is_string()) throw ConfigError("function: \"kind\" must be a string");
        kind = j.at("kind").get<std::string>();
    } else {
        const auto& terms = detail::require_key(j, "terms", "function");
        if (!terms.is_array()) throw ConfigError("function: \"terms\" must be an array");
        kind = "exp";
        for (const auto& t : terms)
            if (t.is_object() && t.contains("m")) kind = "chaos";
    }
    if (kind == "exp") return exp_combo_from_json(j);
    if (kind == "chaos") return chaos_from_json(j);
    throw ConfigError("function: unknown kind \"" + kind + "\"");
}

inline json to_json_value(const InequalityReport& r) {
    return {{"check", r.check}, {"params", r.params}, {"lhs", r.lhs},  {"rhs", r.rhs},
            {"gap", r.gap},     {"tol", r.tol},       {"pass", r.pass}, {"method", r.method()},
            {"details", r.details}};
}

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string reports_to_csv(const std::vector<InequalityReport>& rows) {
    std::ostringstream os;
    os << "check,params,lhs,rhs,gap,tol,pass,method\n";
    for (const auto& r : rows)
        os << r.check << ',' << csv_quote(r.params.dump()) << ',' << format_double(r.lhs) << ','
           << format_double(r.rhs) << ',' << format_double(r.gap) << ',' << format_double(r.tol) << ','
           << (r.pass ? "true" : "false") << ',' << r.method() << '\n';
    return os.str();
}

inline std::string reports_to_json(const std::vector<InequalityReport>& rows) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(to_json_value(r));
    return arr.dump(2) + "\n";
}

/// Reads one point per row; blank lines and lines starting with '#' are skipped.
inline std::vector<Vector> read_points_csv(std::istream& in) {
    std::vector<Vector> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        Vector v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                throw ConfigError("points csv: bad number on line " + std::to_string(lineno));
            }
        }
        if (!pts.empty() && v.size() != pts.front().size())
            throw ConfigError("points csv: inconsistent row length on line " + std::to_string(lineno));
        pts.push_back(std::move(v));
    }
    return pts;
}

inline void write_points_csv(std::ostream& out, const std::vector<Vector>& pts) {
    for (const auto& p : pts) {
        for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << format_double(p[k]);
        out << '\n';
    }
}

}  // namespace wickbench
