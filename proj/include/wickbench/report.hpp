#pragma once

#include <string>

#include <json.hpp>

namespace wickbench {

/// How one side of a checked inequality was computed.
enum class Method { exact, quadrature, mc };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::quadrature: return "quadrature";
        case Method::mc: return "mc";
    }
    return "?";
}

/// Default tolerances per computation path.
struct Tolerances {
    double exact = 1e-9;
    /// Relative to max(1, |lhs|, |rhs|).
    double quadrature = 1e-6;
    /// Multiples of the Monte Carlo standard error.
    double mc_se = 4.0;
    double psd_floor = 1e-10;
};

/// Outcome of one inequality or PSD claim. The claim is lhs <= rhs, and pass <=> gap >= -tol.
/// PSD rows use lhs = 0 and rhs = minimum eigenvalue.
struct InequalityReport {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double tol = 0.0;
    bool pass = false;
    Method lhs_method = Method::exact;
    Method rhs_method = Method::exact;
    /// Intermediate quantities (individual integrals, eigenvalues); JSON output only.
    nlohmann::json details = nlohmann::json::object();

    std::string method() const { return std::string(to_string(lhs_method)) + "|" + to_string(rhs_method); }

    /// Recomputes pass from gap and tol.
    InequalityReport& finish() {
        pass = gap >= -tol;
        return *this;
    }

    /// Debug path: swaps the two sides so that a strict inequality is reported as violated.
    InequalityReport& negate() {
        std::swap(lhs, rhs);
        std::swap(lhs_method, rhs_method);
        gap = -gap;
        details["negated"] = true;
        return finish();
    }
};

inline InequalityReport make_report(std::string check, nlohmann::json params, double lhs, double rhs, double tol,
                                    Method lm = Method::exact, Method rm = Method::exact) {
    InequalityReport r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.gap = rhs - lhs;
    r.tol = tol;
    r.lhs_method = lm;
    r.rhs_method = rm;
    return r.finish();
}

/// PSD certificate row: lhs = 0, rhs = gap = smallest eigenvalue.
inline InequalityReport make_psd_report(std::string check, nlohmann::json params, double min_eig, double floor) {
    return make_report(std::move(check), std::move(params), 0.0, min_eig, floor);
}

}  // namespace wickbench
