#pragma once

// The inequality and positivity checks. Each returns InequalityReport rows whose
// numerical params are filled in; callers attach descriptors for f and nu.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

#include "chaos.hpp"
#include "exp_span.hpp"
#include "linalg.hpp"
#include "measures.hpp"
#include "products.hpp"
#include "quadrature.hpp"
#include "report.hpp"

namespace wickbench {

/// A test function is either a combination of exponentials or a polynomial chaos expansion.
using TestFunction = std::variant<ExpCombo, ChaosExpansion>;

inline std::size_t dim_of(const TestFunction& f) {
    return std::visit([](const auto& g) { return g.dim(); }, f);
}

inline double eval(const TestFunction& f, std::span<const double> w) {
    return std::visit(
        [&](const auto& g) {
            if constexpr (std::is_same_v<std::decay_t<decltype(g)>, ExpCombo>)
                return exp_eval(g, w);
            else
                return eval_chaos(g, w);
        },
        f);
}

namespace detail {

inline void check_alpha(double alpha, const char* who) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error(std::string(who) + ": alpha must lie in [0,1]");
}

}  // namespace detail

/// The three rho-integrals entering the main inequality.
struct BecknerIntegrals {
    double square = 0.0;         // integral of f^2
    double alpha_product = 0.0;  // integral of f o_alpha f
    double energy = 0.0;         // integral of ||Df||^2
};

inline BecknerIntegrals beckner_integrals(const ExpCombo& f, const ConvolutionMeasure& rho, double alpha) {
    require_dim(f.dim(), rho.dim());
    BecknerIntegrals out;
    out.square = rho_integral_exp(pointwise_exp(f, f), rho);
    out.alpha_product = rho_integral_exp(alpha_exp(f, f, alpha), rho);
    for (const auto& g : gradient_exp(f)) out.energy += rho_integral_exp(pointwise_exp(g, g), rho);
    return out;
}

inline BecknerIntegrals beckner_integrals(const ChaosExpansion& f, const ConvolutionMeasure& rho, double alpha) {
    require_dim(f.dim(), rho.dim());
    BecknerIntegrals out;
    out.square = rho_integral_chaos(pointwise_chaos(f, f), rho);
    out.alpha_product = rho_integral_chaos(alpha_chaos(f, f, alpha), rho);
    for (const auto& g : gradient(f)) out.energy += rho_integral_chaos(pointwise_chaos(g, g), rho);
    return out;
}

inline BecknerIntegrals beckner_integrals(const TestFunction& f, const ConvolutionMeasure& rho, double alpha) {
    return std::visit([&](const auto& g) { return beckner_integrals(g, rho, alpha); }, f);
}

inline nlohmann::json integrals_json(const BecknerIntegrals& b) {
    return {{"int_f_squared", b.square}, {"int_f_alpha_f", b.alpha_product}, {"int_grad_squared", b.energy}};
}

/// int f^2 drho - int f o_alpha f drho <= (1 - alpha) int ||Df||^2 drho.
inline InequalityReport beckner_deficit(const TestFunction& f, const ConvolutionMeasure& rho, double alpha,
                                        double tol = Tolerances{}.exact) {
    detail::check_alpha(alpha, "beckner_deficit");
    const auto b = beckner_integrals(f, rho, alpha);
    auto r = make_report("beckner_deficit", {{"alpha", alpha}}, b.square - b.alpha_product, (1.0 - alpha) * b.energy,
                         tol);
    r.details = integrals_json(b);
    return r;
}

/// int f o_alpha f drho <= int f^2 drho.
inline InequalityReport left_positivity(const TestFunction& f, const ConvolutionMeasure& rho, double alpha,
                                        double tol = Tolerances{}.exact) {
    detail::check_alpha(alpha, "left_positivity");
    const auto b = beckner_integrals(f, rho, alpha);
    auto r = make_report("left_positivity", {{"alpha", alpha}}, b.alpha_product, b.square, tol);
    r.details = integrals_json(b);
    return r;
}

/// a_jk = e^{alpha s} - e^{s} + (1 - alpha) e^{s} s with s = <h_j, h_k>.
inline RealMatrix a_matrix(std::span<const Vector> hs, double alpha) {
    const auto n = static_cast<Eigen::Index>(hs.size());
    RealMatrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k <= j; ++k) {
            const double s = dot(hs[j], hs[k]);
            const double es = std::exp(s);
            a(j, k) = a(k, j) = std::exp(alpha * s) - es + (1.0 - alpha) * es * s;
        }
    }
    return a;
}

/// b_jk = integral of E(h_j) <> E(h_k) against rho = sum_i p_i e^{<y_i, h_j + h_k>}.
inline RealMatrix b_matrix(std::span<const Vector> hs, const ConvolutionMeasure& rho) {
    const auto n = static_cast<Eigen::Index>(hs.size());
    const auto& nu = rho.nu;
    RealMatrix b(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        require_dim(rho.dim(), hs[j].size());
        for (Eigen::Index k = 0; k <= j; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < nu.size(); ++i)
                s += nu.weights()[i] * std::exp(dot(nu.atoms()[i], hs[j]) + dot(nu.atoms()[i], hs[k]));
            b(j, k) = b(k, j) = s;
        }
    }
    return b;
}

struct AbMatrixResult {
    RealMatrix a, b, hadamard;
    InequalityReport a_report, b_report, hadamard_report;

    std::vector<InequalityReport> rows() const { return {a_report, b_report, hadamard_report}; }
};

/// PSD certificates for A, B and their Hadamard product.
inline AbMatrixResult ab_matrix_check(std::span<const Vector> hs, const ConvolutionMeasure& rho, double alpha,
                                      double floor = Tolerances{}.psd_floor) {
    detail::check_alpha(alpha, "ab_matrix_check");
    AbMatrixResult out;
    out.a = a_matrix(hs, alpha);
    out.b = b_matrix(hs, rho);
    out.hadamard = hadamard(out.a, out.b);
    const nlohmann::json params = {{"alpha", alpha}, {"vectors", hs.size()}};
    out.a_report = make_psd_report("ab_matrix_check.A", params, min_eigenvalue(out.a), floor);
    out.b_report = make_psd_report("ab_matrix_check.B", params, min_eigenvalue(out.b), floor);
    out.hadamard_report = make_psd_report("ab_matrix_check.AB", params, min_eigenvalue(out.hadamard), floor);
    return out;
}

struct NormValue {
    double value = 0.0;
    Method method = Method::exact;
};

/// ||f||_p against mu. Closed forms: single exponentials, p = 2, p = 1 for same-sign
/// weights, and even integer p <= 8. Anything else needs `grid`.
inline NormValue lp_norm_exp(const ExpCombo& f, double p, const QuadratureGrid* grid) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm_exp: p must be >= 1");
    if (f.empty()) return {0.0, Method::exact};
    if (f.size() == 1) {
        const auto& t = f.terms().front();
        return {std::abs(t.weight) * std::exp(0.5 * (p - 1.0) * norm2(t.h)), Method::exact};
    }
    if (p == 2.0) return {std::sqrt(mu_inner_exp(f, f)), Method::exact};
    const bool same_sign = std::all_of(f.terms().begin(), f.terms().end(), [&](const ExpTerm& t) {
        return (t.weight > 0.0) == (f.terms().front().weight > 0.0);
    });
    if (p == 1.0 && same_sign) return {std::abs(mu_integral_exp(f)), Method::exact};
    if (p <= 8.0 && p == std::floor(p) && static_cast<int>(p) % 2 == 0) {
        ExpCombo power = f;
        for (int k = 1; k < static_cast<int>(p); ++k) power = pointwise_exp(power, f);
        return {std::pow(mu_integral_exp(power), 1.0 / p), Method::exact};
    }
    if (grid == nullptr) throw std::invalid_argument("lp_norm_exp: no closed form and no quadrature grid");
    require_dim(f.dim(), grid->dim);
    return {lp_norm_mu([&](std::span<const double> w) { return exp_eval(f, w); }, p, *grid), Method::quadrature};
}

inline NormValue lp_norm_chaos(const ChaosExpansion& f, double p, const QuadratureGrid* grid) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm_chaos: p must be >= 1");
    if (p == 2.0) return {l2_norm(f), Method::exact};
    if (grid == nullptr) throw std::invalid_argument("lp_norm_chaos: quadrature grid required for p != 2");
    require_dim(f.dim(), grid->dim);
    return {lp_norm_mu([&](std::span<const double> w) { return eval_chaos(f, w); }, p, *grid), Method::quadrature};
}

/// ||Gamma(sqrt((1+alpha)/2)) (f o_alpha g)||_r <= ||f||_p ||g||_q for admissible (p, q, r, alpha).
/// Exact paths use tols.exact; rows touching quadrature use tols.quadrature * max(1, |lhs|, |rhs|).
inline InequalityReport holder_check(const TestFunction& f, const TestFunction& g, const HolderParams& hp,
                                     const QuadratureGrid* grid = nullptr, const Tolerances& tols = {}) {
    const auto rel = holder_relation_check(hp);
    if (!rel.admissible)
        throw std::domain_error("holder_check: inadmissible exponents (residual " + std::to_string(rel.residual) + ")");
    if (f.index() != g.index()) throw std::invalid_argument("holder_check: f and g must share a representation");
    const double c = std::sqrt((1.0 + hp.alpha) / 2.0);
    NormValue lhs, nf, ng;
    if (const auto* fe = std::get_if<ExpCombo>(&f)) {
        const auto& ge = std::get<ExpCombo>(g);
        lhs = lp_norm_exp(gamma_exp(c, alpha_exp(*fe, ge, hp.alpha)), hp.r, grid);
        nf = lp_norm_exp(*fe, hp.p, grid);
        ng = lp_norm_exp(ge, hp.q, grid);
    } else {
        const auto& fc = std::get<ChaosExpansion>(f);
        const auto& gc = std::get<ChaosExpansion>(g);
        lhs = lp_norm_chaos(gamma_apply(c, alpha_chaos(fc, gc, hp.alpha)), hp.r, grid);
        nf = lp_norm_chaos(fc, hp.p, grid);
        ng = lp_norm_chaos(gc, hp.q, grid);
    }
    const double rhs = nf.value * ng.value;
    const Method rm = (nf.method == Method::exact && ng.method == Method::exact) ? Method::exact : Method::quadrature;
    const bool approx = lhs.method != Method::exact || rm != Method::exact;
    const double tol =
        approx ? tols.quadrature * std::max({1.0, std::abs(lhs.value), std::abs(rhs)}) : tols.exact;
    auto r = make_report("holder_check", {{"alpha", hp.alpha}, {"p", hp.p}, {"q", hp.q}, {"r", hp.r}}, lhs.value, rhs,
                         tol, lhs.method, rm);
    r.details = {{"norm_f_p", nf.value}, {"norm_g_q", ng.value}, {"relation_residual", rel.residual}};
    return r;
}

inline constexpr double kCoefficientTol = 1e-12;

/// sum_m m! c_m^2 (1 - alpha^{|m|}) <= (1 - alpha) sum_m |m| m! c_m^2.
inline InequalityReport classic_beckner_coeff_check(const ChaosExpansion& f, double alpha,
                                                    double tol = kCoefficientTol) {
    detail::check_alpha(alpha, "classic_beckner_coeff_check");
    double lhs = 0.0;
    for (const auto& [m, c] : f.coeffs())
        lhs += m.factorial_value() * c * c * (1.0 - std::pow(alpha, static_cast<double>(m.degree())));
    return make_report("classic_beckner_coeff_check", {{"alpha", alpha}}, lhs, (1.0 - alpha) * dirichlet_energy(f),
                       tol);
}

/// <<Gamma(1/sqrt(alpha)) xi, phi>> >= 0 for phi a positive combination of exponentials.
inline InequalityReport strong_positivity_check(const ConvolutionMeasure& rho, double alpha, const ExpCombo& phi,
                                                double tol = Tolerances{}.exact) {
    if (!(alpha > 0.0)) throw std::domain_error("strong_positivity_check: alpha must be > 0");
    if (!phi.all_weights_positive()) throw std::domain_error("strong_positivity_check: phi must have positive weights");
    const double pairing = mu_inner_exp(gamma_xi(rho, alpha), phi);
    return make_report("strong_positivity_check", {{"alpha", alpha}}, 0.0, pairing, tol);
}

/// <<xi1 xi2, phi>> >= <<xi1 <> xi2, phi>> + sum_k <<d_k xi1 <> d_k xi2, phi>>.
/// The two sides are assembled from the generic exp-span operations; the gap is summed
/// termwise as sum p_i q_j <<E(y_i + z_j), phi>> (e^{s} - 1 - s), s = <y_i, z_j>.
inline InequalityReport covariance_gap(const DiscreteMeasure& nu1, const DiscreteMeasure& nu2, const ExpCombo& phi,
                                       double tol = Tolerances{}.exact) {
    require_dim(nu1.dim(), nu2.dim());
    require_dim(nu1.dim(), phi.dim());
    if (!phi.all_weights_positive()) throw std::domain_error("covariance_gap: phi must have positive weights");
    const auto xi1 = density_xi({nu1});
    const auto xi2 = density_xi({nu2});
    const double product = mu_inner_exp(pointwise_exp(xi1, xi2), phi);
    const double wick = mu_inner_exp(wick_exp(xi1, xi2), phi);
    const auto g1 = gradient_exp(xi1);
    const auto g2 = gradient_exp(xi2);
    double grad = 0.0;
    for (std::size_t k = 0; k < nu1.dim(); ++k) grad += mu_inner_exp(wick_exp(g1[k], g2[k]), phi);

    double gap = 0.0;
    for (std::size_t i = 0; i < nu1.size(); ++i) {
        for (std::size_t j = 0; j < nu2.size(); ++j) {
            const auto& y = nu1.atoms()[i];
            const auto& z = nu2.atoms()[j];
            const double s = dot(y, z);
            double pairing = 0.0;
            for (const auto& t : phi.terms()) pairing += t.weight * std::exp(dot(t.h, y) + dot(t.h, z));
            gap += nu1.weights()[i] * nu2.weights()[j] * pairing * (std::expm1(s) - s);
        }
    }
    InequalityReport r;
    r.check = "covariance_gap";
    r.lhs = wick + grad;
    r.rhs = product;
    r.gap = gap;
    r.tol = tol;
    r.details = {{"pairing_product", product}, {"pairing_wick", wick}, {"pairing_gradient", grad}};
    return r.finish();
}

/// Minimum eigenvalue of the characteristic-function Gram matrix of nu.
inline InequalityReport char_gram_check(const DiscreteMeasure& nu, std::span<const Vector> hs,
                                        double floor = Tolerances{}.psd_floor) {
    const auto g = char_gram(nu, hs);
    return make_psd_report("char_gram", {{"vectors", hs.size()}}, g.min_eigenvalue(), floor);
}

/// ||xi||_{G_lambda} <= integral of e^{lambda^2 |y|^2 / 2} dnu.
inline InequalityReport g_lambda_check(const ConvolutionMeasure& rho, double lambda, double tol = Tolerances{}.exact) {
    const auto g = g_lambda_norm(rho, lambda);
    auto r = make_report("g_lambda_bound", {{"lambda", lambda}}, std::sqrt(g.exact_norm_sq), g.paper_bound, tol);
    r.details = {{"exact_norm_sq", g.exact_norm_sq}, {"lambda_below_one", g.below_one}};
    return r;
}

}  // namespace wickbench
