#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "chaos.hpp"

namespace wickbench {

/// Wick product in chaos coordinates: H_a <> H_b = H_{a+b}, i.e. coefficient convolution.
inline ChaosExpansion wick_chaos(const ChaosExpansion& f, const ChaosExpansion& g) {
    require_dim(f.dim(), g.dim());
    ChaosExpansion r(f.dim());
    for (const auto& [a, c] : f.coeffs())
        for (const auto& [b, d] : g.coeffs()) r.add_raw(a + b, c * d);
    return r.normalize();
}

namespace detail {

// H_a H_b = sum_k C(a,k) C(b,k) k! weight^k H_{a+b-2k}, tensorized over coordinates.
// weight = 1 is the ordinary product; weight = alpha gives the alpha-product directly.
inline ChaosExpansion linearized_product(const ChaosExpansion& f, const ChaosExpansion& g, double weight) {
    require_dim(f.dim(), g.dim());
    const std::size_t n = f.dim();
    ChaosExpansion r(n);
    std::vector<std::pair<MultiIndex, double>> partial, next;
    for (const auto& [a, c] : f.coeffs()) {
        for (const auto& [b, d] : g.coeffs()) {
            partial.assign(1, {MultiIndex(n), c * d});
            for (std::size_t k = 0; k < n; ++k) {
                next.clear();
                const unsigned lo = std::min(a[k], b[k]);
                for (unsigned j = 0; j <= lo; ++j) {
                    const double coef = static_cast<double>(binomial(a[k], j)) *
                                        static_cast<double>(binomial(b[k], j)) *
                                        static_cast<double>(factorial(j)) * std::pow(weight, static_cast<double>(j));
                    for (const auto& [idx, v] : partial) next.emplace_back(idx.with(k, a[k] + b[k] - 2 * j), v * coef);
                }
                std::swap(partial, next);
            }
            for (const auto& [idx, v] : partial) r.add_raw(idx, v);
        }
    }
    return r;
}

}  // namespace detail

/// Exact ordinary product of two polynomial chaos expansions.
inline ChaosExpansion pointwise_chaos(const ChaosExpansion& f, const ChaosExpansion& g) {
    return detail::linearized_product(f, g, 1.0).normalize();
}

/// f o_alpha g = Gamma(1/sqrt(alpha)) (Gamma(sqrt(alpha)) f . Gamma(sqrt(alpha)) g); alpha = 0 is Wick.
inline ChaosExpansion alpha_chaos(const ChaosExpansion& f, const ChaosExpansion& g, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha_chaos: alpha must lie in [0,1]");
    if (alpha == 0.0) return wick_chaos(f, g);
    const double s = std::sqrt(alpha);
    auto fs = detail::scale_by_degree(f, s);
    auto gs = detail::scale_by_degree(g, s);
    auto prod = detail::linearized_product(fs, gs, 1.0);
    return detail::scale_by_degree(prod, 1.0 / s).normalize();
}

/// Exponents of the alpha-product Hoelder inequality.
struct HolderParams {
    double p = 2.0;
    double q = 2.0;
    double r = 1.0;
    double alpha = 1.0;
};

struct HolderRelation {
    double residual = 0.0;
    bool admissible = false;
};

inline constexpr double kHolderRelationTol = 1e-12;

/// Residual of 1/(r - (1-a)/(1+a)) = (1+a)/(2(p-1)+2a) + (1+a)/(2(q-1)+2a).
///
/// Throws std::domain_error when r = (1-a)/(1+a), where the left side is undefined.
/// r = 1 is accepted: at alpha = 1 the relation reduces to the classical 1/r = 1/p + 1/q.
inline HolderRelation holder_relation_check(const HolderParams& hp) {
    const double a = hp.alpha;
    if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("holder_relation_check: alpha must lie in [0,1]");
    const double shift = (1.0 - a) / (1.0 + a);
    const double denom = hp.r - shift;
    if (denom == 0.0) throw std::domain_error("holder_relation_check: r equals (1-alpha)/(1+alpha)");
    if (!(hp.p > 1.0 && hp.q > 1.0)) throw std::domain_error("holder_relation_check: p and q must exceed 1");
    const double lhs = 1.0 / denom;
    const double rhs = (1.0 + a) / (2.0 * (hp.p - 1.0) + 2.0 * a) + (1.0 + a) / (2.0 * (hp.q - 1.0) + 2.0 * a);
    const double residual = lhs - rhs;
    return {residual, hp.r >= 1.0 && std::abs(residual) <= kHolderRelationTol};
}

/// The r completing (p, q, alpha) to an admissible triple.
inline double holder_solve_r(double p, double q, double alpha) {
    const double rhs = (1.0 + alpha) / (2.0 * (p - 1.0) + 2.0 * alpha) + (1.0 + alpha) / (2.0 * (q - 1.0) + 2.0 * alpha);
    return (1.0 - alpha) / (1.0 + alpha) + 1.0 / rhs;
}

/// The exponents used for the left-hand positivity bound: p = q = 2(1+alpha), r = 2.
inline HolderParams holder_diagonal_params(double alpha) {
    return {2.0 * (1.0 + alpha), 2.0 * (1.0 + alpha), 2.0, alpha};
}

}  // namespace wickbench
