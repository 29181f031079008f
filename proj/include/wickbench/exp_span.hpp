#pragma once

// Closed-form calculus on finite linear combinations of stochastic exponentials
// E(h)(w) = exp{<w,h> - |h|^2/2}. Every product and integral used by the checks has an
// exact expression here, so the exp-span path carries no truncation error.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "chaos.hpp"

namespace wickbench {

/// Directions closer than this coordinatewise are merged into one term.
inline constexpr double kDirectionMergeTol = 1e-12;

struct ExpTerm {
    double weight = 0.0;
    Vector h;
};

/// sum_j weight_j E(h_j) on R^n. Normalized form: directions pairwise distinct,
/// no zero weights, terms sorted lexicographically by direction.
class ExpCombo {
public:
    ExpCombo() = default;
    explicit ExpCombo(std::size_t dim) : dim_(dim) {}
    ExpCombo(std::size_t dim, std::vector<ExpTerm> terms) : dim_(dim), terms_(std::move(terms)) {
        for (const auto& t : terms_) require_dim(dim_, t.h.size());
        normalize();
    }

    static ExpCombo single(Vector h, double weight = 1.0) {
        const auto n = h.size();
        return ExpCombo(n, {ExpTerm{weight, std::move(h)}});
    }
    static ExpCombo one(std::size_t dim) { return single(Vector(dim, 0.0)); }

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    bool all_weights_positive() const noexcept {
        return std::all_of(terms_.begin(), terms_.end(), [](const ExpTerm& t) { return t.weight > 0.0; });
    }

    ExpCombo& normalize() {
        std::vector<ExpTerm> merged;
        merged.reserve(terms_.size());
        for (auto& t : terms_) {
            auto it = std::find_if(merged.begin(), merged.end(),
                                   [&](const ExpTerm& u) { return same_direction(u.h, t.h); });
            if (it == merged.end())
                merged.push_back(std::move(t));
            else
                it->weight += t.weight;
        }
        std::erase_if(merged, [](const ExpTerm& t) { return std::abs(t.weight) < kRepresentationEpsilon; });
        std::sort(merged.begin(), merged.end(), [](const ExpTerm& a, const ExpTerm& b) { return a.h < b.h; });
        terms_ = std::move(merged);
        return *this;
    }

    ExpCombo& operator+=(const ExpCombo& g) {
        require_dim(dim_, g.dim_);
        terms_.insert(terms_.end(), g.terms_.begin(), g.terms_.end());
        return normalize();
    }
    ExpCombo& operator*=(double s) {
        for (auto& t : terms_) t.weight *= s;
        return normalize();
    }
    friend ExpCombo operator+(ExpCombo f, const ExpCombo& g) { return f += g; }
    friend ExpCombo operator-(ExpCombo f, ExpCombo g) { return f += (g *= -1.0); }
    friend ExpCombo operator*(double s, ExpCombo f) { return f *= s; }

    static bool same_direction(std::span<const double> a, std::span<const double> b) {
        for (std::size_t k = 0; k < a.size(); ++k)
            if (std::abs(a[k] - b[k]) > kDirectionMergeTol) return false;
        return true;
    }

private:
    std::size_t dim_ = 0;
    std::vector<ExpTerm> terms_;
};

inline double stochastic_exponential(std::span<const double> h, std::span<const double> w) {
    return std::exp(dot(w, h) - 0.5 * norm2(h));
}

inline double exp_eval(const ExpCombo& f, std::span<const double> w) {
    require_dim(f.dim(), w.size());
    double s = 0.0;
    for (const auto& t : f.terms()) s += t.weight * stochastic_exponential(t.h, w);
    return s;
}

namespace detail {

// sum_{j,k} f_j g_k factor(h_j, k_k) E(h_j + k_k)
template <class Factor>
ExpCombo bilinear_exp(const ExpCombo& f, const ExpCombo& g, Factor factor) {
    require_dim(f.dim(), g.dim());
    std::vector<ExpTerm> out;
    out.reserve(f.size() * g.size());
    for (const auto& a : f.terms()) {
        for (const auto& b : g.terms()) {
            Vector h(f.dim());
            for (std::size_t k = 0; k < h.size(); ++k) h[k] = a.h[k] + b.h[k];
            out.push_back({a.weight * b.weight * factor(a.h, b.h), std::move(h)});
        }
    }
    return ExpCombo(f.dim(), std::move(out));
}

inline void require_alpha(double alpha, const char* who) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error(std::string(who) + ": alpha must lie in [0,1]");
}

}  // namespace detail

/// Wick product: E(h) <> E(k) = E(h+k), bilinear.
inline ExpCombo wick_exp(const ExpCombo& f, const ExpCombo& g) {
    return detail::bilinear_exp(f, g, [](const Vector&, const Vector&) { return 1.0; });
}

/// Ordinary product: E(h) E(k) = e^{<h,k>} E(h+k).
inline ExpCombo pointwise_exp(const ExpCombo& f, const ExpCombo& g) {
    return detail::bilinear_exp(f, g, [](const Vector& h, const Vector& k) { return std::exp(dot(h, k)); });
}

/// alpha-product: E(h) o_alpha E(k) = e^{alpha <h,k>} E(h+k). alpha = 0 is the Wick product.
inline ExpCombo alpha_exp(const ExpCombo& f, const ExpCombo& g, double alpha) {
    detail::require_alpha(alpha, "alpha_exp");
    if (alpha == 0.0) return wick_exp(f, g);
    return detail::bilinear_exp(f, g,
                                [alpha](const Vector& h, const Vector& k) { return std::exp(alpha * dot(h, k)); });
}

/// Gamma(lambda) E(h) = E(lambda h).
inline ExpCombo gamma_exp(double lambda, const ExpCombo& f) {
    if (!(lambda >= 0.0)) throw std::domain_error("gamma_exp: lambda must be >= 0");
    std::vector<ExpTerm> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
        Vector h = t.h;
        for (auto& x : h) x *= lambda;
        out.push_back({t.weight, std::move(h)});
    }
    return ExpCombo(f.dim(), std::move(out));
}

/// D E(h) = h E(h); component k collects weight_j (h_j)_k.
inline std::vector<ExpCombo> gradient_exp(const ExpCombo& f) {
    std::vector<ExpCombo> out;
    out.reserve(f.dim());
    for (std::size_t k = 0; k < f.dim(); ++k) {
        std::vector<ExpTerm> terms;
        for (const auto& t : f.terms()) terms.push_back({t.weight * t.h[k], t.h});
        out.emplace_back(f.dim(), std::move(terms));
    }
    return out;
}

/// Integral of f g against the standard Gaussian: sum_{j,k} f_j g_k e^{<h_j,k_k>}.
inline double mu_inner_exp(const ExpCombo& f, const ExpCombo& g) {
    require_dim(f.dim(), g.dim());
    double s = 0.0;
    for (const auto& a : f.terms())
        for (const auto& b : g.terms()) s += a.weight * b.weight * std::exp(dot(a.h, b.h));
    return s;
}

/// Integral of f against the standard Gaussian.
inline double mu_integral_exp(const ExpCombo& f) {
    double s = 0.0;
    for (const auto& t : f.terms()) s += t.weight;
    return s;
}

struct ChaosTruncation {
    ChaosExpansion chaos;
    /// Upper bound on the L^2(mu) distance between f and `chaos`.
    double l2_error_bound = 0.0;
};

/// Tail sum_{N > cap} x^N / N! of the exponential series, summed directly.
inline double exp_series_tail(double x, unsigned cap) {
    double term = 1.0;
    for (unsigned N = 1; N <= cap; ++N) term *= x / N;
    double tail = 0.0;
    for (unsigned N = cap + 1; N < cap + 400; ++N) {
        term *= x / N;
        tail += term;
        if (term < 1e-18 * tail) break;
    }
    return tail;
}

/// Chaos coefficients c_m = sum_j weight_j h_j^m / m!, truncated at |m| <= max_degree.
inline ChaosTruncation to_chaos(const ExpCombo& f, unsigned max_degree) {
    ChaosExpansion out(f.dim());
    for (const auto& m : indices_up_to(f.dim(), max_degree)) {
        double c = 0.0;
        for (const auto& t : f.terms()) c += t.weight * m.monomial(t.h);
        out.add_raw(m, c / m.factorial_value());
    }
    out.normalize();
    double bound = 0.0;
    for (const auto& t : f.terms()) bound += std::abs(t.weight) * std::sqrt(exp_series_tail(norm2(t.h), max_degree));
    return {std::move(out), bound};
}

}  // namespace wickbench
