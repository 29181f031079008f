#pragma once

// Finite Wiener chaos expansions on R^n in the probabilists' Hermite basis and the
// diagonal operator calculus acting on them (Gamma(lambda), OU semigroup, number operator).

#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "multi_index.hpp"

namespace wickbench {

/// Coefficients below this magnitude are dropped after arithmetic. It is a property of
/// the representation only; no inequality tolerance depends on it.
inline constexpr double kRepresentationEpsilon = 1e-15;

/// f = sum_m c_m H_m on R^n, stored sparsely. Absent keys are zero.
class ChaosExpansion {
public:
    using Map = std::map<MultiIndex, double>;

    ChaosExpansion() = default;
    explicit ChaosExpansion(std::size_t dim) : dim_(dim) {}
    ChaosExpansion(std::size_t dim, Map coeffs) : dim_(dim), coeffs_(std::move(coeffs)) {
        for (const auto& [m, c] : coeffs_) require_dim(dim_, m.dim());
        normalize();
    }

    static ChaosExpansion constant(std::size_t dim, double c) {
        return ChaosExpansion(dim, Map{{MultiIndex(dim), c}});
    }
    static ChaosExpansion basis(const MultiIndex& m, double c = 1.0) {
        return ChaosExpansion(m.dim(), Map{{m, c}});
    }

    std::size_t dim() const noexcept { return dim_; }
    const Map& coeffs() const noexcept { return coeffs_; }
    bool empty() const noexcept { return coeffs_.empty(); }
    std::size_t size() const noexcept { return coeffs_.size(); }

    double coefficient(const MultiIndex& m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? 0.0 : it->second;
    }

    /// Largest |m| carrying a nonzero coefficient; 0 for the zero expansion.
    unsigned degree() const noexcept {
        unsigned d = 0;
        for (const auto& [m, c] : coeffs_) d = std::max(d, m.degree());
        return d;
    }

    /// Accumulates without normalizing; call normalize() when done.
    void add_raw(const MultiIndex& m, double c) {
        require_dim(dim_, m.dim());
        coeffs_[m] += c;
    }

    void add(const MultiIndex& m, double c) {
        add_raw(m, c);
        normalize();
    }

    ChaosExpansion& normalize() {
        std::erase_if(coeffs_, [](const auto& kv) { return std::abs(kv.second) < kRepresentationEpsilon; });
        return *this;
    }

    ChaosExpansion& operator+=(const ChaosExpansion& g) {
        require_dim(dim_, g.dim_);
        for (const auto& [m, c] : g.coeffs_) coeffs_[m] += c;
        return normalize();
    }
    ChaosExpansion& operator-=(const ChaosExpansion& g) {
        require_dim(dim_, g.dim_);
        for (const auto& [m, c] : g.coeffs_) coeffs_[m] -= c;
        return normalize();
    }
    ChaosExpansion& operator*=(double s) {
        for (auto& [m, c] : coeffs_) c *= s;
        return normalize();
    }

    friend ChaosExpansion operator+(ChaosExpansion f, const ChaosExpansion& g) { return f += g; }
    friend ChaosExpansion operator-(ChaosExpansion f, const ChaosExpansion& g) { return f -= g; }
    friend ChaosExpansion operator*(double s, ChaosExpansion f) { return f *= s; }
    friend ChaosExpansion operator*(ChaosExpansion f, double s) { return f *= s; }

    bool operator==(const ChaosExpansion&) const = default;

private:
    std::size_t dim_ = 0;
    Map coeffs_;
};

/// One-dimensional probabilists' Hermite polynomial He_k(x) via the three-term recurrence.
inline double hermite_1d(unsigned k, double x) {
    if (k == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (unsigned j = 1; j < k; ++j) {
        double next = x * cur - static_cast<double>(j) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline double hermite_eval(const MultiIndex& m, std::span<const double> w) {
    require_dim(m.dim(), w.size());
    double r = 1.0;
    for (std::size_t k = 0; k < m.dim(); ++k) r *= hermite_1d(m[k], w[k]);
    return r;
}

inline double eval_chaos(const ChaosExpansion& f, std::span<const double> w) {
    require_dim(f.dim(), w.size());
    double s = 0.0;
    for (const auto& [m, c] : f.coeffs()) s += c * hermite_eval(m, w);
    return s;
}

/// L^2(mu) inner product: sum_m m! c_m d_m.
inline double l2_inner(const ChaosExpansion& f, const ChaosExpansion& g) {
    require_dim(f.dim(), g.dim());
    const auto& small = f.size() <= g.size() ? f : g;
    const auto& large = f.size() <= g.size() ? g : f;
    double s = 0.0;
    for (const auto& [m, c] : small.coeffs()) {
        double d = large.coefficient(m);
        if (d != 0.0) s += m.factorial_value() * c * d;
    }
    return s;
}

inline double l2_norm(const ChaosExpansion& f) { return std::sqrt(l2_inner(f, f)); }

/// Integral of ||Df||^2 against mu: sum_m |m| m! c_m^2.
inline double dirichlet_energy(const ChaosExpansion& f) {
    double s = 0.0;
    for (const auto& [m, c] : f.coeffs())
        s += static_cast<double>(m.degree()) * m.factorial_value() * c * c;
    return s;
}

/// Partial derivatives, using d/dw_k H_m = m_k H_{m - e_k}.
inline std::vector<ChaosExpansion> gradient(const ChaosExpansion& f) {
    std::vector<ChaosExpansion> out(f.dim(), ChaosExpansion(f.dim()));
    for (const auto& [m, c] : f.coeffs())
        for (std::size_t k = 0; k < f.dim(); ++k)
            if (m[k] > 0) out[k].add_raw(m.lowered(k), static_cast<double>(m[k]) * c);
    for (auto& g : out) g.normalize();
    return out;
}

namespace detail {

// c_m -> lambda^{|m|} c_m with no normalization; used inside compositions where
// intermediate coefficients may be tiny before being scaled back up.
inline ChaosExpansion scale_by_degree(const ChaosExpansion& f, double lambda) {
    ChaosExpansion r(f.dim());
    for (const auto& [m, c] : f.coeffs()) r.add_raw(m, c * std::pow(lambda, static_cast<double>(m.degree())));
    return r;
}

}  // namespace detail

/// Second quantization Gamma(lambda): multiplies the n-th chaos by lambda^n.
inline ChaosExpansion gamma_apply(double lambda, const ChaosExpansion& f) {
    if (!(lambda >= 0.0)) throw std::domain_error("gamma_apply: lambda must be >= 0");
    return detail::scale_by_degree(f, lambda).normalize();
}

/// Ornstein-Uhlenbeck semigroup P_tau = Gamma(e^{-tau}).
inline ChaosExpansion ou_apply(double tau, const ChaosExpansion& f) {
    if (!(tau >= 0.0)) throw std::domain_error("ou_apply: tau must be >= 0");
    return gamma_apply(std::exp(-tau), f);
}

/// Number operator N: multiplies the n-th chaos by n.
inline ChaosExpansion number_operator(const ChaosExpansion& f) {
    ChaosExpansion r(f.dim());
    for (const auto& [m, c] : f.coeffs()) r.add_raw(m, static_cast<double>(m.degree()) * c);
    return r.normalize();
}

/// Expansion of the monomial w^m in the Hermite basis:
/// x^k = sum_j k! / (j! (k-2j)! 2^j) He_{k-2j}(x), tensorized.
inline ChaosExpansion monomial_to_chaos(const MultiIndex& m) {
    std::vector<std::pair<MultiIndex, double>> terms{{MultiIndex(m.dim()), 1.0}};
    for (std::size_t k = 0; k < m.dim(); ++k) {
        const unsigned e = m[k];
        std::vector<std::pair<MultiIndex, double>> next;
        for (unsigned j = 0; 2 * j <= e; ++j) {
            double c = static_cast<double>(factorial(e)) /
                       (static_cast<double>(factorial(j)) * static_cast<double>(factorial(e - 2 * j)) *
                        std::ldexp(1.0, static_cast<int>(j)));
            for (const auto& [idx, v] : terms) next.emplace_back(idx.with(k, e - 2 * j), v * c);
        }
        terms = std::move(next);
    }
    ChaosExpansion r(m.dim());
    for (const auto& [idx, v] : terms) r.add_raw(idx, v);
    return r.normalize();
}

}  // namespace wickbench
