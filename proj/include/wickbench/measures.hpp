#pragma once

// Finitely supported probability measures nu on R^n and the convolution measures
// rho = mu * nu against the standard Gaussian mu. For discrete nu every quantity below
// (density, integrals, Gram matrices) has a closed form.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "chaos.hpp"
#include "exp_span.hpp"
#include "linalg.hpp"
#include "report.hpp"

namespace wickbench {

inline constexpr double kWeightSumTol = 1e-12;
inline constexpr double kAtomMergeTol = 1e-12;

/// sum_i weight_i delta_{atom_i}.
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    DiscreteMeasure(std::size_t dim, std::vector<Vector> atoms, std::vector<double> weights)
        : dim_(dim), atoms_(std::move(atoms)), weights_(std::move(weights)) {
        if (atoms_.size() != weights_.size())
            throw std::invalid_argument("DiscreteMeasure: atoms and weights differ in length");
        if (atoms_.empty()) throw std::invalid_argument("DiscreteMeasure: no atoms");
        double total = 0.0;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            require_dim(dim_, atoms_[i].size());
            if (!(weights_[i] >= 0.0)) throw std::invalid_argument("DiscreteMeasure: negative weight");
            total += weights_[i];
        }
        if (std::abs(total - 1.0) > kWeightSumTol)
            throw std::invalid_argument("DiscreteMeasure: weights sum to " + std::to_string(total) + ", not 1");
    }

    static DiscreteMeasure dirac(Vector y) {
        const auto n = y.size();
        return DiscreteMeasure(n, {std::move(y)}, {1.0});
    }

    /// Empirical measure: uniform weights on the given samples.
    static DiscreteMeasure from_samples(std::vector<Vector> samples) {
        if (samples.empty()) throw std::invalid_argument("DiscreteMeasure::from_samples: no samples");
        const auto n = samples.front().size();
        std::vector<double> w(samples.size(), 1.0 / static_cast<double>(samples.size()));
        // Guarantee the unit sum despite rounding in 1/N.
        double rest = 1.0;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) rest -= w[i];
        w.back() = rest;
        return DiscreteMeasure(n, std::move(samples), std::move(w));
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<Vector>& atoms() const noexcept { return atoms_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// Integral of y^m against nu.
    double moment(const MultiIndex& m) const {
        double s = 0.0;
        for (std::size_t i = 0; i < size(); ++i) s += weights_[i] * m.monomial(atoms_[i]);
        return s;
    }

private:
    std::size_t dim_ = 0;
    std::vector<Vector> atoms_;
    std::vector<double> weights_;
};

/// rho = mu * nu; the Gaussian factor is implicit.
struct ConvolutionMeasure {
    DiscreteMeasure nu;

    std::size_t dim() const noexcept { return nu.dim(); }

    static ConvolutionMeasure gaussian(std::size_t dim) { return {DiscreteMeasure::dirac(Vector(dim, 0.0))}; }
};

/// Density of rho against mu: xi = sum_i p_i E(y_i).
inline ExpCombo density_xi(const ConvolutionMeasure& rho) {
    std::vector<ExpTerm> terms;
    const auto& nu = rho.nu;
    for (std::size_t i = 0; i < nu.size(); ++i) terms.push_back({nu.weights()[i], nu.atoms()[i]});
    return ExpCombo(nu.dim(), std::move(terms));
}

/// Gamma(1/sqrt(alpha)) xi = sum_i p_i E(y_i / sqrt(alpha)).
inline ExpCombo gamma_xi(const ConvolutionMeasure& rho, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("gamma_xi: alpha must be > 0");
    return gamma_exp(1.0 / std::sqrt(alpha), density_xi(rho));
}

struct GLambdaNorm {
    /// ||xi||^2 in G_lambda: sum_{i,j} p_i p_j e^{lambda^2 <y_i,y_j>}.
    double exact_norm_sq = 0.0;
    /// sum_i p_i e^{lambda^2 |y_i|^2 / 2}, an upper bound for ||xi|| itself.
    double paper_bound = 0.0;
    /// lambda < 1 is outside the regime the bound is meant for.
    bool below_one = false;

    bool bound_holds() const { return std::sqrt(exact_norm_sq) <= paper_bound * (1.0 + 1e-14); }
};

inline GLambdaNorm g_lambda_norm(const ConvolutionMeasure& rho, double lambda) {
    if (!(lambda >= 0.0)) throw std::domain_error("g_lambda_norm: lambda must be >= 0");
    const auto& nu = rho.nu;
    const double l2 = lambda * lambda;
    GLambdaNorm out;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        for (std::size_t j = 0; j < nu.size(); ++j)
            out.exact_norm_sq += nu.weights()[i] * nu.weights()[j] * std::exp(l2 * dot(nu.atoms()[i], nu.atoms()[j]));
        out.paper_bound += nu.weights()[i] * std::exp(0.5 * l2 * norm2(nu.atoms()[i]));
    }
    out.below_one = lambda < 1.0;
    return out;
}

/// Integral of exp{|y|^2/(1+alpha)} against nu.
inline double integrability_functional(const DiscreteMeasure& nu, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("integrability_functional: alpha must lie in (0,1]");
    double s = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) s += nu.weights()[i] * std::exp(norm2(nu.atoms()[i]) / (1.0 + alpha));
    return s;
}

/// Integral of f against rho, from E(h)(w + y) = E(h)(w) e^{<y,h>}.
inline double rho_integral_exp(const ExpCombo& f, const ConvolutionMeasure& rho) {
    require_dim(f.dim(), rho.dim());
    const auto& nu = rho.nu;
    double s = 0.0;
    for (const auto& t : f.terms()) {
        double inner = 0.0;
        for (std::size_t i = 0; i < nu.size(); ++i) inner += nu.weights()[i] * std::exp(dot(nu.atoms()[i], t.h));
        s += t.weight * inner;
    }
    return s;
}

/// Integral of f against rho, from E_mu[H_m(w + y)] = y^m.
inline double rho_integral_chaos(const ChaosExpansion& f, const ConvolutionMeasure& rho) {
    require_dim(f.dim(), rho.dim());
    double s = 0.0;
    for (const auto& [m, c] : f.coeffs()) s += c * rho.nu.moment(m);
    return s;
}

/// G_{jk} = sum_i p_i exp(i <y_i, h_j - h_k>), the characteristic-function Gram matrix of nu.
class HermitianGram {
public:
    explicit HermitianGram(ComplexMatrix m) : m_(std::move(m)) {}
    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    double min_eigenvalue() const { return wickbench::min_eigenvalue(m_); }

private:
    ComplexMatrix m_;
};

inline HermitianGram char_gram(const DiscreteMeasure& nu, std::span<const Vector> hs) {
    const auto k = static_cast<Eigen::Index>(hs.size());
    ComplexMatrix g = ComplexMatrix::Zero(k, k);
    for (const auto& h : hs) require_dim(nu.dim(), h.size());
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = a; b < k; ++b) {
            std::complex<double> s = 0.0;
            for (std::size_t i = 0; i < nu.size(); ++i) {
                double phase = dot(nu.atoms()[i], hs[a]) - dot(nu.atoms()[i], hs[b]);
                s += nu.weights()[i] * std::polar(1.0, phase);
            }
            if (a == b) s = s.real();
            g(a, b) = s;
            g(b, a) = std::conj(s);
        }
    }
    return HermitianGram(std::move(g));
}

/// nu1 * nu2: atoms y_i + z_j with weights p_i q_j, coincident atoms merged.
inline DiscreteMeasure convolve_nu(const DiscreteMeasure& nu1, const DiscreteMeasure& nu2) {
    require_dim(nu1.dim(), nu2.dim());
    std::vector<Vector> atoms;
    std::vector<double> weights;
    for (std::size_t i = 0; i < nu1.size(); ++i) {
        for (std::size_t j = 0; j < nu2.size(); ++j) {
            Vector y(nu1.dim());
            for (std::size_t k = 0; k < y.size(); ++k) y[k] = nu1.atoms()[i][k] + nu2.atoms()[j][k];
            const double w = nu1.weights()[i] * nu2.weights()[j];
            std::size_t found = atoms.size();
            for (std::size_t a = 0; a < atoms.size(); ++a) {
                bool same = true;
                for (std::size_t k = 0; k < y.size() && same; ++k) same = std::abs(atoms[a][k] - y[k]) <= kAtomMergeTol;
                if (same) {
                    found = a;
                    break;
                }
            }
            if (found == atoms.size()) {
                atoms.push_back(std::move(y));
                weights.push_back(w);
            } else {
                weights[found] += w;
            }
        }
    }
    // Products of weights summing to 1 may drift by a few ulps.
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    return DiscreteMeasure(nu1.dim(), std::move(atoms), std::move(weights));
}

/// Largest coordinatewise discrepancy between two normalized combos; infinity when the
/// supports differ in size.
inline double combo_discrepancy(const ExpCombo& a, const ExpCombo& b) {
    if (a.dim() != b.dim() || a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const auto& s = a.terms()[j];
        const auto& t = b.terms()[j];
        worst = std::max(worst, std::abs(s.weight - t.weight));
        for (std::size_t k = 0; k < a.dim(); ++k) worst = std::max(worst, std::abs(s.h[k] - t.h[k]));
    }
    return worst;
}

inline constexpr double kWickDensityTol = 1e-12;

/// Compares the density of mu * (nu1 * nu2) with xi_1 <> xi_2 term by term.
/// The row reports lhs = largest discrepancy, rhs = 0.
inline InequalityReport wick_density_identity_check(const DiscreteMeasure& nu1, const DiscreteMeasure& nu2) {
    require_dim(nu1.dim(), nu2.dim());
    const auto direct = density_xi({convolve_nu(nu1, nu2)});
    const auto wick = wick_exp(density_xi({nu1}), density_xi({nu2}));
    const double d = combo_discrepancy(direct, wick);
    auto r = make_report("wick_density_identity_check", {{"atoms1", nu1.size()}, {"atoms2", nu2.size()}}, d, 0.0,
                         kWickDensityTol);
    r.details["terms_direct"] = direct.size();
    r.details["terms_wick"] = wick.size();
    return r;
}

/// Points w = g + y with g standard Gaussian and y ~ nu. Deterministic in (seed, stream).
inline std::vector<Vector> sample_rho(const ConvolutionMeasure& rho, std::uint64_t seed, std::size_t count,
                                      std::uint64_t stream = 0) {
    if (count < 1) throw std::invalid_argument("sample_rho: count must be >= 1");
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::discrete_distribution<std::size_t> pick(rho.nu.weights().begin(), rho.nu.weights().end());
    std::vector<Vector> out(count, Vector(rho.dim()));
    for (auto& w : out) {
        const auto& y = rho.nu.atoms()[pick(rng)];
        for (std::size_t k = 0; k < w.size(); ++k) w[k] = gauss(rng) + y[k];
    }
    return out;
}

}  // namespace wickbench
