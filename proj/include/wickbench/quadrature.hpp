#pragma once

// Numerical oracles: tensor Gauss-Hermite quadrature against the standard Gaussian,
// Monte Carlo against rho = mu * nu, L^p norms and the Mehler form of the OU semigroup.
// None of these routines uses the closed forms of exp_span.hpp or measures.hpp.

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "measures.hpp"
#include "multi_index.hpp"

namespace wickbench {

/// Tensor Gauss-Hermite rule for the standard normal weight on R^n.
struct QuadratureGrid {
    std::size_t dim = 0;
    unsigned order = 0;
    std::vector<Vector> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return weights.size(); }
};

inline constexpr std::size_t kLargeGridWarning = 1'000'000;

/// One-dimensional rule of the given order: nodes from the Jacobi matrix, then Newton-polished
/// on the orthonormal recurrence; weights 1 / sum_k p_k(x)^2.
inline std::pair<Vector, Vector> gauss_hermite_1d(unsigned order) {
    if (order < 1) throw std::invalid_argument("gauss_hermite_1d: order must be >= 1");
    const auto n = static_cast<Eigen::Index>(order);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) jac(k, k - 1) = jac(k - 1, k) = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac, Eigen::EigenvaluesOnly);
    Vector x(es.eigenvalues().data(), es.eigenvalues().data() + n);

    // Orthonormal probabilists' Hermite values p_0..p_order at t.
    auto orthonormal = [order](double t, Vector& p) {
        p.assign(order + 1, 0.0);
        p[0] = 1.0;
        if (order >= 1) p[1] = t;
        for (unsigned k = 1; k < order; ++k)
            p[k + 1] = (t * p[k] - std::sqrt(static_cast<double>(k)) * p[k - 1]) / std::sqrt(static_cast<double>(k + 1));
    };

    Vector p, w(order);
    for (unsigned i = 0; i < order; ++i) {
        for (int it = 0; it < 8; ++it) {
            orthonormal(x[i], p);
            const double deriv = std::sqrt(static_cast<double>(order)) * p[order - 1];
            const double step = p[order] / deriv;
            x[i] -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(x[i]))) break;
        }
        orthonormal(x[i], p);
        double s = 0.0;
        for (unsigned k = 0; k < order; ++k) s += p[k] * p[k];
        w[i] = 1.0 / s;
    }
    double total = 0.0;
    for (double v : w) total += v;
    for (double& v : w) v /= total;
    return {std::move(x), std::move(w)};
}

inline QuadratureGrid gauss_hermite_grid(std::size_t dim, unsigned order) {
    if (order < 1) throw std::invalid_argument("gauss_hermite_grid: order must be >= 1");
    double count = std::pow(static_cast<double>(order), static_cast<double>(dim));
    if (count > static_cast<double>(kLargeGridWarning))
        std::clog << "wickbench: warning: quadrature grid with " << count << " nodes\n";
    auto [x, w] = gauss_hermite_1d(order);
    QuadratureGrid g;
    g.dim = dim;
    g.order = order;
    g.nodes.assign(1, Vector{});
    g.weights.assign(1, 1.0);
    for (std::size_t k = 0; k < dim; ++k) {
        std::vector<Vector> nodes;
        std::vector<double> weights;
        nodes.reserve(g.nodes.size() * order);
        weights.reserve(g.nodes.size() * order);
        for (std::size_t a = 0; a < g.nodes.size(); ++a) {
            for (unsigned i = 0; i < order; ++i) {
                Vector node = g.nodes[a];
                node.push_back(x[i]);
                nodes.push_back(std::move(node));
                weights.push_back(g.weights[a] * w[i]);
            }
        }
        g.nodes = std::move(nodes);
        g.weights = std::move(weights);
    }
    return g;
}

/// Default per-axis order: 30 for n <= 2, 12 for n = 3, 8 for n = 4; 0 above (use Monte Carlo).
inline unsigned default_quadrature_order(std::size_t dim) {
    if (dim <= 2) return 30;
    if (dim == 3) return 12;
    if (dim == 4) return 8;
    return 0;
}

using PointFunction = std::function<double(std::span<const double>)>;

template <class Fn>
double integrate_mu(Fn&& fn, const QuadratureGrid& grid) {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) s += grid.weights[i] * fn(std::span<const double>(grid.nodes[i]));
    return s;
}

/// Integral against rho = mu * nu: sum_i p_i * quadrature of fn(. + y_i).
template <class Fn>
double integrate_rho(Fn&& fn, const ConvolutionMeasure& rho, const QuadratureGrid& grid) {
    require_dim(rho.dim(), grid.dim);
    const auto& nu = rho.nu;
    Vector shifted(grid.dim);
    double s = 0.0;
    for (std::size_t a = 0; a < nu.size(); ++a) {
        double inner = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (std::size_t k = 0; k < grid.dim; ++k) shifted[k] = grid.nodes[i][k] + nu.atoms()[a][k];
            inner += grid.weights[i] * fn(std::span<const double>(shifted));
        }
        s += nu.weights()[a] * inner;
    }
    return s;
}

template <class Fn>
double lp_norm_mu(Fn&& fn, double p, const QuadratureGrid& grid) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm_mu: p must be >= 1");
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        s += grid.weights[i] * std::pow(std::abs(fn(std::span<const double>(grid.nodes[i]))), p);
    return std::pow(s, 1.0 / p);
}

/// (P_tau f)(w) = integral of f(e^{-tau} w + sqrt(1 - e^{-2 tau}) v) dmu(v), by quadrature in v.
inline PointFunction mehler_ou(PointFunction fn, double tau, QuadratureGrid grid) {
    if (!(tau >= 0.0)) throw std::domain_error("mehler_ou: tau must be >= 0");
    const double a = std::exp(-tau);
    const double b = std::sqrt(-std::expm1(-2.0 * tau));
    return [fn = std::move(fn), grid = std::move(grid), a, b](std::span<const double> w) {
        require_dim(grid.dim, w.size());
        Vector x(w.size());
        double s = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (std::size_t k = 0; k < x.size(); ++k) x[k] = a * w[k] + b * grid.nodes[i][k];
            s += grid.weights[i] * fn(std::span<const double>(x));
        }
        return s;
    };
}

struct McEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

/// Sample mean and standard error of fn over `count` draws from rho.
template <class Fn>
McEstimate mc_integral_rho(Fn&& fn, const ConvolutionMeasure& rho, std::uint64_t seed, std::size_t count,
                           std::uint64_t stream = 0) {
    if (count < 2) throw std::invalid_argument("mc_integral_rho: count must be >= 2");
    const auto pts = sample_rho(rho, seed, count, stream);
    double mean = 0.0, m2 = 0.0;
    std::size_t k = 0;
    for (const auto& w : pts) {
        const double v = fn(std::span<const double>(w));
        ++k;
        const double d = v - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (v - mean);
    }
    const double var = m2 / static_cast<double>(count - 1);
    return {mean, std::sqrt(var / static_cast<double>(count))};
}

}  // namespace wickbench
