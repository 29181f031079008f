#pragma once

// Seeded generators for the random sweeps. Coordinates are uniform in [-r, r] conditioned
// on the Euclidean ball of radius r; measure weights are flat on the simplex.

#include <cstdint>
#include <random>
#include <vector>

#include "chaos.hpp"
#include "exp_span.hpp"
#include "measures.hpp"

namespace wickbench {

using Rng = std::mt19937_64;

/// Independent stream for (seed, index).
inline Rng make_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x5eedu};
    return Rng(seq);
}

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Vector random_in_ball(Rng& rng, std::size_t dim, double radius) {
    Vector v(dim);
    do {
        for (auto& x : v) x = uniform(rng, -radius, radius);
    } while (norm2(v) > radius * radius);
    return v;
}

inline std::vector<double> random_simplex(Rng& rng, std::size_t k) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = e(rng) + 1e-300);
    for (auto& x : w) x /= total;
    return w;
}

struct SweepBounds {
    std::size_t max_atoms = 5;
    double atom_radius = 1.5;
    std::size_t max_terms = 4;
    double direction_radius = 1.5;
    unsigned max_degree = 8;
};

inline DiscreteMeasure random_measure(Rng& rng, std::size_t dim, std::size_t max_atoms, double radius) {
    const auto k = uniform_index(rng, 1, max_atoms);
    std::vector<Vector> atoms;
    for (std::size_t i = 0; i < k; ++i) atoms.push_back(random_in_ball(rng, dim, radius));
    return DiscreteMeasure(dim, std::move(atoms), random_simplex(rng, k));
}

/// Weights uniform in [-1, 1] (or (0, 1] when positive_only).
inline ExpCombo random_exp_combo(Rng& rng, std::size_t dim, std::size_t max_terms, double radius,
                                 bool positive_only = false) {
    const auto k = uniform_index(rng, 1, max_terms);
    std::vector<ExpTerm> terms;
    for (std::size_t j = 0; j < k; ++j) {
        double w = positive_only ? uniform(rng, 1e-3, 1.0) : uniform(rng, -1.0, 1.0);
        terms.push_back({w, random_in_ball(rng, dim, radius)});
    }
    return ExpCombo(dim, std::move(terms));
}

/// Up to `max_terms` random multi-indices of total degree <= max_degree.
inline ChaosExpansion random_chaos(Rng& rng, std::size_t dim, unsigned max_degree, std::size_t max_terms) {
    ChaosExpansion f(dim);
    const auto k = uniform_index(rng, 1, max_terms);
    for (std::size_t j = 0; j < k; ++j) {
        const auto deg = static_cast<unsigned>(uniform_index(rng, 0, max_degree));
        std::vector<unsigned> e(dim, 0);
        for (unsigned d = 0; d < deg && dim > 0; ++d) ++e[uniform_index(rng, 0, dim - 1)];
        f.add_raw(MultiIndex(std::move(e)), uniform(rng, -1.0, 1.0));
    }
    return f.normalize();
}

inline std::vector<Vector> random_directions(Rng& rng, std::size_t dim, std::size_t count, double radius) {
    std::vector<Vector> hs;
    for (std::size_t j = 0; j < count; ++j) hs.push_back(random_in_ball(rng, dim, radius));
    return hs;
}

/// {0, 0.1, ..., 1}.
inline std::vector<double> default_alpha_grid() {
    std::vector<double> a;
    for (int k = 0; k <= 10; ++k) a.push_back(k / 10.0);
    return a;
}

}  // namespace wickbench
