#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include <wickbench/measures.hpp>
#include <wickbench/quadrature.hpp>
#include <wickbench/random.hpp>

#include "test_util.hpp"

namespace wickbench {
namespace {

using testing::combo_near;
using testing::H;

DiscreteMeasure sym1() { return DiscreteMeasure(1, {{1.0}, {-1.0}}, {0.5, 0.5}); }

TEST(DiscreteMeasure, Validation) {
    EXPECT_THROW(DiscreteMeasure(1, {{1.0}}, {0.9}), std::invalid_argument);
    EXPECT_THROW(DiscreteMeasure(1, {{1.0}, {2.0}}, {1.5, -0.5}), std::invalid_argument);
    EXPECT_THROW(DiscreteMeasure(1, {{1.0}}, {0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(DiscreteMeasure(2, {{1.0}}, {1.0}), DimensionError);
    auto e = DiscreteMeasure::from_samples({{0.1}, {0.2}, {0.3}});
    EXPECT_EQ(e.size(), 3u);
    EXPECT_NEAR(std::accumulate(e.weights().begin(), e.weights().end(), 0.0), 1.0, 1e-15);
}

TEST(DensityXi, Examples) {
    EXPECT_TRUE(combo_near(density_xi(ConvolutionMeasure::gaussian(2)), ExpCombo::one(2), 0));
    EXPECT_TRUE(combo_near(density_xi({DiscreteMeasure::dirac({0.3, -1.0})}), ExpCombo::single(Vector{0.3, -1.0}), 0));
    EXPECT_NEAR(exp_eval(density_xi({sym1()}), Vector{0.0}), 0.606531, 1e-6);
}

TEST(DensityXi, PositiveWithUnitMass) {
    for (int i = 0; i < 50; ++i) {
        auto rng = make_rng(30, i);
        const auto n = uniform_index(rng, 1, 3);
        const ConvolutionMeasure rho{random_measure(rng, n, 5, 1.5)};
        const auto xi = density_xi(rho);
        EXPECT_TRUE(xi.all_weights_positive());
        EXPECT_NEAR(mu_integral_exp(xi), 1.0, 1e-14);
        for (int k = 0; k < 5; ++k) EXPECT_GT(exp_eval(xi, random_in_ball(rng, n, 4.0)), 0.0);
    }
}

TEST(GammaXi, Examples) {
    const ConvolutionMeasure rho{sym1()};
    EXPECT_TRUE(combo_near(gamma_xi(rho, 1.0), density_xi(rho), 1e-15));
    EXPECT_TRUE(combo_near(gamma_xi({DiscreteMeasure::dirac({0.4, 1.0})}, 0.25), ExpCombo::single(Vector{0.8, 2.0}), 1e-15));
    EXPECT_TRUE(gamma_xi(rho, 0.3).all_weights_positive());
    EXPECT_THROW(gamma_xi(rho, 0.0), std::domain_error);
    EXPECT_THROW(gamma_xi(rho, -1.0), std::domain_error);
}

TEST(GLambdaNorm, Examples) {
    auto g0 = g_lambda_norm(ConvolutionMeasure::gaussian(1), 1.0);
    EXPECT_DOUBLE_EQ(g0.exact_norm_sq, 1.0);
    EXPECT_DOUBLE_EQ(g0.paper_bound, 1.0);
    auto g = g_lambda_norm({sym1()}, 1.0);
    EXPECT_NEAR(g.exact_norm_sq, 1.543081, 1e-6);
    EXPECT_NEAR(g.paper_bound, 1.648721, 1e-6);
    EXPECT_TRUE(g.bound_holds());
    EXPECT_FALSE(g.below_one);
    EXPECT_TRUE(g_lambda_norm({sym1()}, 0.5).below_one);
    EXPECT_NEAR(g_lambda_norm({sym1()}, 1.3).exact_norm_sq, std::cosh(1.69), 1e-12);
}

TEST(GLambdaNorm, BoundHoldsOnRandomMeasures) {
    for (int i = 0; i < 200; ++i) {
        auto rng = make_rng(31, i);
        const ConvolutionMeasure rho{random_measure(rng, uniform_index(rng, 1, 3), 5, 1.5)};
        EXPECT_TRUE(g_lambda_norm(rho, uniform(rng, 1.0, 2.0)).bound_holds());
    }
}

TEST(Integrability, Examples) {
    EXPECT_DOUBLE_EQ(integrability_functional(DiscreteMeasure::dirac({0.0}), 0.5), 1.0);
    EXPECT_NEAR(integrability_functional(DiscreteMeasure::dirac({1.0}), 1.0), 1.648721, 1e-6);
    EXPECT_NEAR(integrability_functional(sym1(), 0.5), 1.947734, 1e-6);
    EXPECT_THROW(integrability_functional(sym1(), 0.0), std::domain_error);
    EXPECT_THROW(integrability_functional(sym1(), 1.5), std::domain_error);
}

TEST(RhoIntegral, ExpExamples) {
    EXPECT_DOUBLE_EQ(rho_integral_exp(ExpCombo::single(Vector{0.7, -0.2}), ConvolutionMeasure::gaussian(2)), 1.0);
    EXPECT_NEAR(rho_integral_exp(ExpCombo::single(Vector{2.0}), {sym1()}), 3.762196, 1e-6);
    EXPECT_NEAR(rho_integral_exp(ExpCombo::single(Vector{0.5, 1.0}), {DiscreteMeasure::dirac({2.0, -1.0})}),
                std::exp(0.0), 1e-15);
    EXPECT_NEAR(rho_integral_exp(ExpCombo::single(Vector{0.5, 1.0}), {DiscreteMeasure::dirac({2.0, 1.0})}),
                std::exp(2.0), 1e-13);
    EXPECT_THROW(rho_integral_exp(ExpCombo::single(Vector{1.0}), ConvolutionMeasure::gaussian(2)), DimensionError);
}

TEST(RhoIntegral, ChaosExamples) {
    const ConvolutionMeasure rho{sym1()};
    EXPECT_DOUBLE_EQ(rho_integral_chaos(ChaosExpansion::constant(1, 2.5), rho), 2.5);
    EXPECT_DOUBLE_EQ(rho_integral_chaos(H({2}), rho), 1.0);
    EXPECT_DOUBLE_EQ(rho_integral_chaos(H({1}), rho), 0.0);
    EXPECT_DOUBLE_EQ(rho_integral_chaos(H({3}), rho), 0.0);
}

TEST(RhoIntegral, AgreesWithQuadratureOracle) {
    const auto g1 = gauss_hermite_grid(1, 30), g2 = gauss_hermite_grid(2, 30);
    for (int i = 0; i < 60; ++i) {
        auto rng = make_rng(32, i);
        const auto n = uniform_index(rng, 1, 2);
        const auto& grid = n == 1 ? g1 : g2;
        const ConvolutionMeasure rho{random_measure(rng, n, 4, 1.5)};
        const auto f = random_exp_combo(rng, n, 3, 1.5);
        const double exact = rho_integral_exp(f, rho);
        const double quad = integrate_rho([&](std::span<const double> w) { return exp_eval(f, w); }, rho, grid);
        EXPECT_NEAR(exact, quad, 1e-8 * std::max(1.0, std::abs(exact)));
        const auto c = random_chaos(rng, n, 8, 5);
        const double exact_c = rho_integral_chaos(c, rho);
        const double quad_c = integrate_rho([&](std::span<const double> w) { return eval_chaos(c, w); }, rho, grid);
        EXPECT_NEAR(exact_c, quad_c, 1e-8 * std::max(1.0, std::abs(exact_c)));
    }
}

TEST(RhoIntegral, AgreesWithMonteCarlo) {
    for (int i = 0; i < 20; ++i) {
        auto rng = make_rng(33, i);
        const auto n = uniform_index(rng, 1, 2);
        const ConvolutionMeasure rho{random_measure(rng, n, 4, 1.5)};
        const auto f = random_exp_combo(rng, n, 3, 1.0);
        const auto est = mc_integral_rho([&](std::span<const double> w) { return exp_eval(f, w); }, rho, 33, 40000, i);
        EXPECT_LE(std::abs(est.estimate - rho_integral_exp(f, rho)), 3.0 * est.standard_error) << "case " << i;
    }
}

TEST(CharGram, Examples) {
    const std::vector<Vector> three{{0.0}, {1.0}, {-0.4}};
    const auto ones = char_gram(DiscreteMeasure::dirac({0.0}), three);
    for (Eigen::Index a = 0; a < 3; ++a)
        for (Eigen::Index b = 0; b < 3; ++b) EXPECT_NEAR(std::abs(ones.matrix()(a, b) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(ones.min_eigenvalue(), 0.0, 1e-12);

    const std::vector<Vector> two{{0.0}, {1.0}};
    const auto g = char_gram(sym1(), two);
    EXPECT_NEAR(g.matrix()(0, 1).real(), std::cos(1.0), 1e-15);
    EXPECT_NEAR(g.matrix()(0, 1).imag(), 0.0, 1e-15);
    EXPECT_NEAR(g.min_eigenvalue(), 1.0 - std::cos(1.0), 1e-12);

    const std::vector<Vector> single{{0.7}};
    EXPECT_NEAR(char_gram(sym1(), single).matrix()(0, 0).real(), 1.0, 1e-15);
    const std::vector<Vector> bad{{0.7, 1.0}};
    EXPECT_THROW(char_gram(sym1(), bad), DimensionError);
}

TEST(CharGram, HermitianAndPsdOnRandomConfigurations) {
    for (int i = 0; i < 300; ++i) {
        auto rng = make_rng(34, i);
        const auto n = uniform_index(rng, 1, 3);
        const auto nu = random_measure(rng, n, 5, 1.5);
        const auto hs = random_directions(rng, n, uniform_index(rng, 1, 6), 1.5);
        const auto g = char_gram(nu, hs);
        EXPECT_LE((g.matrix() - g.matrix().adjoint()).norm(), 1e-15);
        EXPECT_GE(g.min_eigenvalue(), -1e-10);
    }
}

TEST(ConvolveNu, Examples) {
    const auto nu = sym1();
    const auto a = convolve_nu(nu, DiscreteMeasure::dirac({0.0}));
    EXPECT_EQ(a.atoms(), nu.atoms());
    EXPECT_EQ(a.weights(), nu.weights());
    const auto b = convolve_nu(nu, DiscreteMeasure::dirac({1.0}));
    EXPECT_EQ(b.atoms(), (std::vector<Vector>{{2.0}, {0.0}}));
    const auto c = convolve_nu(nu, nu);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c.atoms(), (std::vector<Vector>{{2.0}, {0.0}, {-2.0}}));
    EXPECT_EQ(c.weights(), (std::vector<double>{0.25, 0.5, 0.25}));
    EXPECT_THROW(convolve_nu(nu, DiscreteMeasure::dirac({0.0, 0.0})), DimensionError);
}

TEST(WickDensityIdentity, Examples) {
    const auto d0 = DiscreteMeasure::dirac({0.0, 0.0});
    EXPECT_TRUE(wick_density_identity_check(d0, d0).pass);
    const auto r = wick_density_identity_check(DiscreteMeasure::dirac({0.5, 1.0}), DiscreteMeasure::dirac({-0.2, 0.1}));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_TRUE(wick_density_identity_check(sym1(), DiscreteMeasure(1, {{0.5}, {-0.5}}, {0.5, 0.5})).pass);
}

TEST(WickDensityIdentity, RandomPairs) {
    for (int i = 0; i < 100; ++i) {
        auto rng = make_rng(35, i);
        const auto n = uniform_index(rng, 1, 3);
        const auto r = wick_density_identity_check(random_measure(rng, n, 4, 1.5), random_measure(rng, n, 4, 1.5));
        EXPECT_TRUE(r.pass) << r.lhs;
    }
}

TEST(SampleRho, DeterministicAndCentred) {
    const ConvolutionMeasure rho{DiscreteMeasure::dirac({0.8, -0.3})};
    const std::size_t count = 20000;
    const auto a = sample_rho(rho, 7, count);
    EXPECT_EQ(a, sample_rho(rho, 7, count));
    EXPECT_NE(a, sample_rho(rho, 8, count));
    EXPECT_NE(a, sample_rho(rho, 7, count, 1));
    for (std::size_t k = 0; k < 2; ++k) {
        double mean = 0.0;
        for (const auto& w : a) mean += w[k];
        mean /= static_cast<double>(count);
        EXPECT_NEAR(mean, rho.nu.atoms()[0][k], 3.0 / std::sqrt(static_cast<double>(count)));
    }
    EXPECT_THROW(sample_rho(rho, 7, 0), std::invalid_argument);
}

}  // namespace
}  // namespace wickbench
