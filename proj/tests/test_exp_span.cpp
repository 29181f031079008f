#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <wickbench/exp_span.hpp>
#include <wickbench/quadrature.hpp>
#include <wickbench/random.hpp>

#include "test_util.hpp"

namespace wickbench {
namespace {

using testing::combo_near;
constexpr double e = std::numbers::e;

ExpCombo E(Vector h, double w = 1.0) { return ExpCombo::single(std::move(h), w); }

TEST(ExpEval, Examples) {
    EXPECT_EQ(exp_eval(E({0.0}), Vector{3.7}), 1.0);
    EXPECT_NEAR(exp_eval(E({1.0}), Vector{1.0}), 1.6487212707001282, 1e-15);
    EXPECT_EQ(exp_eval(E({1.0}) - E({-1.0}), Vector{0.0}), 0.0);
    EXPECT_THROW(exp_eval(E({1.0}), Vector{1.0, 2.0}), DimensionError);
}

TEST(WickExp, Examples) {
    EXPECT_TRUE(combo_near(wick_exp(E({0.4, -1.0}), ExpCombo::one(2)), E({0.4, -1.0}), 0));
    EXPECT_TRUE(combo_near(wick_exp(E({1.0}), E({1.0})), E({2.0}), 0));
    const auto a = E({0.3}), b = E({-0.7}), c = E({1.1});
    EXPECT_TRUE(combo_near(wick_exp(a + b, c), E({1.4}) + E({0.4}), 1e-15));
    EXPECT_THROW(wick_exp(E({1.0}), E({1.0, 0.0})), DimensionError);
}

TEST(PointwiseExp, Examples) {
    EXPECT_TRUE(combo_near(pointwise_exp(E({0.5}), ExpCombo::one(1)), E({0.5}), 0));
    const auto sq = pointwise_exp(E({1.0}), E({1.0}));
    EXPECT_TRUE(combo_near(sq, E({2.0}, e), 1e-15));
    EXPECT_TRUE(combo_near(pointwise_exp(E({1.0}), E({-1.0})), E({0.0}, 1 / e), 1e-15));
    auto rng = make_rng(1, 0);
    for (int i = 0; i < 5; ++i) {
        Vector w{uniform(rng, -2, 2)};
        EXPECT_NEAR(exp_eval(sq, w), std::pow(exp_eval(E({1.0}), w), 2), 1e-12 * exp_eval(sq, w));
    }
}

TEST(PointwiseExp, AgreesWithPointEvaluationOnRandomCombos) {
    for (int i = 0; i < 50; ++i) {
        auto rng = make_rng(2, i);
        const auto n = uniform_index(rng, 1, 3);
        const auto f = random_exp_combo(rng, n, 4, 1.5);
        const auto g = random_exp_combo(rng, n, 4, 1.5);
        const auto fg = pointwise_exp(f, g);
        const auto w = random_in_ball(rng, n, 2.0);
        EXPECT_NEAR(exp_eval(fg, w), exp_eval(f, w) * exp_eval(g, w), 1e-10 * std::max(1.0, std::abs(exp_eval(fg, w))));
    }
}

TEST(AlphaExp, Examples) {
    const auto f = E({0.3, 1.0}, 2.0) + E({-0.5, 0.2}, -1.0);
    const auto g = E({1.0, 1.0}) + E({0.1, -0.4}, 0.5);
    EXPECT_TRUE(combo_near(alpha_exp(f, g, 1.0), pointwise_exp(f, g), 0));
    EXPECT_TRUE(combo_near(alpha_exp(f, g, 0.0), wick_exp(f, g), 0));
    EXPECT_TRUE(combo_near(alpha_exp(E({1.0}), E({1.0}), 0.5), E({2.0}, std::exp(0.5)), 1e-15));
    EXPECT_THROW(alpha_exp(f, g, 1.5), std::domain_error);
    EXPECT_THROW(alpha_exp(f, g, -0.1), std::domain_error);
}

TEST(GammaExp, Examples) {
    const auto f = E({0.3}, 2.0) + E({-1.0}, 0.5);
    EXPECT_TRUE(combo_near(gamma_exp(1.0, f), f, 0));
    EXPECT_TRUE(combo_near(gamma_exp(0.0, f), E({0.0}, 2.5), 0));
    EXPECT_TRUE(combo_near(gamma_exp(0.5, E({2.0})), E({1.0}), 0));
    EXPECT_THROW(gamma_exp(-1.0, f), std::domain_error);
}

TEST(GradientExp, Examples) {
    auto g0 = gradient_exp(ExpCombo::one(1));
    ASSERT_EQ(g0.size(), 1u);
    EXPECT_TRUE(g0[0].empty());
    EXPECT_TRUE(combo_near(gradient_exp(E({3.0}))[0], E({3.0}, 3.0), 0));
    auto g = gradient_exp(E({1.0, 2.0}));
    EXPECT_TRUE(combo_near(g[0], E({1.0, 2.0}), 0));
    EXPECT_TRUE(combo_near(g[1], E({1.0, 2.0}, 2.0), 0));
}

TEST(GradientExp, MatchesFiniteDifferences) {
    auto rng = make_rng(4, 0);
    const auto f = random_exp_combo(rng, 2, 4, 1.5);
    const auto g = gradient_exp(f);
    for (int i = 0; i < 5; ++i) {
        const auto w = random_in_ball(rng, 2, 1.0);
        for (std::size_t k = 0; k < 2; ++k) {
            Vector a = w, b = w;
            a[k] += 1e-5;
            b[k] -= 1e-5;
            EXPECT_NEAR(exp_eval(g[k], w), (exp_eval(f, a) - exp_eval(f, b)) / 2e-5, 1e-6);
        }
    }
}

TEST(MuInnerExp, Examples) {
    EXPECT_DOUBLE_EQ(mu_inner_exp(E({0.7, -0.2}), ExpCombo::one(2)), 1.0);
    EXPECT_NEAR(mu_inner_exp(E({1.0}), E({-1.0})), 0.36787944117144233, 1e-15);
    EXPECT_NEAR(mu_inner_exp(E({1.0}), E({1.0})), e, 1e-15);
}

TEST(MuInnerExp, AgreesWithQuadrature) {
    const auto grid = gauss_hermite_grid(2, 30);
    for (int i = 0; i < 20; ++i) {
        auto rng = make_rng(6, i);
        const auto f = random_exp_combo(rng, 2, 3, 1.0);
        const auto g = random_exp_combo(rng, 2, 3, 1.0);
        const double q = integrate_mu([&](auto w) { return exp_eval(f, w) * exp_eval(g, w); }, grid);
        EXPECT_NEAR(mu_inner_exp(f, g), q, 1e-9 * std::max(1.0, std::abs(q)));
    }
}

TEST(ToChaos, Examples) {
    EXPECT_EQ(to_chaos(ExpCombo::one(2), 5).chaos, ChaosExpansion::constant(2, 1.0));
    const auto t = to_chaos(E({0.5}), 2).chaos;
    EXPECT_DOUBLE_EQ(t.coefficient(MultiIndex{0}), 1.0);
    EXPECT_DOUBLE_EQ(t.coefficient(MultiIndex{1}), 0.5);
    EXPECT_DOUBLE_EQ(t.coefficient(MultiIndex{2}), 0.125);
    EXPECT_EQ(t.size(), 3u);
    EXPECT_EQ(to_chaos(E({1.3, -0.2}, 1.0), 0).chaos, ChaosExpansion::constant(2, 1.0));
}

// The degree-N remainder of E(h)(w) is of order |h|^N sup|He_N| / N!; for |h| = 1 it is
// about 6e-6 at N = 12 and below 1e-9 at N = 20.
TEST(ToChaos, ConvergesToPointValues) {
    for (int i = 0; i < 40; ++i) {
        auto rng = make_rng(7, i);
        const auto n = uniform_index(rng, 1, 2);
        const auto f = random_exp_combo(rng, n, 3, 1.0);
        const auto w = random_in_ball(rng, n, 1.0);
        EXPECT_NEAR(eval_chaos(to_chaos(f, 12).chaos, w), exp_eval(f, w), 3e-5);
        EXPECT_NEAR(eval_chaos(to_chaos(f, 20).chaos, w), exp_eval(f, w), 1e-8);
    }
}

TEST(ToChaos, ErrorBoundDominatesL2Distance) {
    auto rng = make_rng(8, 0);
    const auto f = random_exp_combo(rng, 2, 3, 1.5);
    const auto fine = to_chaos(f, 30).chaos;
    for (unsigned cap : {2u, 4u, 8u}) {
        const auto t = to_chaos(f, cap);
        EXPECT_LE(l2_norm(fine - t.chaos), t.l2_error_bound * (1 + 1e-9));
    }
}

TEST(ExpSpanInvariants, CommutativeBilinearWithUnit) {
    for (int i = 0; i < 100; ++i) {
        auto rng = make_rng(10, i);
        const auto n = uniform_index(rng, 1, 3);
        const auto f = random_exp_combo(rng, n, 3, 1.5);
        const auto g = random_exp_combo(rng, n, 3, 1.5);
        const auto k = random_exp_combo(rng, n, 3, 1.5);
        const double a = uniform(rng, 0, 1), s = uniform(rng, -2, 2);
        const auto one = ExpCombo::one(n);
        for (double al : {0.0, a, 1.0}) {
            EXPECT_TRUE(combo_near(alpha_exp(f, g, al), alpha_exp(g, f, al), 1e-13));
            EXPECT_TRUE(combo_near(alpha_exp(f, one, al), f, 1e-15));
            EXPECT_TRUE(combo_near(alpha_exp(f + s * g, k, al), alpha_exp(f, k, al) + s * alpha_exp(g, k, al), 1e-12));
        }
    }
}

TEST(ExpSpanInvariants, GammaIsAWickHomomorphism) {
    for (int i = 0; i < 100; ++i) {
        auto rng = make_rng(12, i);
        const auto n = uniform_index(rng, 1, 3);
        const auto f = random_exp_combo(rng, n, 3, 1.5);
        const auto g = random_exp_combo(rng, n, 3, 1.5);
        const double lam = uniform(rng, 0, 2);
        EXPECT_TRUE(combo_near(gamma_exp(lam, wick_exp(f, g)), wick_exp(gamma_exp(lam, f), gamma_exp(lam, g)), 1e-12));
    }
}

TEST(ExpSpanInvariants, GammaIntertwinesAlphaProducts) {
    for (int i = 0; i < 100; ++i) {
        auto rng = make_rng(13, i);
        const auto n = uniform_index(rng, 1, 3);
        const auto f = random_exp_combo(rng, n, 3, 1.5);
        const auto g = random_exp_combo(rng, n, 3, 1.5);
        const double lam = uniform(rng, 1, 2);
        const double alpha = uniform(rng, 0, 1);
        const auto lhs = gamma_exp(lam, alpha_exp(f, g, alpha));
        const auto rhs = alpha_exp(gamma_exp(lam, f), gamma_exp(lam, g), alpha / (lam * lam));
        EXPECT_TRUE(combo_near(lhs, rhs, 1e-12));
    }
}

TEST(ExpSpanInvariants, AlphaProductIsConjugatedPointwiseProduct) {
    for (int i = 0; i < 100; ++i) {
        auto rng = make_rng(14, i);
        const auto n = uniform_index(rng, 1, 3);
        const auto f = random_exp_combo(rng, n, 3, 1.5);
        const auto g = random_exp_combo(rng, n, 3, 1.5);
        const double alpha = uniform(rng, 0.01, 1);
        const double s = std::sqrt(alpha);
        const auto composed = gamma_exp(1 / s, pointwise_exp(gamma_exp(s, f), gamma_exp(s, g)));
        EXPECT_TRUE(combo_near(alpha_exp(f, g, alpha), composed, 1e-12));
    }
}

TEST(ExpSpanInvariants, WickProductFactorsGaussianPairings) {
    for (int i = 0; i < 100; ++i) {
        auto rng = make_rng(15, i);
        const auto n = uniform_index(rng, 1, 3);
        const auto f = random_exp_combo(rng, n, 3, 1.5);
        const auto g = random_exp_combo(rng, n, 3, 1.5);
        const auto h = E(random_in_ball(rng, n, 1.5));
        const double lhs = mu_inner_exp(wick_exp(f, g), h);
        const double rhs = mu_inner_exp(f, h) * mu_inner_exp(g, h);
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST(ExpCombo, NormalizationMergesDirections) {
    const auto f = E({1.0, 2.0}, 0.5) + E({1.0 + 1e-14, 2.0}, 0.25) + E({0.0, 0.0});
    EXPECT_EQ(f.size(), 2u);
    EXPECT_DOUBLE_EQ(f.terms()[1].weight, 0.75);
    EXPECT_TRUE((E({1.0}) - E({1.0})).empty());
    EXPECT_THROW(ExpCombo(2, {ExpTerm{1.0, {1.0}}}), DimensionError);
}

}  // namespace
}  // namespace wickbench
