#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rdcert/error.hpp"
#include "rdcert/kinetics.hpp"

using namespace rdcert;

namespace {

std::vector<GrowthFunction> all_growth_kinds() {
    return {GrowthFunction::power(1.0),   GrowthFunction::power(2.5), GrowthFunction::exp(),
            GrowthFunction::sub_exp(0.5), GrowthFunction::double_exp(),
            GrowthFunction::double_exp_minus_poly({0.0, 1.0})};
}

/// Brute-force threshold on the same lattice, evaluating F/G = 1 - P/G directly.
std::optional<double> oracle_threshold_minus_poly(double lambda, double s_max, int n) {
    const double step = s_max / (n - 1);
    std::optional<double> last_fail;
    for (int k = 0; k < n; ++k) {
        const double s = k + 1 == n ? s_max : step * k;
        const double ratio = 1.0 - s / std::exp(std::exp(s));
        if (!(ratio > lambda)) last_fail = s;
    }
    if (last_fail && *last_fail == s_max) return std::nullopt;
    return last_fail.value_or(0.0);
}

}  // namespace

TEST(ReactionModel, CatalogValues) {
    auto c = ReactionModel::combustion(1).evaluate(1.0, 0.0);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->f, -1.0);
    EXPECT_EQ(c->g, 1.0);

    auto b = ReactionModel::blowup_example().evaluate(0.75, 1.0);
    ASSERT_TRUE(b);
    EXPECT_DOUBLE_EQ(b->f, 0.1875);
    EXPECT_DOUBLE_EQ(b->g, 0.75);

    auto a = ReactionModel::absorption(GrowthFunction::exp(), GrowthFunction::exp(), 0.0, 0.5).evaluate(2.0, 0.0);
    ASSERT_TRUE(a);
    EXPECT_EQ(a->f, -2.0);
    EXPECT_EQ(a->g, 2.0);
}

TEST(ReactionModel, NegativeInputIsDomainError) {
    const auto model = ReactionModel::combustion(2);
    EXPECT_THROW(model.evaluate(-1e-3, 1.0), DomainError);
    EXPECT_THROW(model.evaluate(1.0, -1.0), DomainError);
    EXPECT_THROW(model.evaluate(std::nan(""), 1.0), DomainError);
}

TEST(ReactionModel, DefaultClaims) {
    const auto comb = ReactionModel::combustion(3);
    EXPECT_EQ(comb.claimed_C(), 0.0);
    EXPECT_EQ(comb.claimed_mu(), 0.5);
    const auto blow = ReactionModel::blowup_example();
    EXPECT_FALSE(blow.claimed_C());
    EXPECT_FALSE(blow.claimed_mu());
    const auto abs = ReactionModel::absorption_with_threshold(GrowthFunction::exp(), GrowthFunction::exp());
    EXPECT_EQ(abs.claimed_C(), 0.0);
    EXPECT_EQ(abs.claimed_mu(), 0.5);
    const auto overridden = comb.with_claims(2.0, std::nullopt);
    EXPECT_EQ(overridden.claimed_C(), 2.0);
    EXPECT_EQ(overridden.claimed_mu(), 0.5);
}

TEST(GrowthFunction, DoubleExpOverflowGuard) {
    const auto G = GrowthFunction::double_exp();
    EXPECT_NEAR(G.overflow_guard(), 6.565, 1e-3);
    EXPECT_TRUE(G.evaluate(6.5).has_value());
    EXPECT_FALSE(G.evaluate(6.6).has_value());
    EXPECT_TRUE(std::isfinite(G.log_value(50.0)));

    const auto model = ReactionModel::absorption(GrowthFunction::double_exp(), G, std::nullopt, std::nullopt);
    EXPECT_FALSE(model.evaluate(1.0, 7.0).has_value());
}

TEST(GrowthFunction, LogValueMatchesEvaluate) {
    for (const auto& F : all_growth_kinds()) {
        for (double s : {0.1, 0.5, 1.0, 2.0, 4.0, 6.0}) {
            const auto value = F.evaluate(s);
            ASSERT_TRUE(value) << F.to_string() << " at " << s;
            EXPECT_NEAR(F.log_value(s), std::log(*value), 1e-12 * std::max(1.0, std::abs(std::log(*value))))
                << F.to_string() << " at " << s;
        }
    }
}

TEST(GrowthFunction, TextRoundTrip) {
    for (const auto& F : all_growth_kinds()) {
        EXPECT_EQ(GrowthFunction::parse(F.to_string()), F) << F.to_string();
    }
    EXPECT_THROW(GrowthFunction::parse("cosh"), ConfigError);
    EXPECT_THROW(GrowthFunction::parse("power"), ConfigError);
    EXPECT_THROW(GrowthFunction::parse("exp:2"), ConfigError);
    EXPECT_THROW(GrowthFunction::parse("subexp:1.5"), ConfigError);
}

TEST(FindThreshold, EqualGrowthHasZeroThreshold) {
    const auto r = find_threshold_A(GrowthFunction::exp(), GrowthFunction::exp(), 0.5, 10.0, 101);
    ASSERT_TRUE(r.A);
    EXPECT_EQ(*r.A, 0.0);
}

TEST(FindThreshold, DoubleExpMinusPolyAgreesWithDenseOracle) {
    const auto F = GrowthFunction::double_exp_minus_poly({0.0, 1.0});
    const auto G = GrowthFunction::double_exp();
    for (double lambda : {0.9, 0.95, 0.99}) {
        const int n = 10001;
        const auto expected = oracle_threshold_minus_poly(lambda, 10.0, n);
        const auto r = find_threshold_A(F, G, lambda, 10.0, n);
        ASSERT_TRUE(expected);
        ASSERT_TRUE(r.A) << r.diagnostic;
        EXPECT_DOUBLE_EQ(*r.A, *expected) << "lambda " << lambda;
        EXPECT_LT(*r.A, 2.0);
    }
    // min of 1 - s e^{-e^s} is ~0.9027, so lambda = 0.9 is met everywhere
    EXPECT_EQ(*find_threshold_A(F, G, 0.9, 10.0, 10001).A, 0.0);
    EXPECT_GT(*find_threshold_A(F, G, 0.95, 10.0, 10001).A, 0.5);
}

TEST(FindThreshold, VanishingRatioIsNotFound) {
    const auto r = find_threshold_A(GrowthFunction::power(1.0), GrowthFunction::exp(), 0.5, 20.0, 2001);
    EXPECT_FALSE(r.A);
    EXPECT_FALSE(r.diagnostic.empty());
    EXPECT_THROW(find_threshold_A(GrowthFunction::exp(), GrowthFunction::exp(), 1.0, 10.0, 10), ConfigError);
}

TEST(ReactionModel, SignStructureProperties) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 6.0);
    const std::vector<ReactionModel> signed_models = {
        ReactionModel::combustion(1),
        ReactionModel::combustion(3),
        ReactionModel::absorption(GrowthFunction::exp(), GrowthFunction::exp(), 0.0, 0.5),
        ReactionModel::absorption(GrowthFunction::power(2.0), GrowthFunction::sub_exp(0.5), 0.0, 0.5),
        ReactionModel::absorption(GrowthFunction::double_exp_minus_poly({1.0, 2.0}), GrowthFunction::double_exp(),
                                  0.0, 0.5),
    };
    const auto blowup = ReactionModel::blowup_example();
    for (int trial = 0; trial < 10000; ++trial) {
        const double u = dist(rng), v = dist(rng);
        for (const auto& model : signed_models) {
            const auto r = model.evaluate(u, v);
            ASSERT_TRUE(r);
            EXPECT_LE(r->f, 0.0) << model.name();
            EXPECT_GE(r->g, 0.0) << model.name();
            const auto zero = model.evaluate(0.0, v);
            EXPECT_EQ(zero->f, 0.0);
            EXPECT_EQ(zero->g, 0.0);
        }
        const auto comb = signed_models[1].evaluate(u, v);
        EXPECT_EQ(comb->f + comb->g, 0.0);

        const double uu = u / 6.0;
        if (uu > 0.0 && uu < 1.0 && v > 0.0) EXPECT_GT(blowup.evaluate(uu, v)->f, 0.0);
    }
}

TEST(ReactionModel, CustomExtensionPoint) {
    ReactionModel::Custom linear{"linear", [](double u, double v) -> std::optional<Rates> { return Rates{-u, u + v}; },
                                 10.0, 10.0};
    const auto model = ReactionModel::custom(linear, 0.0, 1.0);
    EXPECT_EQ(model.name(), "linear");
    EXPECT_EQ(model.evaluate(2.0, 3.0)->g, 5.0);
    EXPECT_FALSE(model.evaluate(11.0, 0.0).has_value());
}
