#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rdcert/error.hpp"
#include "rdcert/mesh.hpp"

using namespace rdcert;

namespace {

Field random_field(std::mt19937_64& rng, std::size_t n, double lo = -5.0, double hi = 5.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Field f(n);
    for (auto& x : f) x = dist(rng);
    return f;
}

}  // namespace

TEST(Grid, SpacingAndNodes) {
    Grid g(5, 2.0);
    EXPECT_DOUBLE_EQ(g.spacing(), 0.5);
    EXPECT_DOUBLE_EQ(g.x(4), 2.0);
    EXPECT_EQ(g.nodes().size(), 5u);
}

TEST(Grid, RejectsDegenerateInput) {
    EXPECT_THROW(Grid(2, 1.0), ConfigError);
    EXPECT_THROW(Grid(10, 0.0), ConfigError);
    EXPECT_THROW(Grid(10, -1.0), ConfigError);
}

TEST(Laplacian, ConstantIsInKernel) {
    Grid g(17, 3.0);
    const auto lap = laplacian(Field(17, 4.2), g);
    for (double x : lap) EXPECT_EQ(x, 0.0);
}

TEST(Laplacian, LinearRampHandEvaluation) {
    Grid g(5, 1.0);
    const auto lap = laplacian(g.nodes(), g);
    const double h = g.spacing();
    EXPECT_NEAR(lap[0], 2.0 / h, 1e-12);
    EXPECT_NEAR(lap[4], -2.0 / h, 1e-12);
    for (int j = 1; j < 4; ++j) EXPECT_NEAR(lap[j], 0.0, 1e-12);
}

TEST(Laplacian, CosineIsSecondOrder) {
    const double pi = std::numbers::pi;
    auto max_error = [&](std::size_t n) {
        Grid g(n, 1.0);
        Field f(n);
        for (std::size_t j = 0; j < n; ++j) f[j] = std::cos(pi * g.x(j));
        const auto lap = laplacian(f, g);
        double err = 0.0;
        for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(lap[j] + pi * pi * f[j]));
        return err;
    };
    const double e101 = max_error(101);
    const double e201 = max_error(201);
    // leading truncation term pi^4 h^2 / 12
    EXPECT_LT(e101, 1e-3);
    EXPECT_NEAR(e101 / e201, 4.0, 0.05);
}

TEST(Laplacian, SizeMismatchIsConfigError) {
    Grid g(5, 1.0);
    EXPECT_THROW(laplacian(Field(4, 0.0), g), ConfigError);
    EXPECT_THROW(integrate(Field(6, 0.0), g), ConfigError);
}

TEST(Laplacian, DiscreteFluxBalanceAndLinearity) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + rng() % 200;
        Grid g(n, 0.1 + static_cast<double>(rng() % 100) / 10.0);
        const auto f = random_field(rng, n);
        const auto k = random_field(rng, n);

        const auto lap = laplacian(f, g);
        double scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) scale += std::abs(lap[j]) * g.weight(j);
        EXPECT_NEAR(integrate(lap, g), 0.0, 1e-13 * scale);

        const double alpha = 1.7, beta = -0.3;
        Field combo(n);
        for (std::size_t j = 0; j < n; ++j) combo[j] = alpha * f[j] + beta * k[j];
        const auto lhs = laplacian(combo, g);
        const auto lk = laplacian(k, g);
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_NEAR(lhs[j], alpha * lap[j] + beta * lk[j], 1e-10 * (std::abs(lhs[j]) + 1.0) / (g.spacing() * g.spacing()));
        }
    }
}

TEST(SupNorm, Definition) {
    EXPECT_EQ(sup_norm(Field{0.0, 0.0, 0.0}), 0.0);
    EXPECT_EQ(sup_norm(Field{-3.0, 1.0, 2.0}), 3.0);
    EXPECT_EQ(sup_norm(Field{0.5, 0.5}), 0.5);
    EXPECT_TRUE(std::isnan(sup_norm(Field{1.0, NAN, 0.0})));
}

TEST(Integrate, TrapezoidValues) {
    for (std::size_t n : {3u, 4u, 11u, 100u}) {
        Grid g(n, 1.0);
        EXPECT_NEAR(integrate(Field(n, 1.0), g), 1.0, 1e-14);
        EXPECT_NEAR(integrate(g.nodes(), g), 0.5, 1e-14);
    }
    Grid g(101, 1.0);
    Field c(101);
    for (std::size_t j = 0; j < 101; ++j) c[j] = std::cos(std::numbers::pi * g.x(j));
    EXPECT_NEAR(integrate(c, g), 0.0, 1e-4);
}

TEST(Integrate, Monotone) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> bump(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + rng() % 50;
        Grid g(n, 2.0);
        const auto f = random_field(rng, n);
        Field k = f;
        for (auto& x : k) x += bump(rng);
        EXPECT_LE(integrate(f, g), integrate(k, g));
    }
}
