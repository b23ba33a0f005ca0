#include <gtest/gtest.h>

#include <random>
#include <string>

#include "rdcert/config.hpp"
#include "rdcert/error.hpp"

using namespace rdcert;

namespace {

const char* kMinimal = R"(
[model]
kind = combustion   # Y' = -Y e^T

[scheme]
a = 1
b = 2
t_end = 0.5

[initial.u]
kind = uniform
value = 1

[initial.v]
kind = uniform
value = 0
)";

std::string with_line(const std::string& section_header, const std::string& line) {
    std::string text = kMinimal;
    const auto pos = text.find(section_header);
    return text.insert(pos + section_header.size(), "\n" + line);
}

/// Expects a ConfigError whose message mentions `needle`.
void expect_error(const std::string& text, const std::string& needle) {
    try {
        parse_config(text);
        ADD_FAILURE() << "no error for: " << needle;
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
}

InitialData random_initial(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> pos(0.0, 5.0);
    InitialData d;
    switch (rng() % 3) {
        case 0:
            d.kind = InitialData::Kind::Uniform;
            d.value = pos(rng);
            break;
        case 1:
            d.kind = InitialData::Kind::Bump;
            d.center = pos(rng) / 5.0;
            d.width = 0.01 + pos(rng) / 10.0;
            d.height = pos(rng);
            d.baseline = pos(rng);
            break;
        default:
            d.kind = InitialData::Kind::Nodes;
            for (std::size_t j = 0; j < n; ++j) d.values.push_back(pos(rng));
    }
    return d;
}

RunConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const GrowthFunction growth[] = {GrowthFunction::power(0.5 + 3 * unit(rng)), GrowthFunction::exp(),
                                     GrowthFunction::sub_exp(0.1 + 0.8 * unit(rng)), GrowthFunction::double_exp(),
                                     GrowthFunction::double_exp_minus_poly({unit(rng), unit(rng)})};
    RunConfig c;
    switch (rng() % 3) {
        case 0:
            c.model.kind = ModelConfig::Kind::Combustion;
            c.model.m = 1 + static_cast<int>(rng() % 4);
            break;
        case 1:
            c.model.kind = ModelConfig::Kind::Absorption;
            c.model.F = growth[rng() % 5];
            c.model.G = growth[rng() % 5];
            c.model.lambda = 0.05 + 0.9 * unit(rng);
            c.model.threshold_s_max = 1 + 30 * unit(rng);
            c.model.threshold_samples = 2 + static_cast<int>(rng() % 3000);
            break;
        default:
            c.model.kind = ModelConfig::Kind::Blowup;
    }
    if (rng() % 2) c.model.C = 10 * unit(rng);
    if (rng() % 2) c.model.mu = 0.01 + unit(rng);

    c.grid.n_nodes = 3 + rng() % 60;
    c.grid.length = 0.1 + 5 * unit(rng);

    c.scheme.a = 0.01 + 3 * unit(rng);
    c.scheme.b = 0.01 + 3 * unit(rng);
    c.scheme.t_end = 10 * unit(rng);
    c.scheme.dt_min = 1e-12 * (1 + unit(rng));
    c.scheme.dt_init = 1e-4 * (1 + unit(rng));
    c.scheme.dt_max = 0.01 + unit(rng);
    c.scheme.rtol = 1e-9 + 1e-3 * unit(rng);
    c.scheme.blowup_threshold = 1e3 + 1e8 * unit(rng);

    c.functional.p = 2 + static_cast<int>(rng() % 11);
    if (rng() % 2) c.functional.theta = 1.0 + 3 * unit(rng) + 1e-9;

    c.initial_u = random_initial(rng, c.grid.n_nodes);
    c.initial_v = random_initial(rng, c.grid.n_nodes);

    if (rng() % 2) c.output.csv = "out_" + std::to_string(rng() % 1000) + ".csv";
    if (rng() % 2) c.output.report = "report.txt";
    c.output.log_every = 1 + rng() % 100;

    if (rng() % 2) c.check.u_max = 0.5 + 20 * unit(rng);
    if (rng() % 2) c.check.v_max = 0.5 + 20 * unit(rng);
    c.check.n_per_axis = 2 + static_cast<int>(rng() % 200);
    c.check.seed = rng();
    return c;
}

}  // namespace

TEST(Config, MinimalUsesDefaults) {
    const auto c = parse_config(kMinimal);
    EXPECT_EQ(c.model.kind, ModelConfig::Kind::Combustion);
    EXPECT_EQ(c.model.m, 1);
    EXPECT_EQ(c.grid, GridConfig{});
    EXPECT_EQ(c.scheme.a, 1.0);
    EXPECT_EQ(c.scheme.b, 2.0);
    EXPECT_EQ(c.scheme.t_end, 0.5);
    EXPECT_EQ(c.scheme.rtol, SchemeConfig{}.rtol);
    EXPECT_EQ(c.functional.p, 4);
    EXPECT_FALSE(c.functional.theta);
    EXPECT_EQ(c.initial_u.value, 1.0);
    EXPECT_TRUE(c.output.csv.empty());
    EXPECT_EQ(c.check.seed, kDefaultSeed);
}

TEST(Config, RoundTripProperty) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const auto original = random_config(rng);
        const auto text = serialize_config(original);
        RunConfig reparsed;
        ASSERT_NO_THROW(reparsed = parse_config(text)) << text;
        EXPECT_EQ(reparsed, original) << text;
        EXPECT_EQ(serialize_config(reparsed), text);
    }
}

TEST(Config, ShippedConfigsParse) {
    for (const char* name : {"blowup.ini", "combustion.ini", "absorption.ini"}) {
        const auto path = std::string(RD_CONFIG_DIR) + "/" + name;
        EXPECT_NO_THROW(load_config(path)) << path;
    }
    EXPECT_THROW(load_config(std::string(RD_CONFIG_DIR) + "/missing.ini"), ConfigError);
}

TEST(Config, ErrorsNameTheKey) {
    expect_error(with_line("[scheme]", "a = 3"), "duplicate key 'scheme.a'");

    std::string negative_a = kMinimal;
    negative_a.replace(negative_a.find("a = 1"), 5, "a = -1");
    expect_error(negative_a, "scheme.a");

    std::string bad_number = kMinimal;
    bad_number.replace(bad_number.find("t_end = 0.5"), 11, "t_end = soon");
    expect_error(bad_number, "scheme.t_end");

    expect_error(with_line("[scheme]", "gamma = 3"), "unknown key 'scheme.gamma'");
    expect_error(std::string(kMinimal) + "\n[plot]\nx = 1\n", "unknown section [plot]");
    expect_error(with_line("[model]", "m = 0"), "model.m");
    expect_error(with_line("[scheme]", "rtol = 0"), "scheme.rtol");
    expect_error(std::string(kMinimal) + "\n[grid]\nn_nodes = 2\n", "grid.n_nodes");
    expect_error(std::string(kMinimal) + "\n[functional]\np = 1\n", "functional.p");
    expect_error(std::string(kMinimal) + "\n[functional]\ntheta = 1\n", "functional.theta");
    expect_error(std::string(kMinimal) + "\n[output]\nlog_every = 0\n", "output.log_every");
    expect_error("[model]\nkind = combustion\n", "scheme.a");
    expect_error("a = 1\n", "outside of any section");
}

TEST(Config, NodeListMustMatchGrid) {
    std::string text = kMinimal;
    text += "\n[grid]\nn_nodes = 4\n";
    text.replace(text.find("kind = uniform\nvalue = 0"), 24, "kind = nodes\nvalues = 0, 1, 2");
    expect_error(text, "initial.v.values has 3 entries but grid.n_nodes is 4");

    text.replace(text.find("values = 0, 1, 2"), 16, "values = 0, 1, 2, 3");
    const auto c = parse_config(text);
    EXPECT_EQ(c.initial_v.sample(Grid(4, 1.0)), (Field{0, 1, 2, 3}));

    std::string negative = text;
    negative.replace(negative.find("values = 0, 1, 2, 3"), 19, "values = 0, -1, 2, 3");
    expect_error(negative, "initial.v.values");
}

TEST(Config, BumpSampling) {
    InitialData d;
    d.kind = InitialData::Kind::Bump;
    d.center = 0.5;
    d.width = 0.25;
    d.height = 2.0;
    d.baseline = 0.1;
    const auto f = d.sample(Grid(5, 1.0));
    EXPECT_DOUBLE_EQ(f[2], 2.1);
    EXPECT_DOUBLE_EQ(f[0], 0.1 + 2.0 * std::exp(-4.0));
    EXPECT_DOUBLE_EQ(f[1], 0.1 + 2.0 * std::exp(-1.0));
}

TEST(Config, BuildModelAppliesClaims) {
    ModelConfig m;
    m.kind = ModelConfig::Kind::Combustion;
    EXPECT_EQ(build_model(m).claimed_mu(), 0.5);
    m.mu = 0.25;
    m.C = 3.0;
    const auto combustion = build_model(m);
    EXPECT_EQ(combustion.claimed_mu(), 0.25);
    EXPECT_EQ(combustion.claimed_C(), 3.0);

    ModelConfig blow;
    blow.kind = ModelConfig::Kind::Blowup;
    EXPECT_FALSE(build_model(blow).claimed_mu());

    ModelConfig abs;
    abs.kind = ModelConfig::Kind::Absorption;
    abs.F = GrowthFunction::exp();
    abs.G = GrowthFunction::exp();
    const auto model = build_model(abs);
    EXPECT_EQ(model.claimed_C(), 0.0);
    EXPECT_EQ(model.claimed_mu(), 0.5);

    abs.F.reset();
    EXPECT_THROW(build_model(abs), ConfigError);
}
