#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdcert/integrator.hpp"
#include "rdcert/kinetics.hpp"
#include "rdcert/mesh.hpp"
#include "rdcert/verify.hpp"

namespace rdcert {

struct ModelConfig {
    enum class Kind { Absorption, Combustion, Blowup };

    Kind kind = Kind::Combustion;
    int m = 1;                          // combustion
    std::optional<GrowthFunction> F;    // absorption
    std::optional<GrowthFunction> G;    // absorption
    double lambda = 0.5;                // absorption: threshold ratio
    double threshold_s_max = 20.0;      // absorption: search interval for A
    int threshold_samples = 2001;       // absorption
    std::optional<double> C;            // overrides the model's claim
    std::optional<double> mu;           // overrides the model's claim

    bool operator==(const ModelConfig&) const = default;
};

struct GridConfig {
    std::size_t n_nodes = 101;
    double length = 1.0;

    bool operator==(const GridConfig&) const = default;
};

struct FunctionalConfig {
    int p = 4;
    std::optional<double> theta;

    bool operator==(const FunctionalConfig&) const = default;
};

/// Initial profile of one species.
struct InitialData {
    enum class Kind { Uniform, Bump, Nodes };

    Kind kind = Kind::Uniform;
    double value = 0.0;     // uniform
    double center = 0.5;    // bump: baseline + height * exp(-((x - center) / width)^2)
    double width = 0.1;
    double height = 1.0;
    double baseline = 0.0;
    std::vector<double> values;  // nodes

    Field sample(const Grid& grid) const;

    bool operator==(const InitialData&) const = default;
};

struct OutputConfig {
    std::string csv;     // empty: not written
    std::string report;  // empty: not written
    std::size_t log_every = 1;

    bool operator==(const OutputConfig&) const = default;
};

/// Sampling box for the mass-control and g >= 0 checks.
struct CheckConfig {
    std::optional<double> u_max;
    std::optional<double> v_max;
    int n_per_axis = 101;
    std::uint64_t seed = kDefaultSeed;

    bool operator==(const CheckConfig&) const = default;
};

/// Parsed INI-style run configuration. Sections: [model], [grid], [scheme],
/// [functional], [initial.u], [initial.v], [output], [check].
struct RunConfig {
    ModelConfig model;
    GridConfig grid;
    SchemeConfig scheme;
    FunctionalConfig functional;
    InitialData initial_u;
    InitialData initial_v;
    OutputConfig output;
    CheckConfig check;

    bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a config. Unknown sections or keys, duplicates and
/// constraint violations throw ConfigError naming "section.key".
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize_config(c)) == c for parsed c.
std::string serialize_config(const RunConfig& config);

/// Instantiates the catalog model, applying configured C / mu overrides.
ReactionModel build_model(const ModelConfig& config);

}  // namespace rdcert
