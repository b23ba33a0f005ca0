#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "rdcert/config.hpp"
#include "rdcert/integrator.hpp"
#include "rdcert/verify.hpp"

namespace rdcert {

/// Process exit codes of the rd-certify driver.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 1,
    kExitBlowUp = 2,
    kExitBoundViolated = 3,  // run: bound violated; check: condition failed
    kExitDtUnderflow = 4,
};

/// Exit code of a run as a function of its verdict and claim report.
int run_exit_code(const Verdict& verdict, const ClaimReport& report);

/// Sampling seed: RD_CERTIFY_SEED when set, otherwise the configured one.
/// Throws ConfigError for a malformed environment value.
std::uint64_t effective_seed(std::uint64_t configured);

/// Everything derived from a config before integration starts.
struct Experiment {
    RunConfig config;
    ReactionModel model;
    Grid grid;
    Field u0;
    Field v0;
    MassControlReport mass_control;
    GNonnegReport g_nonneg;
    FunctionalParams functional;
};

/// Builds the model, grid and initial data, runs the mass-control and
/// g >= 0 checks and derives the functional parameters. C defaults to 0 and
/// mu to the largest passing power of two (1 when none passes) for models
/// without claims.
Experiment prepare_experiment(const RunConfig& config);

int cmd_run(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);
int cmd_check(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

struct ThetaArgs {
    double a = 1.0;
    double b = 1.0;
    double mu = 1.0;
    int p = 4;
    std::optional<double> theta;
};

int cmd_theta(const ThetaArgs& args, std::ostream& out, std::ostream& err);

}  // namespace rdcert
