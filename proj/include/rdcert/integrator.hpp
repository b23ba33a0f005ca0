#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "rdcert/kinetics.hpp"
#include "rdcert/lyapunov.hpp"
#include "rdcert/mesh.hpp"
#include "rdcert/state.hpp"

namespace rdcert {

/// Accepted states may dip this far below zero from round-off; they are
/// clamped to 0. Anything lower rejects the step.
inline constexpr double kPositivityTolerance = 1e-12;

struct SchemeConfig {
    double a = 1.0;
    double b = 1.0;
    double t_end = 1.0;
    double dt_init = 1e-3;
    double dt_min = 1e-14;
    double dt_max = 0.1;
    double rtol = 1e-6;
    double blowup_threshold = 1e6;

    /// Throws ConfigError naming the offending "scheme.*" key.
    void validate() const;

    bool operator==(const SchemeConfig&) const = default;
};

/// Solves (I - dt * coeff * Laplacian) w = f with the Neumann stencil rows
/// by Thomas elimination.
Field solve_diffusion_implicit(std::span<const double> f, double coeff, double dt, const Grid& grid);

/// One Lie-splitting step of size dt: explicit Euler reaction, then backward
/// Euler diffusion for each species. Returns false (and leaves out_* in an
/// unspecified state) when the reaction overflows or an intermediate value is
/// non-finite or below -kPositivityTolerance.
bool lie_step(const Field& u, const Field& v, double dt, const ReactionModel& model,
              const SchemeConfig& cfg, const Grid& grid, Field& out_u, Field& out_v);

struct StepOutcome {
    SimState state;  // state.dt holds the next step size to try
    double dt_used;
    int rejections;
};

struct Rejection {
    enum class Reason { DtUnderflow, Divergence };
    Reason reason;
    double t;
};

/// Advances an accepted state by one adaptive step. The step is doubled
/// (one dt step vs two dt/2 steps); the difference in the scaled sup norm
/// max_s |full - half|_inf / max(1, |half|_inf) must not exceed rtol, and the
/// accepted value is the extrapolation 2*half - full. Failures halve dt and
/// retry; a Rejection is returned once dt would drop below dt_min.
std::variant<StepOutcome, Rejection> step_imex(const SimState& state, const ReactionModel& model,
                                               const SchemeConfig& cfg, const Grid& grid);

struct Verdict {
    enum class Kind { Completed, BlowUp, DtUnderflow };
    Kind kind = Kind::Completed;
    /// t_end for Completed, the first time sup u + sup v > M for BlowUp,
    /// the stall time for DtUnderflow.
    double t = 0.0;
};

const char* verdict_name(Verdict::Kind kind);

struct RunOptions {
    /// Log one row every log_every accepted steps (plus t = 0 and the final state).
    std::size_t log_every = 1;
    /// Called with every accepted state, including the initial one.
    std::function<void(const SimState&)> observer;
};

struct RunResult {
    TimeSeries series;
    Verdict verdict;
    std::vector<BoundEvent> events;  // first per-field exceedance of every accepted step
    SimState final_state;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

/// Integrates from (u0, v0) until t_end, blow-up or step-size underflow.
/// Throws ConfigError on invalid configuration or negative initial data.
RunResult run(const ReactionModel& model, const SchemeConfig& cfg, const Grid& grid,
              const Field& u0, const Field& v0, const FunctionalParams& functional,
              const RunOptions& options = {});

}  // namespace rdcert
