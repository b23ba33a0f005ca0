#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rdcert/kinetics.hpp"
#include "rdcert/state.hpp"

namespace rdcert {

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr std::size_t kMaxWitnesses = 100;

enum class Inequality {
    FBelowSum,       // f <= f + mu g
    SumNonpositive,  // f + mu g <= 0
    Indeterminate,   // kinetics overflowed at the sample
};

const char* inequality_name(Inequality which);

struct MassControlViolation {
    double u;
    double v;
    double f;
    double f_plus_mu_g;
    Inequality which;
};

/// Sampled verdict on f <= f + mu g <= 0 over {u, v >= 0, u + v >= C} within
/// the box [0, u_max] x [0, v_max]. Overflowing samples count as violations,
/// so passed <=> violation_count == 0.
struct MassControlReport {
    bool passed = false;
    double mu = 0.0;
    double C = 0.0;
    double u_max = 0.0;
    double v_max = 0.0;
    std::uint64_t seed = kDefaultSeed;
    std::size_t samples_tested = 0;
    std::size_t indeterminate = 0;
    std::size_t violation_count = 0;
    std::vector<MassControlViolation> violations;  // first kMaxWitnesses, lattice then random order
};

/// Tests both inequalities on the n_per_axis^2 lattice of the box (restricted
/// to u + v >= C) and on n_per_axis^2 seeded uniform draws from the box.
MassControlReport check_mass_control(const ReactionModel& model, double C, double mu,
                                     double u_max, double v_max, int n_per_axis,
                                     std::uint64_t seed = kDefaultSeed);

/// For models without a claimed mu: tries mu = 2^-k, k = 0..20, and returns
/// the report of the largest passing mu, or the mu = 1 report if none pass.
MassControlReport search_mu(const ReactionModel& model, double C, double u_max, double v_max,
                            int n_per_axis, std::uint64_t seed = kDefaultSeed);

/// Box edge used when none is configured: max(2C, 10, 2 * data sup).
double default_check_extent(double C, double data_sup);

struct GNonnegReport {
    bool passed = false;
    std::size_t samples_tested = 0;
    std::size_t indeterminate = 0;
    std::vector<MassControlViolation> witnesses;  // f_plus_mu_g holds g
};

/// Sampled g >= 0 on the lattice of [0, u_max] x [0, v_max].
GNonnegReport check_g_nonneg(const ReactionModel& model, double u_max, double v_max, int n_per_axis);

/// First node (scan order: node index, then u before v) where a field exceeds
/// its bound. The bounds are non-strict.
std::optional<BoundEvent> monitor_bounds(const SimState& state, double u_bar0, double v_bar0);

/// monitor_bounds applied to each field separately: at most one event per field.
std::vector<BoundEvent> scan_bounds(const SimState& state, double u_bar0, double v_bar0);

struct ClaimReport {
    bool bound_u_held = true;
    bool bound_v_held = true;
    std::optional<BoundEvent> first_violation;
    std::optional<BoundEvent> first_u_violation;
    std::optional<BoundEvent> first_v_violation;
    std::vector<int> J_sign_history;  // -1, 0, +1 per logged row; NaN rows log 0
    std::size_t J_indeterminate = 0;   // rows where J was NaN (kinetics overflow)
    double L_max = 0.0;
};

ClaimReport assemble_claim_report(const TimeSeries& series, const std::vector<BoundEvent>& events);

}  // namespace rdcert
