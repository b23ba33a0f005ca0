#pragma once

#include <optional>
#include <span>

#include "rdcert/kinetics.hpp"
#include "rdcert/mesh.hpp"
#include "rdcert/state.hpp"

namespace rdcert {

/// Parameters of the polynomial functional
///
///   H(u, v) = sum_{i=0..p} C(p, i) theta_i U^i V^(p-i),
///   U = (u - u_bar0)+,  V = (v - v_bar0)+,
///
/// with the weights theta_i generated from theta_0, theta_1 and the constant
/// log-curvature theta_i theta_{i+2} / theta_{i+1}^2 = theta^2. The weights
/// grow like theta^(i^2), so only their logarithms are stored.
struct FunctionalParams {
    int p = 4;
    double theta = 0.0;
    double log_theta0 = 0.0;
    double log_theta1 = 0.0;
    double mu = 0.0;
    double C = 0.0;
    double u_bar0 = 0.0;
    double v_bar0 = 0.0;
};

struct BoundConstants {
    double u_bar0;
    double v_bar0;
};

/// u_bar0 = max(C, |u0|_inf), v_bar0 = max(C, |v0|_inf).
BoundConstants bound_constants(double C, std::span<const double> u0, std::span<const double> v0);

/// (a + b)^2 / (4ab): theta^2 must exceed this.
double theta_lower_bound(double a, double b);

struct ThetaOverrides {
    std::optional<double> theta;
    std::optional<double> theta0;
    std::optional<double> theta1;
};

/// Builds and validates the functional parameters. Defaults:
/// theta = sqrt(1.1 * max(theta_lower_bound(a, b), 1)), theta_1 = 1,
/// theta_0 = mu / 2. Throws ConfigError naming the violated condition.
FunctionalParams build_params(double a, double b, double mu, double C, int p,
                              std::span<const double> u0, std::span<const double> v0,
                              const ThetaOverrides& overrides = {});

struct ThetaValue {
    double log;
    std::optional<double> value;  // absent when exp(log) overflows
};

/// Closed form log theta_i = log theta_0 + i (log theta_1 - log theta_0)
/// + i (i - 1) log theta. Throws ConfigError for i outside [0, p].
ThetaValue theta_at(const FunctionalParams& params, int i);

struct ConditionReport {
    double theta_margin;         // theta^2 - (a+b)^2/(4ab)
    bool theta_ok;
    double recurrence_residual;  // max_i |log(theta_i theta_{i+2} / theta_{i+1}^2) - 2 log theta|
    bool recurrence_ok;
    double max_log_ratio_excess;  // max_i log(theta_i / theta_{i+1}) - log mu
    bool ratio_ok;

    bool all_passed() const noexcept { return theta_ok && recurrence_ok && ratio_ok; }
};

inline constexpr double kRecurrenceTolerance = 1e-9;

ConditionReport check_conditions(const FunctionalParams& params, double a, double b);

struct PositiveParts {
    double U;
    double V;
    int sgn_u;  // 1 iff U > 0
    int sgn_v;  // 1 iff V > 0
};

PositiveParts positive_parts(const FunctionalParams& params, double u, double v) noexcept;

/// H(u, v); +inf flags overflow.
double h_value(const FunctionalParams& params, double u, double v);

/// Trapezoid quadrature of H over the grid.
double lyapunov_L(const FunctionalParams& params, const SimState& state, const Grid& grid);

/// T_i(xi, eta) / theta_{i+1}: the gradient quadratic with its weights
/// rescaled by theta_{i+1} so that only theta ratios are formed.
double quadratic_Ti(const FunctionalParams& params, int i, double a, double b,
                    int sgn_u, int sgn_v, double xi, double eta);

/// Log of the positive constant that divides I and J as reported:
/// max_i log theta_i. Signs and zero sets are unaffected.
double diagnostic_log_scale(const FunctionalParams& params);

/// Discrete dissipation term
///   I = -p(p-1) sum_i C(p-2, i) int T_i(u_x, v_x) U^i V^(p-2-i) dx
/// divided by exp(diagnostic_log_scale). Central-difference gradients inside,
/// one-sided at the two boundary nodes.
double dissipation_I(const FunctionalParams& params, const SimState& state, const Grid& grid,
                     double a, double b);

/// Discrete reaction term
///   J = p sum_i C(p-1, i) int (theta_{i+1} sgn U f + theta_i sgn V g) U^i V^(p-1-i) dx
/// divided by exp(diagnostic_log_scale). NaN flags a kinetics overflow at a
/// node where the integrand is active.
double reaction_J(const FunctionalParams& params, const SimState& state, const Grid& grid,
                  const ReactionModel& model);

}  // namespace rdcert
