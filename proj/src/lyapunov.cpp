#include "rdcert/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "rdcert/error.hpp"

namespace rdcert {
namespace {

const double kLogMax = std::log(std::numeric_limits<double>::max());
constexpr double kInf = std::numeric_limits<double>::infinity();

/// C(n, 0..n) by the multiplicative recurrence C(n, k+1) = C(n, k) (n-k)/(k+1).
std::vector<double> binomial_row(int n) {
    std::vector<double> row(static_cast<std::size_t>(n) + 1);
    double c = 1.0;
    for (int k = 0; k <= n; ++k) {
        row[k] = c;
        c = c * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return row;
}

double log_theta(const FunctionalParams& params, int i) {
    const double di = static_cast<double>(i);
    return params.log_theta0 + di * (params.log_theta1 - params.log_theta0) +
           di * (di - 1.0) * std::log(params.theta);
}

/// theta_i / exp(scale) for i = 0..p.
std::vector<double> scaled_thetas(const FunctionalParams& params) {
    const double scale = diagnostic_log_scale(params);
    std::vector<double> w(static_cast<std::size_t>(params.p) + 1);
    for (int i = 0; i <= params.p; ++i) w[i] = std::exp(log_theta(params, i) - scale);
    return w;
}

/// x^k with 0^0 = 1.
double ipow(double x, int k) { return k == 0 ? 1.0 : std::pow(x, k); }

void require_p(const FunctionalParams& params, int min_p, const char* what) {
    if (params.p < min_p) {
        throw ConfigError(std::string(what) + " requires functional.p >= " + std::to_string(min_p));
    }
}

}  // namespace

BoundConstants bound_constants(double C, std::span<const double> u0, std::span<const double> v0) {
    return {std::max(C, sup_norm(u0)), std::max(C, sup_norm(v0))};
}

double theta_lower_bound(double a, double b) { return (a + b) * (a + b) / (4.0 * a * b); }

FunctionalParams build_params(double a, double b, double mu, double C, int p,
                              std::span<const double> u0, std::span<const double> v0,
                              const ThetaOverrides& overrides) {
    if (!(a > 0.0)) throw ConfigError("scheme.a must be > 0");
    if (!(b > 0.0)) throw ConfigError("scheme.b must be > 0");
    if (!(mu > 0.0)) throw ConfigError("mu must be > 0");
    if (!(C >= 0.0)) throw ConfigError("C must be >= 0");
    if (p < 2) throw ConfigError("functional.p must be >= 2");

    const double bound = theta_lower_bound(a, b);
    const double theta = overrides.theta.value_or(std::sqrt(1.1 * std::max(bound, 1.0)));
    if (!(theta > 1.0)) throw ConfigError("functional.theta must be > 1");
    if (!(theta * theta > bound)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "theta condition theta^2 > (a+b)^2/(4ab) violated: theta^2 = " << theta * theta
            << ", (a+b)^2/(4ab) = " << bound;
        throw ConfigError(msg.str());
    }

    const double theta0 = overrides.theta0.value_or(0.5 * mu);
    const double theta1 = overrides.theta1.value_or(1.0);
    if (!(theta0 > 0.0) || !(theta1 > 0.0)) throw ConfigError("theta_0 and theta_1 must be > 0");

    FunctionalParams params;
    params.p = p;
    params.theta = theta;
    params.log_theta0 = std::log(theta0);
    params.log_theta1 = std::log(theta1);
    params.mu = mu;
    params.C = C;
    if (!(params.log_theta0 - params.log_theta1 < std::log(mu))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "ratio condition theta_0/theta_1 < mu violated: theta_0/theta_1 = " << theta0 / theta1
            << ", mu = " << mu;
        throw ConfigError(msg.str());
    }

    const auto bounds = bound_constants(C, u0, v0);
    params.u_bar0 = bounds.u_bar0;
    params.v_bar0 = bounds.v_bar0;
    return params;
}

ThetaValue theta_at(const FunctionalParams& params, int i) {
    if (i < 0 || i > params.p) {
        throw ConfigError("theta index " + std::to_string(i) + " outside [0, " +
                          std::to_string(params.p) + "]");
    }
    const double l = log_theta(params, i);
    ThetaValue out{l, std::nullopt};
    if (l < kLogMax) out.value = std::exp(l);
    return out;
}

ConditionReport check_conditions(const FunctionalParams& params, double a, double b) {
    ConditionReport report{};
    report.theta_margin = params.theta * params.theta - theta_lower_bound(a, b);
    report.theta_ok = report.theta_margin > 0.0;

    const double two_log_theta = 2.0 * std::log(params.theta);
    double residual = 0.0;
    for (int i = 0; i + 2 <= params.p; ++i) {
        const double curvature = theta_at(params, i).log + theta_at(params, i + 2).log -
                                 2.0 * theta_at(params, i + 1).log;
        residual = std::max(residual, std::abs(curvature - two_log_theta));
    }
    report.recurrence_residual = residual;
    report.recurrence_ok = residual <= kRecurrenceTolerance;

    const double log_mu = std::log(params.mu);
    double excess = -kInf;
    for (int i = 0; i + 1 <= params.p; ++i) {
        excess = std::max(excess, theta_at(params, i).log - theta_at(params, i + 1).log - log_mu);
    }
    report.max_log_ratio_excess = excess;
    report.ratio_ok = excess < 0.0;
    return report;
}

PositiveParts positive_parts(const FunctionalParams& params, double u, double v) noexcept {
    const double U = std::max(u - params.u_bar0, 0.0);
    const double V = std::max(v - params.v_bar0, 0.0);
    return {U, V, U > 0.0 ? 1 : 0, V > 0.0 ? 1 : 0};
}

double h_value(const FunctionalParams& params, double u, double v) {
    const auto parts = positive_parts(params, u, v);
    if (parts.sgn_u == 0 && parts.sgn_v == 0) return 0.0;

    const int p = params.p;
    const double log_U = std::log(parts.U);
    const double log_V = std::log(parts.V);

    std::vector<double> log_terms;
    log_terms.reserve(static_cast<std::size_t>(p) + 1);
    double log_binom = 0.0;
    for (int i = 0; i <= p; ++i) {
        const int j = p - i;
        if ((i == 0 || parts.sgn_u) && (j == 0 || parts.sgn_v)) {
            double lt = log_binom + log_theta(params, i);
            if (i) lt += i * log_U;
            if (j) lt += j * log_V;
            log_terms.push_back(lt);
        }
        log_binom += std::log(static_cast<double>(p - i)) - std::log(static_cast<double>(i + 1));
    }

    std::sort(log_terms.begin(), log_terms.end(), std::greater<>());
    if (log_terms.front() > kLogMax) return kInf;
    double sum = 0.0;
    for (double lt : log_terms) sum += std::exp(lt);
    return sum;
}

double lyapunov_L(const FunctionalParams& params, const SimState& state, const Grid& grid) {
    require_matches(state.u, grid, "lyapunov_L(u)");
    require_matches(state.v, grid, "lyapunov_L(v)");
    Field h(grid.n_nodes());
    for (std::size_t j = 0; j < h.size(); ++j) h[j] = h_value(params, state.u[j], state.v[j]);
    return integrate(h, grid);
}

double quadratic_Ti(const FunctionalParams& params, int i, double a, double b,
                    int sgn_u, int sgn_v, double xi, double eta) {
    if (i < 0 || i > params.p - 2) {
        throw ConfigError("quadratic index " + std::to_string(i) + " outside [0, p-2]");
    }
    const double mid = log_theta(params, i + 1);
    const double hi = std::exp(log_theta(params, i + 2) - mid);
    const double lo = std::exp(log_theta(params, i) - mid);
    const double su = sgn_u;
    const double sv = sgn_v;
    return a * hi * su * xi * xi + (a + b) * su * sv * xi * eta + b * lo * sv * eta * eta;
}

double diagnostic_log_scale(const FunctionalParams& params) {
    double m = -kInf;
    for (int i = 0; i <= params.p; ++i) m = std::max(m, log_theta(params, i));
    return m;
}

double dissipation_I(const FunctionalParams& params, const SimState& state, const Grid& grid,
                     double a, double b) {
    require_p(params, 2, "dissipation_I");
    require_matches(state.u, grid, "dissipation_I(u)");
    require_matches(state.v, grid, "dissipation_I(v)");

    const int p = params.p;
    const auto w = scaled_thetas(params);
    const auto binom = binomial_row(p - 2);
    const std::size_t n = grid.n_nodes();
    const double h = grid.spacing();

    auto gradient = [&](const Field& f, std::size_t j) {
        if (j == 0) return (f[1] - f[0]) / h;
        if (j + 1 == n) return (f[n - 1] - f[n - 2]) / h;
        return (f[j + 1] - f[j - 1]) / (2.0 * h);
    };

    Field integrand(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const auto parts = positive_parts(params, state.u[j], state.v[j]);
        if (parts.sgn_u == 0 && parts.sgn_v == 0) continue;
        const double xi = gradient(state.u, j);
        const double eta = gradient(state.v, j);
        const double su = parts.sgn_u;
        const double sv = parts.sgn_v;
        double acc = 0.0;
        for (int i = 0; i <= p - 2; ++i) {
            const double t_i = a * w[i + 2] * su * xi * xi + (a + b) * w[i + 1] * su * sv * xi * eta +
                               b * w[i] * sv * eta * eta;
            acc += binom[i] * t_i * ipow(parts.U, i) * ipow(parts.V, p - 2 - i);
        }
        integrand[j] = acc;
    }
    return -static_cast<double>(p) * static_cast<double>(p - 1) * integrate(integrand, grid);
}

double reaction_J(const FunctionalParams& params, const SimState& state, const Grid& grid,
                  const ReactionModel& model) {
    require_p(params, 1, "reaction_J");
    require_matches(state.u, grid, "reaction_J(u)");
    require_matches(state.v, grid, "reaction_J(v)");

    const int p = params.p;
    const auto w = scaled_thetas(params);
    const auto binom = binomial_row(p - 1);
    const std::size_t n = grid.n_nodes();

    Field integrand(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const auto parts = positive_parts(params, state.u[j], state.v[j]);
        if (parts.sgn_u == 0 && parts.sgn_v == 0) continue;
        const auto rates = model.evaluate(state.u[j], state.v[j]);
        if (!rates) return std::numeric_limits<double>::quiet_NaN();
        const double su = parts.sgn_u;
        const double sv = parts.sgn_v;
        double acc = 0.0;
        for (int i = 0; i <= p - 1; ++i) {
            acc += binom[i] * (w[i + 1] * su * rates->f + w[i] * sv * rates->g) *
                   ipow(parts.U, i) * ipow(parts.V, p - 1 - i);
        }
        integrand[j] = acc;
    }
    return static_cast<double>(p) * integrate(integrand, grid);
}

}  // namespace rdcert
