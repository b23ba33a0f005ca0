#include "rdcert/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rdcert/error.hpp"
#include "rdcert/mesh.hpp"

namespace rdcert {
namespace {

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double lattice(double extent, int k, int n) {
    return k + 1 == n ? extent : extent * static_cast<double>(k) / static_cast<double>(n - 1);
}

class MassControlTally {
public:
    MassControlTally(const ReactionModel& model, double C, double mu, MassControlReport& report)
        : model_(model), C_(C), mu_(mu), report_(report) {}

    void sample(double u, double v) {
        if (u + v < C_) return;
        ++report_.samples_tested;
        const auto rates = model_.evaluate(u, v);
        if (!rates) {
            ++report_.indeterminate;
            record({u, v, std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN(), Inequality::Indeterminate});
            return;
        }
        const double sum = rates->f + mu_ * rates->g;
        if (!(rates->f <= sum)) {
            record({u, v, rates->f, sum, Inequality::FBelowSum});
        } else if (!(sum <= 0.0)) {
            record({u, v, rates->f, sum, Inequality::SumNonpositive});
        }
    }

private:
    void record(const MassControlViolation& violation) {
        ++report_.violation_count;
        if (report_.violations.size() < kMaxWitnesses) report_.violations.push_back(violation);
    }

    const ReactionModel& model_;
    double C_;
    double mu_;
    MassControlReport& report_;
};

void require_box(double u_max, double v_max, int n_per_axis) {
    if (!(u_max > 0.0) || !std::isfinite(u_max)) throw ConfigError("check.u_max must be finite and > 0");
    if (!(v_max > 0.0) || !std::isfinite(v_max)) throw ConfigError("check.v_max must be finite and > 0");
    if (n_per_axis < 2) throw ConfigError("check.n_per_axis must be >= 2");
}

}  // namespace

const char* inequality_name(Inequality which) {
    switch (which) {
        case Inequality::FBelowSum: return "f <= f + mu*g";
        case Inequality::SumNonpositive: return "f + mu*g <= 0";
        case Inequality::Indeterminate: return "indeterminate (overflow)";
    }
    return "?";
}

MassControlReport check_mass_control(const ReactionModel& model, double C, double mu,
                                     double u_max, double v_max, int n_per_axis,
                                     std::uint64_t seed) {
    require_box(u_max, v_max, n_per_axis);
    if (!(C >= 0.0)) throw ConfigError("C must be >= 0");
    if (!(mu > 0.0)) throw ConfigError("mu must be > 0");

    MassControlReport report;
    report.mu = mu;
    report.C = C;
    report.u_max = u_max;
    report.v_max = v_max;
    report.seed = seed;

    MassControlTally tally(model, C, mu, report);
    for (int i = 0; i < n_per_axis; ++i) {
        for (int k = 0; k < n_per_axis; ++k) {
            tally.sample(lattice(u_max, i, n_per_axis), lattice(v_max, k, n_per_axis));
        }
    }

    std::mt19937_64 rng(seed);
    const long draws = static_cast<long>(n_per_axis) * n_per_axis;
    for (long d = 0; d < draws; ++d) {
        const double u = u_max * unit_uniform(rng);
        const double v = v_max * unit_uniform(rng);
        tally.sample(u, v);
    }

    report.passed = report.violation_count == 0;
    return report;
}

MassControlReport search_mu(const ReactionModel& model, double C, double u_max, double v_max,
                            int n_per_axis, std::uint64_t seed) {
    std::optional<MassControlReport> first;
    for (int k = 0; k <= 20; ++k) {
        auto report = check_mass_control(model, C, std::ldexp(1.0, -k), u_max, v_max, n_per_axis, seed);
        if (report.passed) return report;
        if (!first) first = std::move(report);
    }
    return *first;
}

double default_check_extent(double C, double data_sup) {
    return std::max({2.0 * C, 10.0, 2.0 * data_sup});
}

GNonnegReport check_g_nonneg(const ReactionModel& model, double u_max, double v_max, int n_per_axis) {
    require_box(u_max, v_max, n_per_axis);
    GNonnegReport report;
    std::size_t failures = 0;
    for (int i = 0; i < n_per_axis; ++i) {
        for (int k = 0; k < n_per_axis; ++k) {
            const double u = lattice(u_max, i, n_per_axis);
            const double v = lattice(v_max, k, n_per_axis);
            ++report.samples_tested;
            const auto rates = model.evaluate(u, v);
            if (!rates) {
                ++report.indeterminate;
                continue;
            }
            if (!(rates->g >= 0.0)) {
                ++failures;
                if (report.witnesses.size() < kMaxWitnesses) {
                    report.witnesses.push_back({u, v, rates->f, rates->g, Inequality::SumNonpositive});
                }
            }
        }
    }
    report.passed = failures == 0 && report.indeterminate == 0;
    return report;
}

std::optional<BoundEvent> monitor_bounds(const SimState& state, double u_bar0, double v_bar0) {
    const std::size_t n = std::min(state.u.size(), state.v.size());
    for (std::size_t j = 0; j < n; ++j) {
        if (!(state.u[j] <= u_bar0)) return BoundEvent{state.t, j, Species::U, state.u[j], u_bar0};
        if (!(state.v[j] <= v_bar0)) return BoundEvent{state.t, j, Species::V, state.v[j], v_bar0};
    }
    return std::nullopt;
}

std::vector<BoundEvent> scan_bounds(const SimState& state, double u_bar0, double v_bar0) {
    constexpr double kNoBound = std::numeric_limits<double>::infinity();
    std::vector<BoundEvent> events;
    if (auto e = monitor_bounds(state, u_bar0, kNoBound)) events.push_back(*e);
    if (auto e = monitor_bounds(state, kNoBound, v_bar0)) events.push_back(*e);
    return events;
}

ClaimReport assemble_claim_report(const TimeSeries& series, const std::vector<BoundEvent>& events) {
    ClaimReport report;
    for (const auto& e : events) {
        auto& slot = e.field == Species::U ? report.first_u_violation : report.first_v_violation;
        if (!slot || e.t < slot->t) slot = e;
        if (!report.first_violation || e.t < report.first_violation->t) report.first_violation = e;
    }
    report.bound_u_held = !report.first_u_violation.has_value();
    report.bound_v_held = !report.first_v_violation.has_value();

    report.J_sign_history.reserve(series.size());
    for (const auto& row : series) {
        if (std::isnan(row.J)) ++report.J_indeterminate;
        report.J_sign_history.push_back(row.J > 0.0 ? 1 : (row.J < 0.0 ? -1 : 0));
        report.L_max = std::max(report.L_max, row.L);
    }
    return report;
}

}  // namespace rdcert
