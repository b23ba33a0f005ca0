#include "rdcert/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rdcert/error.hpp"
#include "rdcert/verify.hpp"

namespace rdcert {
namespace {

enum class SubstepStatus { Ok, Negative, Divergent };

/// Clamps round-off negatives to zero; fails on larger negatives or non-finite values.
SubstepStatus sanitize(Field& f) {
    for (double& x : f) {
        if (!std::isfinite(x)) return SubstepStatus::Divergent;
        if (x < 0.0) {
            if (x < -kPositivityTolerance) return SubstepStatus::Negative;
            x = 0.0;
        }
    }
    return SubstepStatus::Ok;
}

SubstepStatus worst(SubstepStatus a, SubstepStatus b) {
    if (a == SubstepStatus::Divergent || b == SubstepStatus::Divergent) return SubstepStatus::Divergent;
    if (a == SubstepStatus::Negative || b == SubstepStatus::Negative) return SubstepStatus::Negative;
    return SubstepStatus::Ok;
}

SubstepStatus lie_substep(const Field& u, const Field& v, double dt, const ReactionModel& model,
                          const SchemeConfig& cfg, const Grid& grid, Field& out_u, Field& out_v) {
    const std::size_t n = u.size();
    Field ru(n), rv(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto rates = model.evaluate(u[j], v[j]);
        if (!rates) return SubstepStatus::Divergent;
        ru[j] = u[j] + dt * rates->f;
        rv[j] = v[j] + dt * rates->g;
        if (!std::isfinite(ru[j]) || !std::isfinite(rv[j])) return SubstepStatus::Divergent;
    }
    out_u = solve_diffusion_implicit(ru, cfg.a, dt, grid);
    out_v = solve_diffusion_implicit(rv, cfg.b, dt, grid);
    return worst(sanitize(out_u), sanitize(out_v));
}

double scaled_difference(const Field& half, const Field& full) {
    double diff = 0.0;
    for (std::size_t j = 0; j < half.size(); ++j) diff = std::max(diff, std::abs(half[j] - full[j]));
    return diff / std::max(1.0, sup_norm(half));
}

}  // namespace

void SchemeConfig::validate() const {
    auto positive = [](double x, const char* key) {
        if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(key) + " must be finite and > 0");
    };
    positive(a, "scheme.a");
    positive(b, "scheme.b");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("scheme.t_end must be finite and >= 0");
    positive(dt_min, "scheme.dt_min");
    positive(dt_init, "scheme.dt_init");
    positive(dt_max, "scheme.dt_max");
    if (!(dt_min <= dt_init)) throw ConfigError("scheme.dt_init must be >= scheme.dt_min");
    if (!(dt_init <= dt_max)) throw ConfigError("scheme.dt_init must be <= scheme.dt_max");
    positive(rtol, "scheme.rtol");
    positive(blowup_threshold, "scheme.blowup_threshold");
}

Field solve_diffusion_implicit(std::span<const double> f, double coeff, double dt, const Grid& grid) {
    require_matches(f, grid, "solve_diffusion_implicit");
    if (!(coeff > 0.0)) throw ConfigError("diffusion coefficient must be > 0");
    if (!(dt >= 0.0)) throw ConfigError("time step must be >= 0");

    const std::size_t n = f.size();
    const double r = dt * coeff / (grid.spacing() * grid.spacing());
    const double diag = 1.0 + 2.0 * r;

    // Forward sweep. Row 0 is [diag, -2r], row n-1 is [-2r, diag].
    std::vector<double> c_star(n), d_star(n);
    c_star[0] = -2.0 * r / diag;
    d_star[0] = f[0] / diag;
    for (std::size_t j = 1; j < n; ++j) {
        const double lower = (j + 1 == n) ? -2.0 * r : -r;
        const double upper = (j + 1 == n) ? 0.0 : -r;
        const double m = diag - lower * c_star[j - 1];
        c_star[j] = upper / m;
        d_star[j] = (f[j] - lower * d_star[j - 1]) / m;
    }

    Field w(n);
    w[n - 1] = d_star[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) w[j] = d_star[j] - c_star[j] * w[j + 1];
    return w;
}

bool lie_step(const Field& u, const Field& v, double dt, const ReactionModel& model,
              const SchemeConfig& cfg, const Grid& grid, Field& out_u, Field& out_v) {
    return lie_substep(u, v, dt, model, cfg, grid, out_u, out_v) == SubstepStatus::Ok;
}

std::variant<StepOutcome, Rejection> step_imex(const SimState& state, const ReactionModel& model,
                                               const SchemeConfig& cfg, const Grid& grid) {
    const double remaining = cfg.t_end - state.t;
    double dt = std::min(state.dt, remaining);
    int rejections = 0;
    bool last_divergent = false;

    Field uf, vf, uh, vh, uh2, vh2;
    while (true) {
        const bool clipped = dt == remaining;
        if (dt < cfg.dt_min && !clipped) {
            return Rejection{last_divergent ? Rejection::Reason::Divergence : Rejection::Reason::DtUnderflow,
                             state.t};
        }

        auto status = lie_substep(state.u, state.v, dt, model, cfg, grid, uf, vf);
        if (status == SubstepStatus::Ok) {
            status = worst(status, lie_substep(state.u, state.v, 0.5 * dt, model, cfg, grid, uh, vh));
        }
        if (status == SubstepStatus::Ok) {
            status = worst(status, lie_substep(uh, vh, 0.5 * dt, model, cfg, grid, uh2, vh2));
        }

        double err = 0.0;
        if (status == SubstepStatus::Ok) {
            err = std::max(scaled_difference(uh2, uf), scaled_difference(vh2, vf));
            if (!std::isfinite(err)) status = SubstepStatus::Divergent;
        }

        if (status == SubstepStatus::Ok && err <= cfg.rtol) {
            // Local extrapolation cancels the leading error term of the half-step pair.
            Field u_next(uh2.size()), v_next(vh2.size());
            for (std::size_t j = 0; j < u_next.size(); ++j) {
                u_next[j] = 2.0 * uh2[j] - uf[j];
                v_next[j] = 2.0 * vh2[j] - vf[j];
            }
            status = worst(sanitize(u_next), sanitize(v_next));
            if (status == SubstepStatus::Ok) {
                const double factor = err > 0.0 ? std::clamp(0.9 * std::sqrt(cfg.rtol / err), 0.2, 2.0) : 2.0;
                SimState next;
                next.t = clipped ? cfg.t_end : state.t + dt;
                next.u = std::move(u_next);
                next.v = std::move(v_next);
                next.dt = std::clamp(dt * factor, cfg.dt_min, cfg.dt_max);
                return StepOutcome{std::move(next), dt, rejections};
            }
        }

        last_divergent = status == SubstepStatus::Divergent;
        ++rejections;
        dt *= 0.5;
    }
}

const char* verdict_name(Verdict::Kind kind) {
    switch (kind) {
        case Verdict::Kind::Completed: return "completed";
        case Verdict::Kind::BlowUp: return "blowup";
        case Verdict::Kind::DtUnderflow: return "dt_underflow";
    }
    return "?";
}

RunResult run(const ReactionModel& model, const SchemeConfig& cfg, const Grid& grid,
              const Field& u0, const Field& v0, const FunctionalParams& functional,
              const RunOptions& options) {
    cfg.validate();
    require_matches(u0, grid, "initial u");
    require_matches(v0, grid, "initial v");
    for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
        if (!(u0[j] >= 0.0) || !std::isfinite(u0[j])) throw ConfigError("initial u must be finite and nonnegative");
        if (!(v0[j] >= 0.0) || !std::isfinite(v0[j])) throw ConfigError("initial v must be finite and nonnegative");
    }
    const std::size_t log_every = std::max<std::size_t>(options.log_every, 1);

    RunResult result;
    SimState state{0.0, u0, v0, std::min(cfg.dt_init, cfg.dt_max)};

    auto log_row = [&](const SimState& s, double dt_used, bool violation) {
        result.series.push_back({s.t, sup_norm(s.u), sup_norm(s.v), lyapunov_L(functional, s, grid),
                                 dissipation_I(functional, s, grid, cfg.a, cfg.b),
                                 reaction_J(functional, s, grid, model), dt_used, violation});
    };
    auto observe = [&](const SimState& s) {
        auto events = scan_bounds(s, functional.u_bar0, functional.v_bar0);
        const bool violation = !events.empty();
        result.events.insert(result.events.end(), events.begin(), events.end());
        if (options.observer) options.observer(s);
        return violation;
    };
    auto diverged = [&](const SimState& s) {
        return !(sup_norm(s.u) + sup_norm(s.v) <= cfg.blowup_threshold);
    };

    log_row(state, 0.0, observe(state));
    result.verdict = {Verdict::Kind::Completed, cfg.t_end};
    if (diverged(state)) {
        result.verdict = {Verdict::Kind::BlowUp, state.t};
        result.final_state = std::move(state);
        return result;
    }

    bool last_logged = true;
    double last_dt = 0.0;
    while (state.t < cfg.t_end) {
        auto outcome = step_imex(state, model, cfg, grid);
        if (auto* rejection = std::get_if<Rejection>(&outcome)) {
            result.verdict = rejection->reason == Rejection::Reason::Divergence
                                 ? Verdict{Verdict::Kind::BlowUp, rejection->t}
                                 : Verdict{Verdict::Kind::DtUnderflow, rejection->t};
            break;
        }
        auto& step = std::get<StepOutcome>(outcome);
        state = std::move(step.state);
        last_dt = step.dt_used;
        ++result.accepted_steps;
        result.rejected_steps += static_cast<std::size_t>(step.rejections);

        const bool violation = observe(state);
        const bool blew_up = diverged(state);
        last_logged = result.accepted_steps % log_every == 0 || blew_up || state.t >= cfg.t_end;
        if (last_logged) log_row(state, step.dt_used, violation);
        if (blew_up) {
            result.verdict = {Verdict::Kind::BlowUp, state.t};
            break;
        }
    }

    if (!last_logged) {
        const bool violation = !scan_bounds(state, functional.u_bar0, functional.v_bar0).empty();
        log_row(state, last_dt, violation);
    }
    result.final_state = std::move(state);
    return result;
}

}  // namespace rdcert
