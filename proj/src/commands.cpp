#include "rdcert/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rdcert/error.hpp"
#include "rdcert/lyapunov.hpp"
#include "rdcert/report_io.hpp"

namespace rdcert {

int run_exit_code(const Verdict& verdict, const ClaimReport& report) {
    switch (verdict.kind) {
        case Verdict::Kind::BlowUp: return kExitBlowUp;
        case Verdict::Kind::DtUnderflow: return kExitDtUnderflow;
        case Verdict::Kind::Completed: break;
    }
    return report.bound_u_held && report.bound_v_held ? kExitOk : kExitBoundViolated;
}

std::uint64_t effective_seed(std::uint64_t configured) {
    const char* env = std::getenv("RD_CERTIFY_SEED");
    if (env == nullptr || *env == '\0') return configured;
    std::uint64_t seed = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, seed);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(std::string("RD_CERTIFY_SEED must be an unsigned integer (got '") + env + "')");
    }
    return seed;
}

Experiment prepare_experiment(const RunConfig& config) {
    auto model = build_model(config.model);
    Grid grid(config.grid.n_nodes, config.grid.length);
    Field u0 = config.initial_u.sample(grid);
    Field v0 = config.initial_v.sample(grid);

    const double C = model.claimed_C().value_or(0.0);
    const double data_sup = std::max(sup_norm(u0), sup_norm(v0));
    const double u_max = config.check.u_max.value_or(default_check_extent(C, data_sup));
    const double v_max = config.check.v_max.value_or(default_check_extent(C, data_sup));
    const auto seed = effective_seed(config.check.seed);

    auto mass = model.claimed_mu()
                    ? check_mass_control(model, C, *model.claimed_mu(), u_max, v_max, config.check.n_per_axis, seed)
                    : search_mu(model, C, u_max, v_max, config.check.n_per_axis, seed);
    auto g_report = check_g_nonneg(model, u_max, v_max, config.check.n_per_axis);

    double mu = model.claimed_mu().value_or(mass.passed ? mass.mu : 1.0);
    ThetaOverrides overrides;
    overrides.theta = config.functional.theta;
    auto functional = build_params(config.scheme.a, config.scheme.b, mu, C, config.functional.p, u0, v0, overrides);

    return Experiment{config, std::move(model), grid, std::move(u0), std::move(v0),
                      std::move(mass), std::move(g_report), functional};
}

int cmd_run(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err) {
    try {
        const auto config = load_config(config_path);
        auto ex = prepare_experiment(config);

        RunOptions options;
        options.log_every = config.output.log_every;
        const auto result = run(ex.model, config.scheme, ex.grid, ex.u0, ex.v0, ex.functional, options);
        const auto claim = assemble_claim_report(result.series, result.events);
        const int code = run_exit_code(result.verdict, claim);

        if (!config.output.csv.empty()) {
            std::ofstream csv(config.output.csv, std::ios::binary);
            if (!csv) throw ConfigError("output.csv: cannot write '" + config.output.csv + "'");
            write_csv(csv, result.series);
        }

        std::ostringstream report;
        report << "model: " << ex.model.name() << "\n";
        write_verdict(report, result.verdict, result.accepted_steps, result.rejected_steps);
        write_functional(report, ex.functional);
        write_claim_report(report, claim);
        write_mass_control_report(report, ex.mass_control);
        write_g_report(report, ex.g_nonneg);
        report << "exit_code: " << code << "\n";

        if (!config.output.report.empty()) {
            std::ofstream file(config.output.report, std::ios::binary);
            if (!file) throw ConfigError("output.report: cannot write '" + config.output.report + "'");
            file << report.str();
        }
        out << report.str();
        return code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

int cmd_check(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err) {
    try {
        const auto config = load_config(config_path);
        const auto ex = prepare_experiment(config);
        out << "model: " << ex.model.name() << "\n";
        write_mass_control_report(out, ex.mass_control);
        write_g_report(out, ex.g_nonneg);
        const bool ok = ex.mass_control.passed && ex.g_nonneg.passed;
        out << "check_passed: " << (ok ? "true" : "false") << "\n";
        return ok ? kExitOk : kExitBoundViolated;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

int cmd_theta(const ThetaArgs& args, std::ostream& out, std::ostream& err) {
    try {
        ThetaOverrides overrides;
        overrides.theta = args.theta;
        const auto params = build_params(args.a, args.b, args.mu, 0.0, args.p, {}, {}, overrides);
        const auto report = check_conditions(params, args.a, args.b);

        out << "theta_lower_bound: " << format_real(theta_lower_bound(args.a, args.b)) << "\n"
            << "theta: " << format_real(params.theta) << "\n"
            << "theta_squared: " << format_real(params.theta * params.theta) << "\n"
            << "p: " << params.p << "\n";
        for (int i = 0; i <= params.p; ++i) {
            const auto t = theta_at(params, i);
            out << "log_theta_" << i << ": " << format_real(t.log) << "\n";
        }
        for (int i = 0; i < params.p; ++i) {
            const double log_ratio = theta_at(params, i).log - theta_at(params, i + 1).log;
            out << "ratio_" << i << ": " << format_real(std::exp(log_ratio)) << "\n";
        }
        out << "check_theta: " << (report.theta_ok ? "pass" : "fail") << " (margin "
            << format_real(report.theta_margin) << ")\n"
            << "check_recurrence: " << (report.recurrence_ok ? "pass" : "fail") << " (residual "
            << format_real(report.recurrence_residual) << ")\n"
            << "check_ratio: " << (report.ratio_ok ? "pass" : "fail") << " (max log excess "
            << format_real(report.max_log_ratio_excess) << ")\n";
        return report.all_passed() ? kExitOk : kExitBoundViolated;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace rdcert
