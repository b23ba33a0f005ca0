#include "rdcert/report_io.hpp"

#include <cstdio>

namespace rdcert {
namespace {

void write_event(std::ostream& out, const std::string& prefix, const BoundEvent& e) {
    out << prefix << "_t: " << format_real(e.t) << "\n"
        << prefix << "_node: " << e.node << "\n"
        << prefix << "_field: " << species_name(e.field) << "\n"
        << prefix << "_value: " << format_real(e.value) << "\n"
        << prefix << "_bound: " << format_real(e.bound) << "\n";
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_csv(std::ostream& out, const TimeSeries& series) {
    out << kCsvHeader << "\n";
    for (const auto& row : series) {
        out << format_real(row.t) << ',' << format_real(row.sup_u) << ',' << format_real(row.sup_v) << ','
            << format_real(row.L) << ',' << format_real(row.I) << ',' << format_real(row.J) << ','
            << format_real(row.dt) << ',' << (row.bound_violation ? 1 : 0) << "\n";
    }
}

void write_verdict(std::ostream& out, const Verdict& verdict, std::size_t accepted, std::size_t rejected) {
    out << "verdict: " << verdict_name(verdict.kind) << "\n"
        << "verdict_t: " << format_real(verdict.t) << "\n"
        << "accepted_steps: " << accepted << "\n"
        << "rejected_steps: " << rejected << "\n";
}

void write_functional(std::ostream& out, const FunctionalParams& params) {
    out << "functional_p: " << params.p << "\n"
        << "functional_theta: " << format_real(params.theta) << "\n"
        << "functional_log_theta0: " << format_real(params.log_theta0) << "\n"
        << "functional_log_theta1: " << format_real(params.log_theta1) << "\n"
        << "functional_mu: " << format_real(params.mu) << "\n"
        << "functional_C: " << format_real(params.C) << "\n"
        << "u_bar0: " << format_real(params.u_bar0) << "\n"
        << "v_bar0: " << format_real(params.v_bar0) << "\n";
}

std::string encode_signs(const std::vector<int>& signs) {
    std::string out;
    std::size_t i = 0;
    while (i < signs.size()) {
        std::size_t k = i;
        while (k < signs.size() && signs[k] == signs[i]) ++k;
        if (!out.empty()) out += ' ';
        out += signs[i] > 0 ? '+' : (signs[i] < 0 ? '-' : '0');
        out += 'x';
        out += std::to_string(k - i);
        i = k;
    }
    return out;
}

void write_claim_report(std::ostream& out, const ClaimReport& report) {
    out << "bound_u_held: " << yes_no(report.bound_u_held) << "\n"
        << "bound_v_held: " << yes_no(report.bound_v_held) << "\n";
    if (report.first_violation) {
        write_event(out, "first_violation", *report.first_violation);
    } else {
        out << "first_violation: none\n";
    }
    if (report.first_u_violation) out << "first_u_violation_t: " << format_real(report.first_u_violation->t) << "\n";
    if (report.first_v_violation) out << "first_v_violation_t: " << format_real(report.first_v_violation->t) << "\n";

    std::size_t positive = 0;
    for (int s : report.J_sign_history) positive += s > 0;
    out << "L_max: " << format_real(report.L_max) << "\n"
        << "J_rows: " << report.J_sign_history.size() << "\n"
        << "J_positive_rows: " << positive << "\n"
        << "J_indeterminate_rows: " << report.J_indeterminate << "\n"
        << "J_sign_history: " << encode_signs(report.J_sign_history) << "\n";
}

void write_mass_control_report(std::ostream& out, const MassControlReport& report) {
    out << "mass_control_passed: " << yes_no(report.passed) << "\n"
        << "mass_control_mu: " << format_real(report.mu) << "\n"
        << "mass_control_C: " << format_real(report.C) << "\n"
        << "mass_control_u_max: " << format_real(report.u_max) << "\n"
        << "mass_control_v_max: " << format_real(report.v_max) << "\n"
        << "mass_control_seed: " << report.seed << "\n"
        << "mass_control_samples_tested: " << report.samples_tested << "\n"
        << "mass_control_indeterminate: " << report.indeterminate << "\n"
        << "mass_control_violations: " << report.violation_count << "\n";
    for (std::size_t i = 0; i < report.violations.size(); ++i) {
        const auto& w = report.violations[i];
        out << "mass_control_witness_" << i << ": u=" << format_real(w.u) << " v=" << format_real(w.v)
            << " f=" << format_real(w.f) << " f_plus_mu_g=" << format_real(w.f_plus_mu_g)
            << " failed=\"" << inequality_name(w.which) << "\"\n";
    }
}

void write_g_report(std::ostream& out, const GNonnegReport& report) {
    out << "g_nonneg_passed: " << yes_no(report.passed) << "\n"
        << "g_nonneg_samples_tested: " << report.samples_tested << "\n"
        << "g_nonneg_indeterminate: " << report.indeterminate << "\n"
        << "g_nonneg_violations: " << report.witnesses.size() << "\n";
    for (std::size_t i = 0; i < report.witnesses.size(); ++i) {
        const auto& w = report.witnesses[i];
        out << "g_nonneg_witness_" << i << ": u=" << format_real(w.u) << " v=" << format_real(w.v)
            << " g=" << format_real(w.f_plus_mu_g) << "\n";
    }
}

}  // namespace rdcert
