#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "rdcert/integrator.hpp"
#include "rdcert/lyapunov.hpp"
#include "rdcert/state.hpp"
#include "rdcert/verify.hpp"

namespace rdcert {

inline constexpr std::string_view kCsvHeader = "t,sup_u,sup_v,L,I,J,dt,bound_violation";

/// 17 significant digits, printf %g style.
std::string format_real(double x);

/// Header plus one row per TimeSeries entry.
void write_csv(std::ostream& out, const TimeSeries& series);

// Plain-text reports: one "key: value" per line.
void write_verdict(std::ostream& out, const Verdict& verdict, std::size_t accepted, std::size_t rejected);
void write_functional(std::ostream& out, const FunctionalParams& params);
void write_claim_report(std::ostream& out, const ClaimReport& report);
void write_mass_control_report(std::ostream& out, const MassControlReport& report);
void write_g_report(std::ostream& out, const GNonnegReport& report);

/// Run-length form of a sign history, e.g. "0x1 -x120 +x3".
std::string encode_signs(const std::vector<int>& signs);

}  // namespace rdcert
