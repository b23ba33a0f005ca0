#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rdcert/mesh.hpp"

namespace rdcert {

/// Accepted point of a trajectory. dt is the step size the integrator will
/// attempt next.
struct SimState {
    double t = 0.0;
    Field u;
    Field v;
    double dt = 0.0;
};

enum class Species { U, V };

inline const char* species_name(Species s) { return s == Species::U ? "u" : "v"; }

/// A nodal value exceeding its claimed uniform bound.
struct BoundEvent {
    double t;
    std::size_t node;
    Species field;
    double value;
    double bound;

    double exceedance() const noexcept { return value - bound; }
};

/// One logged row of a run.
struct TimeSeriesRow {
    double t;
    double sup_u;
    double sup_v;
    double L;
    double I;
    double J;
    double dt;
    bool bound_violation;
};

using TimeSeries = std::vector<TimeSeriesRow>;

}  // namespace rdcert
