#pragma once

#include <vector>

#include "qec5/circuit.hpp"

namespace qec5 {

struct Schedule {
    int steps = 0;                    // moments in the scheduled cycle
    std::vector<int> idle_counts;     // materialized idle markers per wire
};

struct ScheduleResult {
    Circuit circuit;
    Schedule schedule;
};

// Greedy earliest-start packing under the disjoint-target constraint.
// Relative order of instructions sharing a wire is preserved, so the packed
// circuit is operationally identical to the input. Idle markers are
// materialized for every listed data wire at each moment that contains a
// gate but leaves the wire unused; measurement/reset-only moments do not
// idle data wires.
ScheduleResult schedule(const Circuit& c, const std::vector<int>& data_wires);

// Bounds for the flag-protected extraction cycle: exactly `expected_steps`
// moments and at most `max_idles` idle periods per data wire. Throws with
// the achieved depth when violated.
void check_cycle_bounds(const Schedule& s, const std::vector<int>& data_wires,
                        int expected_steps, int max_idles);

}  // namespace qec5
