#include "qec5/schedule.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace qec5 {

ScheduleResult schedule(const Circuit& c, const std::vector<int>& data_wires) {
    Circuit packed(Dim(c.q), c.n_qudits);
    packed.moments.clear();
    std::vector<int> next_free(c.n_qudits, 0);

    for (const auto& moment : c.moments) {
        for (const auto& instr : moment) {
            int t = 0;
            for (int w : instr.targets) t = std::max(t, next_free[w]);
            while (static_cast<int>(packed.moments.size()) <= t) packed.moments.emplace_back();
            packed.moments[t].push_back(instr);
            for (int w : instr.targets) next_free[w] = t + 1;
        }
    }
    packed.trim();
    packed.validate();

    // Materialize idle markers on data wires at gate-bearing moments.
    Schedule sched;
    sched.idle_counts.assign(c.n_qudits, 0);
    for (auto& moment : packed.moments) {
        bool has_gate = std::any_of(moment.begin(), moment.end(),
                                    [](const Instruction& i) { return i.is_gate_like(); });
        if (!has_gate) continue;
        std::set<int> used;
        for (const auto& instr : moment)
            for (int w : instr.targets) used.insert(w);
        for (int w : data_wires) {
            if (used.count(w)) continue;
            Instruction idle;
            idle.op = Instruction::Op::Idle;
            idle.targets = {w};
            moment.push_back(idle);
            sched.idle_counts[w]++;
        }
    }
    sched.steps = static_cast<int>(packed.moments.size());
    return {std::move(packed), std::move(sched)};
}

void check_cycle_bounds(const Schedule& s, const std::vector<int>& data_wires,
                        int expected_steps, int max_idles) {
    if (s.steps != expected_steps)
        throw std::runtime_error("cycle schedule has " + std::to_string(s.steps) +
                                 " steps, expected " + std::to_string(expected_steps));
    for (int w : data_wires)
        if (s.idle_counts[w] > max_idles)
            throw std::runtime_error("data wire " + std::to_string(w) + " idles " +
                                     std::to_string(s.idle_counts[w]) + " times, limit " +
                                     std::to_string(max_idles));
}

}  // namespace qec5
