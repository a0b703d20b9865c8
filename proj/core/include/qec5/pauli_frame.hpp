#pragma once

#include <vector>

#include "qec5/circuit.hpp"
#include "qec5/pauli.hpp"

namespace qec5 {

// Tracked Pauli error propagated through a Clifford circuit. Phaseless:
// measurement statistics of the frame never depend on the global phase.
struct PauliFrame {
    int q = 2;
    std::vector<int> xs, zs;

    PauliFrame(const Dim& dim, int n) : q(dim.q), xs(n, 0), zs(n, 0) {}

    void clear(int wire) { xs[wire] = zs[wire] = 0; }
    void mul(int wire, int fx, int fz) {
        xs[wire] = mod_q(xs[wire] + fx, q);
        zs[wire] = mod_q(zs[wire] + fz, q);
    }
    PauliString restricted_to(const std::vector<int>& wires) const;
};

struct PfResult {
    std::vector<int> outcome_shifts;  // in measurement order
    PauliFrame frame;
};

// Propagates the fault frame through the circuit. Each computational-basis
// measurement reads off the frame's X power on that wire (the outcome shift
// relative to the noiseless reference run); resets clear the frame.
PfResult pf_run(const Circuit& c);

}  // namespace qec5
