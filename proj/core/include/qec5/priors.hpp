#pragma once

#include <vector>

#include "qec5/detector_graph.hpp"
#include "qec5/noise.hpp"

namespace qec5 {

// Per-mechanism prior probability vectors over Z_q powers.
//
// Space mechanisms factor the q^2-1 single-qudit errors into q+1 primitive
// directions: dir 0 = X^k, dir 1 = Z^k, dir 1+t = (X Z^t)^k for t = 1..q-1.
// Every nonzero (r,s) is a unique power of a unique direction. Measurement
// mechanisms are per-ancilla outcome shifts between consecutive cycles.
//
// Circuit-level faults that hit mid-extraction leave signatures no template
// mechanism produces (detection events split across neighbouring cycles and
// stabilizers). Fault propagation is Z_q-linear, so each such signature
// class is itself a direction mechanism: `composites` holds the power-1
// signature and (coset-reduced) residual of every class seen during fault
// enumeration, with the per-power probability mass.
struct CompositeClass {
    std::vector<DetectionEvent> signature;  // canonical order, first value 1
    PauliString residual;                   // power-1 data residual, coset-reduced
    std::vector<double> prob;               // length q, slot 0 = none
};

struct MechanismPriors {
    int q = 2;
    int cycles = 1;
    std::vector<double> space;  // [cycle][qudit][dir][power]
    std::vector<double> meas;   // [cycle][anc][shift]
    std::vector<CompositeClass> composites;
    double unattributed = 0.0;  // fault mass with no usable mechanism

    int dirs() const { return q + 1; }
    double& space_at(int cycle, int qudit, int dir, int power) {
        return space[((cycle * 5 + qudit) * dirs() + dir) * q + power];
    }
    double space_at(int cycle, int qudit, int dir, int power) const {
        return space[((cycle * 5 + qudit) * dirs() + dir) * q + power];
    }
    double& meas_at(int cycle, int anc, int shift) { return meas[(cycle * 4 + anc) * q + shift]; }
    double meas_at(int cycle, int anc, int shift) const {
        return meas[(cycle * 4 + anc) * q + shift];
    }

    // Fills the power-0 slots with the leftover probability mass.
    void finalize();
};

// Decomposition of a nonzero (r, s) into (direction, power).
struct DirPower {
    int dir;
    int power;
};
DirPower dir_of(int r, int s, const Dim& dim);
// The error X^r Z^s of (dir)^power on one site.
std::pair<int, int> powers_of(int dir, int power, const Dim& dim);

// Analytic priors for the standard depolarizing model: every nontrivial
// single-qudit error carries p/q^2 per cycle; measurements are perfect.
MechanismPriors build_priors_sdep(const Dim& dim, int cycles, double p);

// Circuit-level priors by exhaustive single-fault enumeration: every
// elementary fault is propagated through the noiseless circuit and its
// probability credited to the template mechanism matching its residual and
// detection signature, or to a composite class otherwise. Faults that raise
// a flag are excluded (the flag table owns them).
MechanismPriors build_priors_circuit(const SyndromeCircuit& sc, const NoiseModel& model);

// Replaces edge weights with -log prior of each edge mechanism and appends
// one matching edge per composite-class power whose signature activates one
// or two nodes.
void apply_weights(DetectorGraph& g, const MechanismPriors& priors);

}  // namespace qec5
