#pragma once

#include <vector>

#include "qec5/code5.hpp"
#include "qec5/pauli.hpp"
#include "qec5/pauli_frame.hpp"
#include "qec5/rng.hpp"

namespace qec5 {

struct NoiseModel {
    enum class Kind { StandardDepolarizing, CircuitLevel };
    Kind kind = Kind::CircuitLevel;
    double p = 0.0;
    // Sensitivity knob: spread the readout flip uniformly over X^k instead
    // of the single-shift channel.
    bool uniform_readout_flip = false;
};

// Single-qudit depolarizing draw: identity with probability
// 1 - p(q^2-1)/q^2, otherwise one of the q^2-1 nontrivial X^r Z^s each with
// probability p/q^2.
PauliString sample_depol1(double p, const Dim& dim, Rng& rng);

// Two-qudit depolarizing draw over the q^4-1 nontrivial pairs, each with
// probability p2/q^4.
PauliString sample_depol2(double p2, const Dim& dim, Rng& rng);

// Readout flip: X with probability p_m (uniform mode draws X^k, k != 0).
PauliString sample_measure_flip(double pm, const Dim& dim, Rng& rng, bool uniform = false);

// A potential fault location in an instrumented circuit.
struct NoiseSite {
    enum class Kind { Depol1, Depol2, MeasFlip };
    Kind kind = Kind::Depol1;
    int moment = 0;
    bool before = false;  // fault goes before this moment's instructions
    std::array<int, 2> wires{0, 0};
    int cycle = 0;
};

// Deterministic enumeration of every fault location the model defines on
// the circuit. Standard depolarizing: one single-qudit site per data wire
// ahead of each cycle. Circuit level: depol1 after every one-qudit gate and
// idle marker, depol2 after every coupling, readout flips ahead of each
// ancilla/flag measurement, and nothing in the final cycle.
std::vector<NoiseSite> noise_sites(const SyndromeCircuit& sc, const NoiseModel& model);

struct FaultEvent {
    NoiseSite site;
    PauliString fault;  // non-identity, over site.wires
};

struct InstrumentResult {
    Circuit circuit;  // input circuit with sampled FAULT instructions woven in
    std::vector<FaultEvent> faults;
};

// Samples one noise realization and materializes it as FAULT instructions.
InstrumentResult instrument(const SyndromeCircuit& sc, const NoiseModel& model, Rng& rng);

// Streaming equivalent of instrument + pf_run for the Monte Carlo hot path.
// Identical sampling order, bit-identical outcomes for the same rng state.
PfResult pf_run_noisy(const SyndromeCircuit& sc, const NoiseModel& model, Rng& rng);

// Propagates one concrete fault through the noiseless circuit.
PfResult pf_run_single_fault(const SyndromeCircuit& sc, const NoiseSite& site,
                             const PauliString& fault);

}  // namespace qec5
