#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qec5/circuit.hpp"
#include "qec5/pauli.hpp"
#include "qec5/schedule.hpp"

namespace qec5 {

// Quantum Hamming bound for prime-dimension single-error codes:
// q((q^2-1)n + 1) <= q^n.
bool qhb_holds(int n, const Dim& dim);

// Quantum Singleton bound: 2(d-1) + k <= n.
bool qsb_holds(int n, int k, int d);

// Parity-check matrix of the five-qudit code in (Z|X) block form. Rows are
// the cyclic shifts of the generator with X at site i, X^(q-1) at i+1,
// Z^(q-1) at i+2 and Z at i+4 (indices mod 5).
struct CheckMatrix {
    Dim dim;
    std::array<std::array<int, 5>, 4> zpart{};
    std::array<std::array<int, 5>, 4> xpart{};

    std::vector<PauliString> stabilizers() const;  // four phase-free rows
    PauliString row(int i) const;
};

CheckMatrix build_check_matrix(const Dim& dim);

// Row-reduction helper over the check matrix' symplectic row space.
// Canonicalizes error cosets and decides stabilizer membership.
struct StabilizerReducer {
    explicit StabilizerReducer(const CheckMatrix& H);

    // Canonical coset representative of p modulo the stabilizer row space
    // (phase dropped).
    PauliString reduce(const PauliString& p) const;
    // True iff p's symplectic vector lies in the row space.
    bool in_row_space(const PauliString& p) const;

    Dim dim;
    std::vector<std::vector<int>> rref;  // reduced rows
    std::vector<int> pivots;             // pivot column per row
};

// The gate sequence that conjugates the check matrix to the canonical form
// stabilizing |0000> on wires 0..3 (wire 4 carries the logical qudit).
// Entry k holds the k-th stage as one or more instructions in time order.
std::vector<std::vector<Instruction>> reduction_sequence(const Dim& dim);

// Encoding circuit on 5 wires: the reduction sequence inverted and
// daggered. Logical input rides on wire 4; encoded |j> is the image of the
// basis state with digit j on wire 4 and zeros elsewhere.
Circuit build_encoder(const Dim& dim);

// Which wire of the encoder carries the logical input.
inline constexpr int kEncoderLogicalWire = 4;

struct MeasSlot {
    int wire = 0;
    int cycle = 0;
    bool is_flag = false;
    int block = 0;  // stabilizer index
};

// A syndrome-extraction circuit with the bookkeeping needed by noise
// instrumentation and decoding.
struct SyndromeCircuit {
    Circuit circuit;
    Dim dim;
    bool flagged = false;
    int cycles = 1;
    int moments_per_cycle = 0;
    std::vector<int> data_wires, ancilla_wires, flag_wires;
    std::vector<MeasSlot> meas_order;  // one entry per measurement, in record order
    Schedule cycle_schedule;

    int cycle_of_moment(int m) const { return m / moments_per_cycle; }
};

// One extraction cycle in the depth-optimized layout: all four stabilizer
// blocks run in lockstep over 10 steps, with per-block flag qudits coupled
// after the first and before the last data coupling. Coupling orders are
// chosen so that interleaved blocks compose to exactly the product of the
// four commuting stabilizer couplings. Returns a scheduled cycle.
SyndromeCircuit build_cycle(const Dim& dim, bool flagged, int cycles = 1);

// The unoptimized single-cycle layout with strictly sequential stabilizer
// blocks (reference rendition; used to demonstrate the depth gain).
Circuit build_cycle_sequential_unscheduled(const Dim& dim);

// Sequential-block flagged variant with a single reused flag wire
// (measure+reset between blocks). Operationally equivalent to the lockstep
// form; smaller wire count makes exhaustive dense-vector checks cheap.
SyndromeCircuit build_cycle_sequential_flag(const Dim& dim, int cycles = 1);

enum class LogicalOp { XL, ZL, TL, T3 };

// Transversal logical circuits. XL/ZL/TL act on the 5 wires of one block;
// T3 acts blockwise on 15 wires (three code blocks) and permutes the
// logical roles on output (see t3_output_blocks).
Circuit build_logical(const Dim& dim, LogicalOp which);

// After T3, logical qudit j lives on block t3_output_blocks()[j].
std::array<int, 3> t3_output_blocks();

struct CodeCircuits {
    Circuit encoder;
    SyndromeCircuit cycle_plain;
    SyndromeCircuit cycle_flag;
    std::map<std::string, Circuit> logical_ops;
};

CodeCircuits build_code_circuits(const Dim& dim);

}  // namespace qec5
