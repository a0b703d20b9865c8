#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qec5/field.hpp"
#include "qec5/gates.hpp"

namespace qec5 {

// One circuit instruction. Gate-like ops may carry several target groups of
// `arity` wires each ("F 0 1 2" applies F to three wires; "SUM 0 1 2 3" is
// SUM(0,1) then SUM(2,3) within the moment). FAULT carries sampled Pauli
// powers per target wire and multiplies into the tracked error rather than
// conjugating it.
struct Instruction {
    enum class Op : std::uint8_t { Gate, Measure, Reset, Idle, Depol1, Depol2, MFlip, Fault };

    Op op = Op::Gate;
    Gate gate{};                 // valid when op == Gate
    std::vector<int> targets;
    double param = 0.0;          // noise probability for Depol1/Depol2/MFlip
    std::vector<int> fx, fz;     // per-target powers for Fault

    int group_size() const;
    bool is_gate_like() const { return op == Op::Gate || op == Op::Fault; }
};

using Moment = std::vector<Instruction>;

struct Circuit {
    int q = 2;
    int n_qudits = 0;
    std::vector<Moment> moments;

    Circuit() = default;
    Circuit(const Dim& dim, int n) : q(dim.q), n_qudits(n) {}

    // Appends to the last moment, validating wire disjointness.
    void append(Instruction instr);
    void begin_moment();
    // Drops a trailing empty moment if present.
    void trim();

    std::size_t moment_count() const { return moments.size(); }
    std::size_t instruction_count() const;

    void validate() const;  // throws on malformed content

    friend Circuit operator+(const Circuit& a, const Circuit& b);
};

// Line-oriented text format. Header "DIM q" / "QUDITS n", one instruction
// per line, TICK separates moments, '#' starts a comment. Noise ops carry
// their probability in parentheses: DEPOL1(0.01) 0 1. Faults carry one
// Pauli site token per target: FAULT 0 4 X1.Z0 X0.Z1.
Circuit parse_circuit(const std::string& text);
std::string emit_circuit(const Circuit& c);

// Moment dependency graph (per-wire instruction chains) in DOT form.
std::string circuit_dot(const Circuit& c);

}  // namespace qec5
