#pragma once

#include <vector>

#include "qec5/circuit.hpp"
#include "qec5/cmatrix.hpp"
#include "qec5/pauli.hpp"
#include "qec5/rng.hpp"

namespace qec5 {

// Dense q^n state vector. Wire 0 is the most significant digit of the basis
// index, so |d0 d1 ... d(n-1)> sits at index sum_w d_w q^(n-1-w).
struct StateVector {
    int q = 2;
    int n = 0;
    std::vector<cplx> amps;

    StateVector(const Dim& dim, int n_qudits);

    static std::size_t capacity_guard(const Dim& dim, int n_qudits);

    void set_basis_state(const std::vector<int>& digits);
    double norm() const;

    void apply_gate(const Gate& g, const std::vector<int>& wires);
    void apply_fault(const std::vector<int>& wires, const std::vector<int>& fx,
                     const std::vector<int>& fz);
    int measure(int wire, Rng& rng);  // projective, computational basis
    void reset(int wire, Rng& rng);   // measure and reprepare |0>
};

struct SvResult {
    StateVector state;
    std::vector<int> outcomes;  // in measurement order
};

// Runs the circuit exactly; measurements are sampled from Born
// probabilities. Throws length_error when q^n exceeds the memory guard.
SvResult sv_run(const Circuit& c, Rng& rng);

// <psi| U(s) |psi> for the Pauli operator s (with its phase).
cplx stabilizer_expectation(const StateVector& state, const PauliString& s);

}  // namespace qec5
