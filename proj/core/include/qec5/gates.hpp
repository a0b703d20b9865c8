#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qec5/cmatrix.hpp"
#include "qec5/pauli.hpp"

namespace qec5 {

// Generalized Clifford gate set: shift X, phase Z, quadratic phase S,
// Fourier F, modular-addition SUM (control, target), multiplication M
// (|n> -> |n(q-1)>), their inverses, and integer Pauli powers.
enum class GateKind : std::uint8_t {
    X, Z, S, F, SUM, M,
    Finv, Sinv, SUMinv, Minv,
    Xpow, Zpow,
};

struct Gate {
    GateKind kind = GateKind::X;
    int power = 1;  // used by Xpow/Zpow only

    bool operator==(const Gate&) const = default;
};

int gate_arity(GateKind kind);
std::string gate_mnemonic(const Gate& g);
// Returns false if the mnemonic is unknown.
bool parse_gate_mnemonic(const std::string& text, Gate& out);

// Exact unitary of the gate, q^arity x q^arity.
CMat gate_unitary(const Gate& g, const Dim& dim);

// Unitary of an n-site Pauli string (with its phase), q^n x q^n.
// Guard: intended for small oracles only.
CMat pauli_unitary(const PauliString& p);

// G p G^dag with exact phase tracking. `targets` lists the acted sites
// (control first for SUM); all other sites pass through unchanged.
PauliString conjugate(const Gate& g, const std::vector<std::size_t>& targets,
                      const PauliString& p);

// Tableau form of a gate: images of the single-site generators X_i, Z_i
// on the gate's own arity-many sites.
struct GateAction {
    Dim dim;
    int arity = 1;
    std::vector<PauliString> x_images, z_images;  // arity entries each

    static GateAction of(const Gate& g, const Dim& dim);
};

// True iff the action preserves all pairwise commutation phases of the
// generators and (for q <= 7) matches conjugation by the gate unitary.
bool verify_symplectic(const GateAction& action, const Gate& g);
// Generator-commutation check only (no matrix oracle), any q.
bool action_preserves_commutation(const GateAction& action);

namespace detail {
// Single-site tableau action with exact phase tracking; `half` accumulates
// the exponent of w^(1/2). Used directly by the frame backend.
void conjugate_site(GateKind kind, int power, int q, int& x, int& z, long long& half);
}  // namespace detail

}  // namespace qec5
