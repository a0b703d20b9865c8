#pragma once

#include <string>
#include <vector>

#include "qec5/field.hpp"

namespace qec5 {

// n-qudit generalized Pauli operator  w^(phase2/2) * prod_i X^xs[i] Z^zs[i],
// with w = exp(2*pi*i/q). The phase exponent is kept in half-steps of w
// (phase2 in Z_2q) so that Y-type phases at q = 2 stay representable;
// integer powers of w correspond to even phase2. Decoding layers ignore the
// phase entirely and consume only the (xs|zs) symplectic data.
struct PauliString {
    int q = 2;
    int phase2 = 0;            // exponent of w^(1/2), reduced mod 2q
    std::vector<int> xs, zs;   // per-site powers, reduced mod q

    PauliString() = default;
    PauliString(const Dim& dim, std::size_t n)
        : q(dim.q), phase2(0), xs(n, 0), zs(n, 0) {}

    static PauliString identity(const Dim& dim, std::size_t n) { return PauliString(dim, n); }

    // Single-site operator w^(h/2) X^r Z^s embedded at `site` of n.
    static PauliString single(const Dim& dim, std::size_t n, std::size_t site, int r, int s,
                              int half_phase = 0);

    std::size_t size() const { return xs.size(); }
    bool is_identity() const;
    // True when all powers vanish; the phase may still be nontrivial.
    bool is_phase_only() const;

    void reduce();                       // canonicalize all entries
    PauliString adjoint() const;
    PauliString without_phase() const;

    // Phaseless comparison of the symplectic content.
    bool same_powers(const PauliString& other) const;

    int weight() const;                  // number of non-identity sites

    bool operator==(const PauliString&) const = default;

    std::string str() const;
    static PauliString parse(const std::string& text, const Dim& dim);
};

// (xs|zs) concatenation over Z_q, phase dropped.
using SymplecticVector = std::vector<int>;
SymplecticVector symplectic(const PauliString& p);

// Normal-ordered product p1*p2 with exact phase accumulation:
// per site, X^r Z^s * X^t Z^u = w^(s t) X^(r+t) Z^(s+u).
PauliString pauli_mul(const PauliString& p1, const PauliString& p2);

// Exponent c with p1*p2 = w^c p2*p1, i.e. sum_i (s_i t_i - r_i u_i) mod q
// for p1 = X^r Z^s, p2 = X^t Z^u.
int commutation_phase(const PauliString& p1, const PauliString& p2);

// i-th entry = commutation_phase(checks[i], error).
std::vector<int> syndrome_of(const PauliString& error, const std::vector<PauliString>& checks);

}  // namespace qec5
