#include "qec5/statevector.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qec5 {

std::size_t StateVector::capacity_guard(const Dim& dim, int n_qudits) {
    constexpr std::size_t kMaxAmps = 20'000'000;
    std::size_t size = 1;
    for (int i = 0; i < n_qudits; ++i) {
        size *= static_cast<std::size_t>(dim.q);
        if (size > kMaxAmps)
            throw std::length_error("state vector exceeds memory budget (q^n too large)");
    }
    return size;
}

StateVector::StateVector(const Dim& dim, int n_qudits)
    : q(dim.q), n(n_qudits), amps(capacity_guard(dim, n_qudits), cplx(0, 0)) {
    amps[0] = 1.0;
}

void StateVector::set_basis_state(const std::vector<int>& digits) {
    if (static_cast<int>(digits.size()) != n)
        throw std::invalid_argument("set_basis_state: digit count mismatch");
    std::fill(amps.begin(), amps.end(), cplx(0, 0));
    std::size_t idx = 0;
    for (int w = 0; w < n; ++w) idx = idx * q + mod_q(digits[w], q);
    amps[idx] = 1.0;
}

double StateVector::norm() const {
    double s = 0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

namespace {

std::size_t pow_sz(int q, int e) {
    std::size_t r = 1;
    while (e--) r *= static_cast<std::size_t>(q);
    return r;
}

}  // namespace

namespace {

// Structure of a gate's unitary, for the fast application paths.
struct GateForm {
    enum class Kind { Permutation, Diagonal, Dense } kind;
    std::vector<int> perm;       // out-digit(s) per in-digit(s)
    std::vector<cplx> diag;
    CMat dense;
};

GateForm analyze_gate(const Gate& g, int q) {
    GateForm form;
    CMat u = gate_unitary(g, Dim(q));
    bool diag = true, perm = true;
    std::vector<int> p(u.n, -1);
    for (std::size_t r = 0; r < u.n; ++r)
        for (std::size_t c = 0; c < u.n; ++c) {
            const cplx& v = u(r, c);
            if (v == cplx(0, 0)) continue;
            if (r != c) diag = false;
            if (std::abs(v - cplx(1, 0)) > 1e-14 || p[c] != -1) perm = false;
            p[c] = static_cast<int>(r);
        }
    if (perm) {
        form.kind = GateForm::Kind::Permutation;
        form.perm = std::move(p);
    } else if (diag) {
        form.kind = GateForm::Kind::Diagonal;
        form.diag.resize(u.n);
        for (std::size_t i = 0; i < u.n; ++i) form.diag[i] = u(i, i);
    } else {
        form.kind = GateForm::Kind::Dense;
        form.dense = std::move(u);
    }
    return form;
}

}  // namespace

void StateVector::apply_gate(const Gate& g, const std::vector<int>& wires) {
    static thread_local std::map<std::pair<int, std::pair<int, int>>, GateForm> cache;
    auto key = std::make_pair(static_cast<int>(g.kind) * 1024 + q, std::make_pair(g.power, 0));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, analyze_gate(g, q)).first;
    const GateForm& form = it->second;

    if (wires.size() == 1) {
        if (form.kind != GateForm::Kind::Dense) {
            const std::size_t stride = pow_sz(q, n - 1 - wires[0]);
            const std::size_t block = stride * q;
            std::vector<cplx> tmp(q);
            for (std::size_t base = 0; base < amps.size(); base += block)
                for (std::size_t r = 0; r < stride; ++r) {
                    const std::size_t at = base + r;
                    if (form.kind == GateForm::Kind::Diagonal) {
                        for (int k = 0; k < q; ++k) amps[at + k * stride] *= form.diag[k];
                    } else {
                        for (int k = 0; k < q; ++k) tmp[k] = amps[at + k * stride];
                        for (int k = 0; k < q; ++k) amps[at + form.perm[k] * stride] = tmp[k];
                    }
                }
            return;
        }
        const CMat& u = form.dense;
        const std::size_t stride = pow_sz(q, n - 1 - wires[0]);
        const std::size_t block = stride * q;
        std::vector<cplx> tmp(q);
        for (std::size_t base = 0; base < amps.size(); base += block)
            for (std::size_t r = 0; r < stride; ++r) {
                const std::size_t at = base + r;
                for (int k = 0; k < q; ++k) tmp[k] = amps[at + k * stride];
                for (int row = 0; row < q; ++row) {
                    cplx acc(0, 0);
                    for (int col = 0; col < q; ++col) {
                        const cplx& v = u(row, col);
                        if (v != cplx(0, 0)) acc += v * tmp[col];
                    }
                    amps[at + row * stride] = acc;
                }
            }
        return;
    }

    // Two-qudit gate: control stride s1, target stride s2.
    const std::size_t s1 = pow_sz(q, n - 1 - wires[0]);
    const std::size_t s2 = pow_sz(q, n - 1 - wires[1]);
    const int qq = q * q;
    std::vector<cplx> tmp(qq);
    std::vector<std::size_t> offsets(qq);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) offsets[a * q + b] = a * s1 + b * s2;

    // Iterate base indices with both wire digits zero.
    std::vector<std::size_t> strides(n);
    for (int w = 0; w < n; ++w) strides[w] = pow_sz(q, n - 1 - w);
    std::vector<int> digits(n, 0);
    const std::size_t total = amps.size() / static_cast<std::size_t>(qq);
    std::size_t base = 0;
    for (std::size_t count = 0;; ++count) {
        if (form.kind == GateForm::Kind::Permutation) {
            for (int k = 0; k < qq; ++k) tmp[k] = amps[base + offsets[k]];
            for (int k = 0; k < qq; ++k) amps[base + offsets[form.perm[k]]] = tmp[k];
        } else if (form.kind == GateForm::Kind::Diagonal) {
            for (int k = 0; k < qq; ++k) amps[base + offsets[k]] *= form.diag[k];
        } else {
            const CMat& u = form.dense;
            for (int k = 0; k < qq; ++k) tmp[k] = amps[base + offsets[k]];
            for (int row = 0; row < qq; ++row) {
                cplx acc(0, 0);
                for (int col = 0; col < qq; ++col) {
                    const cplx& v = u(row, col);
                    if (v != cplx(0, 0)) acc += v * tmp[col];
                }
                amps[base + offsets[row]] = acc;
            }
        }
        if (count + 1 == total) break;
        // Advance mixed-radix counter over the remaining wires.
        for (int w = n - 1;; --w) {
            if (w == wires[0] || w == wires[1]) continue;
            if (++digits[w] < q) {
                base += strides[w];
                break;
            }
            digits[w] = 0;
            base -= strides[w] * (q - 1);
            if (w == 0) break;
        }
    }
}

void StateVector::apply_fault(const std::vector<int>& wires, const std::vector<int>& fx,
                              const std::vector<int>& fz) {
    for (std::size_t i = 0; i < wires.size(); ++i) {
        if (fz[i] != 0) apply_gate({GateKind::Zpow, fz[i]}, {wires[i]});
        if (fx[i] != 0) apply_gate({GateKind::Xpow, fx[i]}, {wires[i]});
    }
}

int StateVector::measure(int wire, Rng& rng) {
    const std::size_t stride = pow_sz(q, n - 1 - wire);
    const std::size_t block = stride * q;
    std::vector<double> probs(q, 0.0);
    for (std::size_t base = 0; base < amps.size(); base += block)
        for (std::size_t r = 0; r < stride; ++r)
            for (int k = 0; k < q; ++k) probs[k] += std::norm(amps[base + r + k * stride]);
    double total = 0;
    for (double p : probs) total += p;
    double pick = rng.uniform() * total;
    int outcome = q - 1;
    double acc = 0;
    for (int k = 0; k < q; ++k) {
        acc += probs[k];
        if (pick < acc) {
            outcome = k;
            break;
        }
    }
    const double scale = 1.0 / std::sqrt(probs[outcome]);
    for (std::size_t base = 0; base < amps.size(); base += block)
        for (std::size_t r = 0; r < stride; ++r)
            for (int k = 0; k < q; ++k) {
                auto& a = amps[base + r + k * stride];
                a = (k == outcome) ? a * scale : cplx(0, 0);
            }
    return outcome;
}

void StateVector::reset(int wire, Rng& rng) {
    int m = measure(wire, rng);
    if (m == 0) return;
    const std::size_t stride = pow_sz(q, n - 1 - wire);
    const std::size_t block = stride * q;
    for (std::size_t base = 0; base < amps.size(); base += block)
        for (std::size_t r = 0; r < stride; ++r) {
            amps[base + r] = amps[base + r + m * stride];
            amps[base + r + m * stride] = cplx(0, 0);
        }
}

SvResult sv_run(const Circuit& c, Rng& rng) {
    SvResult res{StateVector(Dim(c.q), c.n_qudits), {}};
    for (const auto& moment : c.moments) {
        for (const auto& instr : moment) {
            switch (instr.op) {
                case Instruction::Op::Gate: {
                    const int gs = gate_arity(instr.gate.kind);
                    for (std::size_t g0 = 0; g0 + gs <= instr.targets.size(); g0 += gs) {
                        std::vector<int> wires(instr.targets.begin() + g0,
                                               instr.targets.begin() + g0 + gs);
                        res.state.apply_gate(instr.gate, wires);
                    }
                    break;
                }
                case Instruction::Op::Fault:
                    res.state.apply_fault(instr.targets, instr.fx, instr.fz);
                    break;
                case Instruction::Op::Measure:
                    for (int w : instr.targets) res.outcomes.push_back(res.state.measure(w, rng));
                    break;
                case Instruction::Op::Reset:
                    for (int w : instr.targets) res.state.reset(w, rng);
                    break;
                case Instruction::Op::Idle:
                    break;
                default:
                    throw std::invalid_argument(
                        "sv_run: circuit still contains unsampled noise placeholders");
            }
        }
    }
    return res;
}

cplx stabilizer_expectation(const StateVector& state, const PauliString& s) {
    if (static_cast<int>(s.size()) != state.n || s.q != state.q)
        throw std::invalid_argument("stabilizer_expectation: shape mismatch");
    const int q = state.q;
    // U(s)|i> = phase(i) |perm(i)>; accumulate conj(psi[perm(i)]) phase(i) psi[i].
    std::vector<std::size_t> strides(state.n);
    {
        std::size_t acc = 1;
        for (int w = state.n - 1; w >= 0; --w) {
            strides[w] = acc;
            acc *= q;
        }
    }
    std::size_t shift = 0;
    for (int w = 0; w < state.n; ++w) shift += strides[w] * static_cast<std::size_t>(s.xs[w]);

    cplx total(0, 0);
    std::vector<int> digits(state.n, 0);
    for (std::size_t i = 0; i < state.amps.size(); ++i) {
        if (state.amps[i] != cplx(0, 0)) {
            long long zphase = 0;
            std::size_t out = i;
            for (int w = 0; w < state.n; ++w) {
                zphase += static_cast<long long>(s.zs[w]) * digits[w];
                if (s.xs[w] != 0 && digits[w] + s.xs[w] >= q) out -= strides[w] * q;
            }
            out += shift;
            total += std::conj(state.amps[out]) * omega_pow_half(q, 2 * zphase) * state.amps[i];
        }
        for (int w = state.n - 1; w >= 0; --w) {
            if (++digits[w] < q) break;
            digits[w] = 0;
        }
    }
    return omega_pow_half(q, s.phase2) * total;
}

}  // namespace qec5
