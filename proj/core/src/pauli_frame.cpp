#include "qec5/pauli_frame.hpp"

#include <stdexcept>

#include "qec5/gates.hpp"

namespace qec5 {

PauliString PauliFrame::restricted_to(const std::vector<int>& wires) const {
    PauliString p(Dim(q), wires.size());
    for (std::size_t i = 0; i < wires.size(); ++i) {
        p.xs[i] = xs[wires[i]];
        p.zs[i] = zs[wires[i]];
    }
    return p;
}

PfResult pf_run(const Circuit& c) {
    PfResult res{{}, PauliFrame(Dim(c.q), c.n_qudits)};
    auto& f = res.frame;
    long long half = 0;  // phase is tracked but never read out
    for (const auto& moment : c.moments) {
        for (const auto& instr : moment) {
            switch (instr.op) {
                case Instruction::Op::Gate: {
                    const int gs = gate_arity(instr.gate.kind);
                    for (std::size_t g0 = 0; g0 + gs <= instr.targets.size(); g0 += gs) {
                        if (gs == 1) {
                            int w = instr.targets[g0];
                            detail::conjugate_site(instr.gate.kind, instr.gate.power, f.q,
                                                   f.xs[w], f.zs[w], half);
                        } else {
                            int cw = instr.targets[g0], tw = instr.targets[g0 + 1];
                            if (instr.gate.kind == GateKind::SUM) {
                                f.zs[cw] = mod_q(f.zs[cw] - f.zs[tw], f.q);
                                f.xs[tw] = mod_q(f.xs[tw] + f.xs[cw], f.q);
                            } else {
                                f.zs[cw] = mod_q(f.zs[cw] + f.zs[tw], f.q);
                                f.xs[tw] = mod_q(f.xs[tw] - f.xs[cw], f.q);
                            }
                        }
                    }
                    break;
                }
                case Instruction::Op::Fault:
                    for (std::size_t i = 0; i < instr.targets.size(); ++i)
                        f.mul(instr.targets[i], instr.fx[i], instr.fz[i]);
                    break;
                case Instruction::Op::Measure:
                    for (int w : instr.targets) res.outcome_shifts.push_back(f.xs[w]);
                    break;
                case Instruction::Op::Reset:
                    for (int w : instr.targets) f.clear(w);
                    break;
                case Instruction::Op::Idle:
                    break;
                default:
                    throw std::invalid_argument(
                        "pf_run: circuit still contains unsampled noise placeholders");
            }
        }
    }
    return res;
}

}  // namespace qec5
