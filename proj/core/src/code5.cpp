#include "qec5/code5.hpp"

#include <cmath>
#include <stdexcept>

namespace qec5 {

bool qhb_holds(int n, const Dim& dim) {
    if (n < 1) throw std::invalid_argument("qhb_holds: n must be positive");
    const long long q = dim.q;
    long long lhs = q * ((q * q - 1) * static_cast<long long>(n) + 1);
    // q^n with overflow guard; the bound is certainly met once q^n > lhs.
    long long rhs = 1;
    for (int i = 0; i < n; ++i) {
        rhs *= q;
        if (rhs > lhs) return true;
    }
    return lhs <= rhs;
}

bool qsb_holds(int n, int k, int d) {
    if (n < 1 || k < 0 || d < 1) throw std::invalid_argument("qsb_holds: bad parameters");
    return 2 * (d - 1) + k <= n;
}

CheckMatrix build_check_matrix(const Dim& dim) {
    CheckMatrix h{dim, {}, {}};
    const int q = dim.q;
    for (int i = 0; i < 4; ++i) {
        h.xpart[i][i % 5] = 1;
        h.xpart[i][(i + 1) % 5] = q - 1;
        h.zpart[i][(i + 2) % 5] = q - 1;
        h.zpart[i][(i + 4) % 5] = 1;
    }
    return h;
}

PauliString CheckMatrix::row(int i) const {
    PauliString p(dim, 5);
    for (int j = 0; j < 5; ++j) {
        p.xs[j] = xpart[i][j];
        p.zs[j] = zpart[i][j];
    }
    return p;
}

std::vector<PauliString> CheckMatrix::stabilizers() const {
    std::vector<PauliString> rows;
    for (int i = 0; i < 4; ++i) rows.push_back(row(i));
    return rows;
}

StabilizerReducer::StabilizerReducer(const CheckMatrix& H) : dim(H.dim) {
    const int q = dim.q;
    for (int i = 0; i < 4; ++i) rref.push_back(symplectic(H.row(i)));
    std::size_t r = 0;
    for (std::size_t col = 0; col < 10 && r < rref.size(); ++col) {
        std::size_t sel = r;
        while (sel < rref.size() && rref[sel][col] == 0) ++sel;
        if (sel == rref.size()) continue;
        std::swap(rref[r], rref[sel]);
        int inv = mod_inverse(rref[r][col], dim);
        for (auto& x : rref[r]) x = mod_q(static_cast<long long>(x) * inv, q);
        for (std::size_t r2 = 0; r2 < rref.size(); ++r2) {
            if (r2 == r || rref[r2][col] == 0) continue;
            int f = rref[r2][col];
            for (std::size_t cc = 0; cc < 10; ++cc)
                rref[r2][cc] = mod_q(rref[r2][cc] - static_cast<long long>(f) * rref[r][cc], q);
        }
        pivots.push_back(static_cast<int>(col));
        ++r;
    }
}

PauliString StabilizerReducer::reduce(const PauliString& p) const {
    const int q = dim.q;
    std::vector<int> v = symplectic(p);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        int f = v[pivots[r]];
        if (f == 0) continue;
        for (std::size_t cc = 0; cc < 10; ++cc)
            v[cc] = mod_q(v[cc] - static_cast<long long>(f) * rref[r][cc], q);
    }
    PauliString out(dim, 5);
    for (int i = 0; i < 5; ++i) {
        out.xs[i] = v[i];
        out.zs[i] = v[5 + i];
    }
    return out;
}

bool StabilizerReducer::in_row_space(const PauliString& p) const {
    return reduce(p).is_phase_only();
}

namespace {

Instruction g(GateKind kind, std::initializer_list<int> targets) {
    Instruction i;
    i.op = Instruction::Op::Gate;
    i.gate = {kind, 1};
    i.targets = targets;
    return i;
}

Instruction g(GateKind kind, std::vector<int> targets) {
    Instruction i;
    i.op = Instruction::Op::Gate;
    i.gate = {kind, 1};
    i.targets = std::move(targets);
    return i;
}

Instruction measure(std::vector<int> targets) {
    Instruction i;
    i.op = Instruction::Op::Measure;
    i.targets = std::move(targets);
    return i;
}

Instruction reset(std::vector<int> targets) {
    Instruction i;
    i.op = Instruction::Op::Reset;
    i.targets = std::move(targets);
    return i;
}

}  // namespace

std::vector<std::vector<Instruction>> reduction_sequence(const Dim&) {
    using K = GateKind;
    std::vector<std::vector<Instruction>> stages;
    stages.push_back({g(K::M, {1}), g(K::F, {2}), g(K::F, {4})});  // site 4 carries M.F
    stages.push_back({g(K::M, {4})});
    stages.push_back({g(K::SUMinv, {0, 4})});
    stages.push_back({g(K::SUMinv, {0, 2})});
    stages.push_back({g(K::SUMinv, {0, 1})});
    stages.push_back({g(K::M, {1}), g(K::F, {2}), g(K::F, {3})});
    stages.push_back({g(K::SUMinv, {1, 3})});
    stages.push_back({g(K::SUMinv, {1, 2})});
    stages.push_back({g(K::M, {2}), g(K::F, {3}), g(K::M, {4})});
    stages.push_back({g(K::SUMinv, {2, 4})});
    stages.push_back({g(K::SUMinv, {2, 3})});
    stages.push_back({g(K::M, {3}), g(K::F, {4})});
    stages.push_back({g(K::SUMinv, {3, 4})});
    stages.push_back({g(K::F, {0}), g(K::F, {1}), g(K::F, {2}), g(K::F, {3})});
    return stages;
}

Circuit build_encoder(const Dim& dim) {
    // Inverse of the reduction sequence, daggered, applied last-stage first.
    auto stages = reduction_sequence(dim);
    Circuit c(dim, 5);
    c.moments.clear();
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        c.begin_moment();
        // Instructions within one stage act on disjoint wires and commute;
        // dagger each and keep them in one moment.
        for (auto instr = it->rbegin(); instr != it->rend(); ++instr) {
            Instruction inv = *instr;
            switch (inv.gate.kind) {
                case GateKind::F: inv.gate.kind = GateKind::Finv; break;
                case GateKind::Finv: inv.gate.kind = GateKind::F; break;
                case GateKind::M: inv.gate.kind = GateKind::Minv; break;
                case GateKind::Minv: inv.gate.kind = GateKind::M; break;
                case GateKind::SUM: inv.gate.kind = GateKind::SUMinv; break;
                case GateKind::SUMinv: inv.gate.kind = GateKind::SUM; break;
                case GateKind::S: inv.gate.kind = GateKind::Sinv; break;
                case GateKind::Sinv: inv.gate.kind = GateKind::S; break;
                default: break;
            }
            c.append(std::move(inv));
        }
    }
    c.trim();
    return c;
}

namespace {

// Lockstep cycle wire layout.
struct Wires {
    std::vector<int> data{0, 1, 2, 3, 4};
    std::vector<int> anc{5, 6, 7, 8};
    std::vector<int> flags{9, 10, 11, 12};
};

// One lockstep cycle. Block i couples, in step order, data qudits
// i (X), i+4 (Z), i+2 (Z^-1), i+1 (X^-1); the Z-type couplings run inside
// the window where every data qudit sits in the Fourier-rotated frame.
// This ordering makes all cross-block coupling exchanges phase-free, so the
// interleaved cycle equals the sequential product of the four stabilizer
// couplings.
Circuit lockstep_cycle(const Dim& dim, bool flagged) {
    using K = GateKind;
    const Wires w;
    const int n = flagged ? 13 : 9;
    Circuit c(dim, n);
    c.moments.clear();

    auto sum_layer = [&](int site_offset, bool dagger) {
        std::vector<Instruction> layer;
        for (int i = 0; i < 4; ++i) {
            int d = (i + site_offset) % 5;
            layer.push_back(g(dagger ? K::SUMinv : K::SUM, {w.anc[i], w.data[d]}));
        }
        return layer;
    };

    c.begin_moment();
    c.append(g(K::F, w.anc));
    c.begin_moment();
    for (auto& i : sum_layer(0, false)) c.append(std::move(i));  // X couplings
    c.begin_moment();
    if (flagged)
        for (int i = 0; i < 4; ++i) c.append(g(K::SUM, {w.anc[i], w.flags[i]}));
    c.append(g(K::Finv, w.data));
    c.begin_moment();
    for (auto& i : sum_layer(4, false)) c.append(std::move(i));  // Z couplings
    c.begin_moment();
    for (auto& i : sum_layer(2, true)) c.append(std::move(i));   // Z^-1 couplings
    c.begin_moment();
    if (flagged)
        for (int i = 0; i < 4; ++i) c.append(g(K::SUMinv, {w.anc[i], w.flags[i]}));
    c.append(g(K::F, w.data));
    c.begin_moment();
    for (auto& i : sum_layer(1, true)) c.append(std::move(i));   // X^-1 couplings
    c.begin_moment();
    c.append(g(K::Finv, w.anc));
    c.begin_moment();
    {
        std::vector<int> meas = w.anc;
        if (flagged) meas.insert(meas.end(), w.flags.begin(), w.flags.end());
        c.append(measure(meas));
    }
    c.begin_moment();
    {
        std::vector<int> rs = w.anc;
        if (flagged) rs.insert(rs.end(), w.flags.begin(), w.flags.end());
        c.append(reset(rs));
    }
    return c;
}

SyndromeCircuit assemble(const Dim& dim, Circuit cycle, bool flagged, int cycles,
                         std::vector<int> data, std::vector<int> anc, std::vector<int> flags,
                         std::vector<MeasSlot> cycle_meas) {
    auto [packed, sched] = schedule(cycle, data);
    SyndromeCircuit sc{Circuit(dim, cycle.n_qudits), dim, flagged, cycles,
                       static_cast<int>(packed.moments.size()),
                       std::move(data), std::move(anc), std::move(flags), {}, sched};
    sc.circuit.moments.clear();
    for (int cyc = 0; cyc < cycles; ++cyc) {
        for (const auto& m : packed.moments) sc.circuit.moments.push_back(m);
        for (MeasSlot slot : cycle_meas) {
            slot.cycle = cyc;
            sc.meas_order.push_back(slot);
        }
    }
    sc.circuit.validate();
    return sc;
}

}  // namespace

SyndromeCircuit build_cycle(const Dim& dim, bool flagged, int cycles) {
    const Wires w;
    std::vector<MeasSlot> meas;
    for (int i = 0; i < 4; ++i) meas.push_back({w.anc[i], 0, false, i});
    if (flagged)
        for (int i = 0; i < 4; ++i) meas.push_back({w.flags[i], 0, true, i});
    auto sc = assemble(dim, lockstep_cycle(dim, flagged), flagged, cycles, w.data, w.anc,
                       flagged ? w.flags : std::vector<int>{}, meas);
    if (flagged) check_cycle_bounds(sc.cycle_schedule, sc.data_wires, 10, 4);
    return sc;
}

Circuit build_cycle_sequential_unscheduled(const Dim& dim) {
    using K = GateKind;
    Circuit c(dim, 9);
    c.moments.clear();
    for (int i = 0; i < 4; ++i) {
        int a = 5 + i;
        int dx = i, dxn = (i + 1) % 5, dzn = (i + 2) % 5, dz = (i + 4) % 5;
        c.begin_moment();
        c.append(g(K::F, {a}));
        c.append(g(K::Finv, {dzn}));
        c.append(g(K::Finv, {dz}));
        c.begin_moment();
        c.append(g(K::SUM, {a, dx}));
        c.begin_moment();
        c.append(g(K::SUMinv, {a, dxn}));
        c.begin_moment();
        c.append(g(K::SUMinv, {a, dzn}));
        c.begin_moment();
        c.append(g(K::SUM, {a, dz}));
        c.begin_moment();
        c.append(g(K::Finv, {a}));
        c.append(g(K::F, {dzn}));
        c.append(g(K::F, {dz}));
    }
    c.begin_moment();
    c.append(measure({5, 6, 7, 8}));
    c.begin_moment();
    c.append(reset({5, 6, 7, 8}));
    return c;
}

SyndromeCircuit build_cycle_sequential_flag(const Dim& dim, int cycles) {
    using K = GateKind;
    const int flag = 9;
    Circuit c(dim, 10);
    c.moments.clear();
    std::vector<MeasSlot> meas;
    for (int i = 0; i < 4; ++i) {
        int a = 5 + i;
        int dx = i, dxn = (i + 1) % 5, dzn = (i + 2) % 5, dz = (i + 4) % 5;
        c.begin_moment();
        c.append(g(K::F, {a}));
        c.append(g(K::Finv, {dzn}));
        c.append(g(K::Finv, {dz}));
        c.begin_moment();
        c.append(g(K::SUM, {a, dx}));
        c.begin_moment();
        c.append(g(K::SUM, {a, flag}));
        c.begin_moment();
        c.append(g(K::SUMinv, {a, dxn}));
        c.begin_moment();
        c.append(g(K::SUMinv, {a, dzn}));
        c.begin_moment();
        c.append(g(K::SUMinv, {a, flag}));
        c.begin_moment();
        c.append(g(K::SUM, {a, dz}));
        c.begin_moment();
        c.append(g(K::Finv, {a}));
        c.append(g(K::F, {dzn}));
        c.append(g(K::F, {dz}));
        c.begin_moment();
        c.append(measure({a, flag}));
        meas.push_back({a, 0, false, i});
        meas.push_back({flag, 0, true, i});
        c.begin_moment();
        c.append(reset({flag}));
    }
    c.begin_moment();
    c.append(reset({5, 6, 7, 8}));
    return assemble(dim, c, true, cycles, {0, 1, 2, 3, 4}, {5, 6, 7, 8}, {flag}, meas);
}

std::array<int, 3> t3_output_blocks() { return {1, 2, 0}; }

Circuit build_logical(const Dim& dim, LogicalOp which) {
    using K = GateKind;
    if (which == LogicalOp::XL || which == LogicalOp::ZL) {
        Circuit c(dim, 5);
        c.moments.clear();
        c.begin_moment();
        c.append(g(which == LogicalOp::XL ? K::X : K::Z, {0, 1, 2, 3, 4}));
        return c;
    }
    if (which == LogicalOp::TL) {
        // T = S.F applied transversally: Fourier first, then the phase gate.
        Circuit c(dim, 5);
        c.moments.clear();
        c.begin_moment();
        c.append(g(K::F, {0, 1, 2, 3, 4}));
        c.begin_moment();
        c.append(g(K::S, {0, 1, 2, 3, 4}));
        return c;
    }

    // Three-block transversal gate. Wire blocks: a = logical 2 input
    // (block 1), b = logical 3 input (block 2), c = logical 1 input
    // (block 0); outputs are relabeled per t3_output_blocks().
    Circuit c3(dim, 15);
    c3.moments.clear();
    auto block = [](int b) {
        std::vector<int> v;
        for (int i = 0; i < 5; ++i) v.push_back(5 * b + i);
        return v;
    };
    auto block_pair = [](int cb, int tb) {
        std::vector<int> v;
        for (int i = 0; i < 5; ++i) {
            v.push_back(5 * cb + i);
            v.push_back(5 * tb + i);
        }
        return v;
    };
    const int A = 1, B = 2, C = 0;
    auto layer = [&](std::vector<Instruction> instrs) {
        c3.begin_moment();
        for (auto& i : instrs) c3.append(std::move(i));
    };
    // Pauli-Y prefactors (phase bookkeeping only at the tableau level).
    layer({g(K::Z, block(A)), g(K::Z, block(C))});
    layer({g(K::X, block(A)), g(K::X, block(C))});
    // (S F S F)^dag on a
    layer({g(K::Sinv, block(A))});
    layer({g(K::Finv, block(A))});
    layer({g(K::Sinv, block(A))});
    layer({g(K::Finv, block(A))});
    layer({g(K::Sinv, block(A))});
    layer({g(K::SUM, block_pair(C, A))});
    // S on a; S F S F on c (Fourier first)
    layer({g(K::S, block(A)), g(K::F, block(C))});
    layer({g(K::S, block(C))});
    layer({g(K::F, block(C))});
    layer({g(K::S, block(C))});
    // (S F S F)^dag on a; S^dag on c
    layer({g(K::Sinv, block(A)), g(K::Sinv, block(C))});
    layer({g(K::Finv, block(A))});
    layer({g(K::Sinv, block(A))});
    layer({g(K::Finv, block(A))});
    layer({g(K::Sinv, block(A))});
    layer({g(K::SUM, block_pair(B, A))});
    layer({g(K::SUM, block_pair(C, B))});
    layer({g(K::SUM, block_pair(A, C))});
    return c3;
}

CodeCircuits build_code_circuits(const Dim& dim) {
    CodeCircuits cc{build_encoder(dim), build_cycle(dim, false), build_cycle(dim, true), {}};
    cc.logical_ops["X_L"] = build_logical(dim, LogicalOp::XL);
    cc.logical_ops["Z_L"] = build_logical(dim, LogicalOp::ZL);
    cc.logical_ops["T_L"] = build_logical(dim, LogicalOp::TL);
    cc.logical_ops["T3"] = build_logical(dim, LogicalOp::T3);
    return cc;
}

}  // namespace qec5
