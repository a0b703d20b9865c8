#include <gtest/gtest.h>

#include "qec5/code5.hpp"
#include "qec5/noise.hpp"
#include "qec5/pauli_frame.hpp"
#include "qec5/statevector.hpp"

using namespace qec5;

TEST(statevector, fourier_measurement_uniform) {
    Dim dim(3);
    Rng rng(1);
    std::array<int, 3> counts{0, 0, 0};
    const int shots = 100000;
    for (int s = 0; s < shots; ++s) {
        StateVector sv(dim, 1);
        sv.apply_gate({GateKind::F, 1}, {0});
        counts[sv.measure(0, rng)]++;
    }
    const double expect = shots / 3.0;
    const double sigma = std::sqrt(shots * (1.0 / 3) * (2.0 / 3));
    for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(counts[k] - expect), 3 * sigma);
}

TEST(statevector, sum_basis_action) {
    Dim dim(3);
    StateVector sv(dim, 2);
    sv.set_basis_state({1, 1});
    sv.apply_gate({GateKind::SUM, 1}, {0, 1});
    // |1>|1+1> = |1,2> at index 1*3+2.
    EXPECT_LT(std::abs(sv.amps[5] - cplx(1, 0)), 1e-12);
}

TEST(statevector, norm_preserved_through_cycle) {
    Dim dim(3);
    auto sc = build_cycle(dim, true, 1);
    StateVector sv(dim, sc.circuit.n_qudits);
    Rng rng(2);
    for (const auto& m : sc.circuit.moments) {
        for (const auto& instr : m) {
            if (instr.op == Instruction::Op::Gate) {
                const int gs = gate_arity(instr.gate.kind);
                for (std::size_t g0 = 0; g0 + gs <= instr.targets.size(); g0 += gs) {
                    std::vector<int> w(instr.targets.begin() + g0,
                                       instr.targets.begin() + g0 + gs);
                    sv.apply_gate(instr.gate, w);
                }
                EXPECT_LT(std::abs(sv.norm() - 1.0), 1e-9);
            }
        }
    }
}

TEST(statevector, memory_guard) {
    EXPECT_THROW(StateVector(Dim(5), 13), std::length_error);
}

TEST(pauli_frame, no_faults_no_shifts) {
    for (int q : {2, 3, 5}) {
        auto sc = build_cycle(Dim(q), true, 3);
        auto res = pf_run(sc.circuit);
        for (int s : res.outcome_shifts) EXPECT_EQ(s, 0);
    }
}

TEST(pauli_frame, z_before_readout_rotation_shifts_once) {
    // A single Z on ancilla A0 just before its basis-change-and-measure
    // shifts A0's readout of that cycle by one, and nothing else.
    Dim dim(3);
    auto sc = build_cycle(dim, false, 2);
    Circuit c(dim, sc.circuit.n_qudits);
    c.moments.clear();
    const int fdag_moment = 7;  // ancilla rotation layer of cycle 0
    for (int m = 0; m < (int)sc.circuit.moments.size(); ++m) {
        if (m == fdag_moment) {
            Instruction f;
            f.op = Instruction::Op::Fault;
            f.targets = {sc.ancilla_wires[0]};
            f.fx = {0};
            f.fz = {1};
            c.moments.push_back({f});
        }
        c.moments.push_back(sc.circuit.moments[m]);
    }
    auto res = pf_run(c);
    std::vector<int> expect(res.outcome_shifts.size(), 0);
    expect[0] = 1;  // A0, first cycle
    EXPECT_EQ(res.outcome_shifts, expect);
}

TEST(backends, pf_equals_sv_on_sampled_faults) {
    for (int q : {2, 3}) {
        Dim dim(q);
        auto sc = build_cycle(dim, true, 2);
        auto enc = build_encoder(dim);
        auto sites = noise_sites(sc, {NoiseModel::Kind::CircuitLevel, 0.01});
        int step = q == 2 ? 5 : 17;
        for (std::size_t k = 0; k < sites.size(); k += step) {
            const auto& site = sites[k];
            const int nw = site.kind == NoiseSite::Kind::Depol2 ? 2 : 1;
            PauliString fault(dim, nw);
            fault.xs[0] = 1;
            fault.zs[0] = q - 1;
            if (nw == 2) fault.zs[1] = 1;
            auto pf = pf_run_single_fault(sc, site, fault);

            Circuit c(dim, sc.circuit.n_qudits);
            c.moments.clear();
            for (const auto& m : enc.moments) c.moments.push_back(m);
            Instruction fi;
            fi.op = Instruction::Op::Fault;
            for (int i = 0; i < nw; ++i) {
                fi.targets.push_back(site.wires[i]);
                fi.fx.push_back(fault.xs[i]);
                fi.fz.push_back(fault.zs[i]);
            }
            for (int m = 0; m < (int)sc.circuit.moments.size(); ++m) {
                if (m == site.moment && site.before) c.moments.push_back({fi});
                c.moments.push_back(sc.circuit.moments[m]);
                if (m == site.moment && !site.before) c.moments.push_back({fi});
            }
            Rng rng(11);
            auto sv = sv_run(c, rng);
            EXPECT_EQ(sv.outcomes, pf.outcome_shifts) << "q=" << q << " site " << k;
        }
    }
}

TEST(backends, sv_rejects_unsampled_noise) {
    Circuit c = parse_circuit("DIM 3\nQUDITS 2\nDEPOL1(0.1) 0\n");
    Rng rng(0);
    EXPECT_THROW(sv_run(c, rng), std::invalid_argument);
    EXPECT_THROW(pf_run(c), std::invalid_argument);
}
