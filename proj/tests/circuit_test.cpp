#include "qec5/circuit.hpp"

#include <gtest/gtest.h>

#include "qec5/code5.hpp"
#include "qec5/rng.hpp"
#include "qec5/schedule.hpp"

using namespace qec5;

TEST(circuit, parse_minimal) {
    Circuit c = parse_circuit("DIM 3\nQUDITS 1\nF 0\n");
    EXPECT_EQ(c.q, 3);
    EXPECT_EQ(c.n_qudits, 1);
    ASSERT_EQ(c.moment_count(), 1u);
    ASSERT_EQ(c.moments[0].size(), 1u);
    EXPECT_EQ(c.moments[0][0].gate.kind, GateKind::F);
}

TEST(circuit, parse_errors) {
    EXPECT_THROW(parse_circuit("DIM 3\nQUDITS 2\nSUM 0 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("DIM 4\nQUDITS 2\nF 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("DIM 3\nQUDITS 2\nH 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("DIM 3\nQUDITS 2\nF 5\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("F 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("DIM 3\nQUDITS 2\nF 0\nF 0\n"), std::invalid_argument);
    EXPECT_NO_THROW(parse_circuit("DIM 3\nQUDITS 2\nF 0\nTICK\nF 0\n"));
}

TEST(circuit, parse_noise_and_fault) {
    Circuit c = parse_circuit(
        "DIM 3\nQUDITS 5\nDEPOL1(0.01) 0 1\nTICK\nDEPOL2(0.02) 0 1\nMFLIP(0.5) 2\nTICK\n"
        "FAULT 0 4 X1.Z2 X2\nIDLE 3\n");
    EXPECT_EQ(c.moment_count(), 3u);
    const auto& fault = c.moments[2][0];
    EXPECT_EQ(fault.op, Instruction::Op::Fault);
    EXPECT_EQ(fault.fx, (std::vector<int>{1, 2}));
    EXPECT_EQ(fault.fz, (std::vector<int>{2, 0}));
}

TEST(circuit, round_trip_canonical) {
    // parse(emit(c)) == c on builder output; emit(parse(s)) idempotent.
    for (int q : {2, 3, 5}) {
        Dim dim(q);
        for (const Circuit& c :
             {build_encoder(dim), build_cycle(dim, true, 2).circuit,
              build_cycle_sequential_unscheduled(dim)}) {
            std::string text = emit_circuit(c);
            Circuit back = parse_circuit(text);
            EXPECT_EQ(emit_circuit(back), text);
            EXPECT_EQ(back.moment_count(), c.moment_count());
            EXPECT_EQ(back.instruction_count(), c.instruction_count());
        }
    }
}

TEST(circuit, emitted_flag_cycle_round_trips_to_equal_circuit) {
    Dim dim(3);
    auto sc = build_cycle(dim, true, 1);
    Circuit back = parse_circuit(emit_circuit(sc.circuit));
    // Re-emit equality implies structural equality modulo in-moment order.
    EXPECT_EQ(emit_circuit(back), emit_circuit(sc.circuit));
}

TEST(schedule, empty_circuit) {
    Circuit c(Dim(3), 4);
    auto res = schedule(c, {0, 1, 2, 3});
    EXPECT_EQ(res.schedule.steps, 0);
}

TEST(schedule, flag_cycle_meets_published_bounds) {
    for (int q : {2, 3, 5}) {
        auto sc = build_cycle(Dim(q), true, 1);
        EXPECT_EQ(sc.cycle_schedule.steps, 10);
        for (int w : sc.data_wires) EXPECT_LE(sc.cycle_schedule.idle_counts[w], 4);
    }
}

TEST(schedule, unoptimized_layout_is_strictly_deeper) {
    for (int q : {2, 3}) {
        Dim dim(q);
        auto optimized = build_cycle(dim, false, 1);
        auto figure = schedule(build_cycle_sequential_unscheduled(dim), {0, 1, 2, 3, 4});
        EXPECT_GT(figure.schedule.steps, optimized.cycle_schedule.steps);
    }
}

TEST(schedule, preserves_per_wire_order) {
    // Random circuits: greedy packing never reorders instructions that share
    // a wire.
    Rng rng(3);
    Dim dim(3);
    for (int trial = 0; trial < 50; ++trial) {
        Circuit c(dim, 6);
        c.moments.clear();
        std::vector<std::vector<int>> wire_seq_in(6);
        int tag = 0;
        for (int m = 0; m < 8; ++m) {
            c.begin_moment();
            for (int attempt = 0; attempt < 3; ++attempt) {
                Instruction instr;
                instr.op = Instruction::Op::Gate;
                if (rng.uniform_int(2) == 0) {
                    instr.gate = {GateKind::F, 1};
                    instr.targets = {rng.uniform_int(6)};
                } else {
                    int a = rng.uniform_int(6), b = rng.uniform_int(6);
                    if (a == b) continue;
                    instr.gate = {GateKind::SUM, 1};
                    instr.targets = {a, b};
                }
                try {
                    instr.param = tag;  // abuse param as an id tag
                    c.append(instr);
                    for (int w : instr.targets) wire_seq_in[w].push_back(tag);
                    ++tag;
                } catch (const std::invalid_argument&) {
                }
            }
        }
        auto res = schedule(c, {});
        std::vector<std::vector<int>> wire_seq_out(6);
        for (const auto& m : res.circuit.moments)
            for (const auto& instr : m)
                for (int w : instr.targets)
                    wire_seq_out[w].push_back(static_cast<int>(instr.param));
        EXPECT_EQ(wire_seq_in, wire_seq_out);
    }
}

TEST(schedule, idle_markers_only_on_gate_moments) {
    auto sc = build_cycle(Dim(2), true, 1);
    for (const auto& m : sc.circuit.moments) {
        bool has_gate = false, has_idle = false;
        for (const auto& i : m) {
            has_gate |= i.op == Instruction::Op::Gate;
            has_idle |= i.op == Instruction::Op::Idle;
        }
        if (has_idle) EXPECT_TRUE(has_gate);
    }
}

TEST(circuit, dot_export_smoke) {
    auto c = build_encoder(Dim(2));
    std::string dot = circuit_dot(c);
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("F_DAG"), std::string::npos);
}
