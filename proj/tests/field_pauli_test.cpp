#include "qec5/pauli.hpp"

#include <gtest/gtest.h>

#include "qec5/cmatrix.hpp"
#include "qec5/code5.hpp"
#include "qec5/gates.hpp"
#include "qec5/rng.hpp"

using namespace qec5;

TEST(field, primality_guard) {
    EXPECT_NO_THROW(Dim(2));
    EXPECT_NO_THROW(Dim(7));
    EXPECT_THROW(Dim(1), std::invalid_argument);
    EXPECT_THROW(Dim(4), std::invalid_argument);
    EXPECT_THROW(Dim(9), std::invalid_argument);
}

TEST(field, mod_inverse_examples) {
    EXPECT_EQ(mod_inverse(1, Dim(5)), 1);
    EXPECT_EQ(mod_inverse(2, Dim(5)), 3);
    // Oracle: exhaustive search over Z_7.
    int expected = -1;
    for (int y = 1; y < 7; ++y)
        if (4 * y % 7 == 1) expected = y;
    EXPECT_EQ(expected, 2);
    EXPECT_EQ(mod_inverse(4, Dim(7)), expected);
    EXPECT_THROW(mod_inverse(0, Dim(5)), std::domain_error);
    // Inverse property for every element and tested prime.
    for (int q : {2, 3, 5, 7, 11})
        for (int x = 1; x < q; ++x) EXPECT_EQ(mod_q(x * mod_inverse(x, Dim(q)), q), 1);
}

TEST(pauli, mul_normal_order_q2) {
    Dim dim(2);
    auto X = PauliString::single(dim, 1, 0, 1, 0);
    auto Z = PauliString::single(dim, 1, 0, 0, 1);
    auto xz = pauli_mul(X, Z);
    EXPECT_EQ(xz.phase2, 0);  // already normal-ordered
    EXPECT_EQ(xz.xs[0], 1);
    EXPECT_EQ(xz.zs[0], 1);
    auto zx = pauli_mul(Z, X);
    EXPECT_EQ(zx.phase2, 2);  // w^1 = -1 at q=2
    EXPECT_EQ(zx.xs[0], 1);
    EXPECT_EQ(zx.zs[0], 1);
}

TEST(pauli, mul_matrix_oracle_q3) {
    Dim dim(3);
    auto a = PauliString::single(dim, 1, 0, 2, 2);
    auto b = PauliString::single(dim, 1, 0, 1, 1);
    auto prod = pauli_mul(a, b);
    EXPECT_TRUE(prod.is_phase_only());
    EXPECT_EQ(prod.phase2, 4);  // w^2 I
    CMat lhs = pauli_unitary(a) * pauli_unitary(b);
    EXPECT_LT(lhs.max_abs_diff(pauli_unitary(prod)), 1e-12);
}

TEST(pauli, mul_associative_random) {
    Rng rng(11);
    for (int q : {2, 3, 5, 7}) {
        Dim dim(q);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 1 + rng.uniform_int(5);
            auto rand_pauli = [&] {
                PauliString p(dim, n);
                for (int i = 0; i < n; ++i) {
                    p.xs[i] = rng.uniform_int(q);
                    p.zs[i] = rng.uniform_int(q);
                }
                p.phase2 = rng.uniform_int(2 * q);
                return p;
            };
            auto a = rand_pauli(), b = rand_pauli(), c = rand_pauli();
            EXPECT_EQ(pauli_mul(pauli_mul(a, b), c), pauli_mul(a, pauli_mul(b, c)));
            auto id = PauliString::identity(dim, n);
            EXPECT_EQ(pauli_mul(a, id), a);
            EXPECT_EQ(pauli_mul(id, a), a);
        }
    }
}

TEST(pauli, commutation_examples) {
    Dim d2(2), d3(3);
    auto x = PauliString::single(d2, 1, 0, 1, 0);
    auto z = PauliString::single(d2, 1, 0, 0, 1);
    EXPECT_EQ(commutation_phase(x, x), 0);
    EXPECT_EQ(commutation_phase(x, z), 1);
    auto p1 = PauliString::single(d3, 1, 0, 1, 2);
    auto p2 = PauliString::single(d3, 1, 0, 2, 0);
    EXPECT_EQ(commutation_phase(p1, p2), 1);  // 2*2 - 1*0 mod 3
}

TEST(pauli, commutation_antisymmetric_and_matrix_oracle) {
    Rng rng(5);
    for (int q : {2, 3, 5, 7}) {
        Dim dim(q);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 1 + rng.uniform_int(2);
            PauliString a(dim, n), b(dim, n);
            for (int i = 0; i < n; ++i) {
                a.xs[i] = rng.uniform_int(q);
                a.zs[i] = rng.uniform_int(q);
                b.xs[i] = rng.uniform_int(q);
                b.zs[i] = rng.uniform_int(q);
            }
            int c = commutation_phase(a, b);
            EXPECT_EQ(mod_q(c + commutation_phase(b, a), q), 0);
            // unitary(a) unitary(b) = w^c unitary(b) unitary(a)
            CMat lhs = pauli_unitary(a) * pauli_unitary(b);
            CMat rhs = omega_pow_half(q, 2 * c) * (pauli_unitary(b) * pauli_unitary(a));
            EXPECT_LT(lhs.max_abs_diff(rhs), 1e-10);
        }
    }
}

TEST(pauli, syndrome_of_examples) {
    for (int q : {2, 3}) {
        Dim dim(q);
        auto H = build_check_matrix(dim);
        auto rows = H.stabilizers();
        auto id = PauliString::identity(dim, 5);
        EXPECT_EQ(syndrome_of(id, rows), (std::vector<int>{0, 0, 0, 0}));
    }
    {
        // X on qudit 0 triggers exactly the stabilizers with Z support there.
        Dim dim(2);
        auto H = build_check_matrix(dim);
        auto syn = syndrome_of(PauliString::single(dim, 5, 0, 1, 0), H.stabilizers());
        for (int i = 0; i < 4; ++i) EXPECT_EQ(syn[i] != 0, H.zpart[i][0] != 0);
        EXPECT_EQ(std::count(syn.begin(), syn.end(), 0), 2);
    }
    {
        // Z^2 on qudit 2 has twice the syndrome of Z on qudit 2 (mod 3).
        Dim dim(3);
        auto H = build_check_matrix(dim);
        auto s1 = syndrome_of(PauliString::single(dim, 5, 2, 0, 1), H.stabilizers());
        auto s2 = syndrome_of(PauliString::single(dim, 5, 2, 0, 2), H.stabilizers());
        for (int i = 0; i < 4; ++i) EXPECT_EQ(s2[i], mod_q(2 * s1[i], 3));
    }
}

TEST(pauli, syndrome_linear_random) {
    Rng rng(17);
    for (int q : {3, 5}) {
        Dim dim(q);
        auto rows = build_check_matrix(dim).stabilizers();
        for (int trial = 0; trial < 100; ++trial) {
            PauliString a(dim, 5), b(dim, 5);
            for (int i = 0; i < 5; ++i) {
                a.xs[i] = rng.uniform_int(q);
                a.zs[i] = rng.uniform_int(q);
                b.xs[i] = rng.uniform_int(q);
                b.zs[i] = rng.uniform_int(q);
            }
            auto sa = syndrome_of(a, rows), sb = syndrome_of(b, rows);
            auto sab = syndrome_of(pauli_mul(a, b), rows);
            for (int i = 0; i < 4; ++i) EXPECT_EQ(sab[i], mod_q(sa[i] + sb[i], q));
        }
    }
}

TEST(pauli, adjoint_is_inverse) {
    Rng rng(3);
    for (int q : {2, 3, 5}) {
        Dim dim(q);
        for (int trial = 0; trial < 50; ++trial) {
            PauliString a(dim, 3);
            for (int i = 0; i < 3; ++i) {
                a.xs[i] = rng.uniform_int(q);
                a.zs[i] = rng.uniform_int(q);
            }
            a.phase2 = rng.uniform_int(2 * q);
            EXPECT_TRUE(pauli_mul(a, a.adjoint()).is_identity());
        }
    }
}

TEST(pauli, text_round_trip) {
    Dim dim(5);
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        PauliString p(dim, 1 + rng.uniform_int(6));
        for (std::size_t i = 0; i < p.size(); ++i) {
            p.xs[i] = rng.uniform_int(5);
            p.zs[i] = rng.uniform_int(5);
        }
        p.phase2 = 2 * rng.uniform_int(5);
        EXPECT_EQ(PauliString::parse(p.str(), dim), p);
    }
    auto p = PauliString::parse("w^2 X2.Z1 I X0.Z2 I I", Dim(5));
    EXPECT_EQ(p.phase2, 4);
    EXPECT_EQ(p.xs, (std::vector<int>{2, 0, 0, 0, 0}));
    EXPECT_EQ(p.zs, (std::vector<int>{1, 0, 2, 0, 0}));
}
