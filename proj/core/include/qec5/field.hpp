#pragma once

#include <stdexcept>
#include <string>

namespace qec5 {

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Qudit dimension. Only prime dimensions are admitted; everything downstream
// (inverses, row reduction, the error basis) relies on Z_q being a field.
struct Dim {
    int q;

    explicit Dim(int q_) : q(q_) {
        if (!is_prime(q_))
            throw std::invalid_argument("dimension must be prime, got " + std::to_string(q_));
    }

    bool operator==(const Dim&) const = default;
};

// Canonical representative in 0..q-1.
inline int mod_q(long long x, int q) {
    long long r = x % q;
    return static_cast<int>(r < 0 ? r + q : r);
}

// Multiplicative inverse in Z_q. x must be nonzero mod q.
inline int mod_inverse(int x, const Dim& dim) {
    int q = dim.q;
    int a = mod_q(x, q);
    if (a == 0)
        throw std::domain_error("0 has no multiplicative inverse mod " + std::to_string(q));
    // Fermat: a^(q-2) mod q.
    long long result = 1, base = a;
    int e = q - 2;
    while (e > 0) {
        if (e & 1) result = (result * base) % q;
        base = (base * base) % q;
        e >>= 1;
    }
    return static_cast<int>(result);
}

}  // namespace qec5
