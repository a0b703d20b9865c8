#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qec5 {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major. Sized for gate unitaries and
// small matrix oracles, not for state evolution.
struct CMat {
    std::size_t n = 0;
    std::vector<cplx> a;

    CMat() = default;
    explicit CMat(std::size_t n_) : n(n_), a(n_ * n_, cplx(0, 0)) {}

    static CMat eye(std::size_t n) {
        CMat m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    cplx& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }

    CMat dagger() const {
        CMat m(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    friend CMat operator*(const CMat& x, const CMat& y) {
        if (x.n != y.n) throw std::invalid_argument("CMat: size mismatch");
        CMat m(x.n);
        for (std::size_t r = 0; r < x.n; ++r)
            for (std::size_t k = 0; k < x.n; ++k) {
                cplx v = x(r, k);
                if (v == cplx(0, 0)) continue;
                for (std::size_t c = 0; c < x.n; ++c) m(r, c) += v * y(k, c);
            }
        return m;
    }

    friend CMat operator*(cplx s, const CMat& y) {
        CMat m(y.n);
        for (std::size_t i = 0; i < y.a.size(); ++i) m.a[i] = s * y.a[i];
        return m;
    }

    static CMat kron(const CMat& x, const CMat& y) {
        CMat m(x.n * y.n);
        for (std::size_t r1 = 0; r1 < x.n; ++r1)
            for (std::size_t c1 = 0; c1 < x.n; ++c1)
                for (std::size_t r2 = 0; r2 < y.n; ++r2)
                    for (std::size_t c2 = 0; c2 < y.n; ++c2)
                        m(r1 * y.n + r2, c1 * y.n + c2) = x(r1, c1) * y(r2, c2);
        return m;
    }

    double max_abs_diff(const CMat& other) const {
        if (n != other.n) return 1e300;
        double d = 0;
        for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - other.a[i]));
        return d;
    }
};

inline cplx omega_pow_half(int q, long long half_steps) {
    // w^(half_steps/2) with w = exp(2 pi i / q)
    double angle = M_PI * static_cast<double>(half_steps) / static_cast<double>(q);
    return cplx(std::cos(angle), std::sin(angle));
}

}  // namespace qec5
