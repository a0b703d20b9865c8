#include "qec5/gates.hpp"

#include <stdexcept>

namespace qec5 {

int gate_arity(GateKind kind) {
    return (kind == GateKind::SUM || kind == GateKind::SUMinv) ? 2 : 1;
}

std::string gate_mnemonic(const Gate& g) {
    switch (g.kind) {
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::S: return "S";
        case GateKind::F: return "F";
        case GateKind::SUM: return "SUM";
        case GateKind::M: return "M";
        case GateKind::Finv: return "F_DAG";
        case GateKind::Sinv: return "S_DAG";
        case GateKind::SUMinv: return "SUM_DAG";
        case GateKind::Minv: return "M_DAG";
        case GateKind::Xpow: return "X^" + std::to_string(g.power);
        case GateKind::Zpow: return "Z^" + std::to_string(g.power);
    }
    return "?";
}

bool parse_gate_mnemonic(const std::string& text, Gate& out) {
    if (text == "X") { out = {GateKind::X, 1}; return true; }
    if (text == "Z") { out = {GateKind::Z, 1}; return true; }
    if (text == "S") { out = {GateKind::S, 1}; return true; }
    if (text == "F") { out = {GateKind::F, 1}; return true; }
    if (text == "SUM") { out = {GateKind::SUM, 1}; return true; }
    if (text == "M") { out = {GateKind::M, 1}; return true; }
    if (text == "F_DAG") { out = {GateKind::Finv, 1}; return true; }
    if (text == "S_DAG") { out = {GateKind::Sinv, 1}; return true; }
    if (text == "SUM_DAG") { out = {GateKind::SUMinv, 1}; return true; }
    if (text == "M_DAG") { out = {GateKind::Minv, 1}; return true; }
    if (text.rfind("X^", 0) == 0) { out = {GateKind::Xpow, std::stoi(text.substr(2))}; return true; }
    if (text.rfind("Z^", 0) == 0) { out = {GateKind::Zpow, std::stoi(text.substr(2))}; return true; }
    return false;
}

namespace {

// Phase exponent of S|n> in half-steps of w. Follows the parity-branched
// definition Z^e P with e = (1+q)/2 for odd q and 1 + q/2 for even q;
// both branches collapse to the closed forms below.
long long s_gate_half_phase(int q, int n) {
    if (q % 2 == 0) return static_cast<long long>(n) * n;
    return static_cast<long long>(n) * (n - 1);
}

}  // namespace

CMat gate_unitary(const Gate& g, const Dim& dim) {
    const int q = dim.q;
    auto w = [&](long long k) { return omega_pow_half(q, 2 * k); };
    switch (g.kind) {
        case GateKind::X:
        case GateKind::Xpow: {
            int k = (g.kind == GateKind::X) ? 1 : g.power;
            CMat m(q);
            for (int n = 0; n < q; ++n) m(mod_q(n + k, q), n) = 1;
            return m;
        }
        case GateKind::Z:
        case GateKind::Zpow: {
            int k = (g.kind == GateKind::Z) ? 1 : g.power;
            CMat m(q);
            for (int n = 0; n < q; ++n) m(n, n) = w(static_cast<long long>(k) * n);
            return m;
        }
        case GateKind::S: {
            CMat m(q);
            for (int n = 0; n < q; ++n) m(n, n) = omega_pow_half(q, s_gate_half_phase(q, n));
            return m;
        }
        case GateKind::Sinv:
            return gate_unitary({GateKind::S, 1}, dim).dagger();
        case GateKind::F: {
            CMat m(q);
            double norm = 1.0 / std::sqrt(static_cast<double>(q));
            for (int n = 0; n < q; ++n)
                for (int mm = 0; mm < q; ++mm)
                    m(mm, n) = norm * w(static_cast<long long>(n) * mm);
            return m;
        }
        case GateKind::Finv:
            return gate_unitary({GateKind::F, 1}, dim).dagger();
        case GateKind::M:
        case GateKind::Minv: {
            CMat m(q);
            for (int n = 0; n < q; ++n) m(mod_q(static_cast<long long>(n) * (q - 1), q), n) = 1;
            return m;
        }
        case GateKind::SUM: {
            CMat m(q * q);
            for (int n = 0; n < q; ++n)
                for (int mm = 0; mm < q; ++mm)
                    m(n * q + mod_q(mm + n, q), n * q + mm) = 1;
            return m;
        }
        case GateKind::SUMinv:
            return gate_unitary({GateKind::SUM, 1}, dim).dagger();
    }
    throw std::logic_error("unreachable gate kind");
}

CMat pauli_unitary(const PauliString& p) {
    const int q = p.q;
    std::size_t dim_total = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        dim_total *= q;
        if (dim_total > (1u << 20)) throw std::length_error("pauli_unitary: operator too large");
    }
    CMat m = CMat::eye(1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CMat site(q);
        for (int n = 0; n < q; ++n)
            site(mod_q(n + p.xs[i], q), n) = omega_pow_half(q, 2LL * p.zs[i] * n);
        m = CMat::kron(m, site);
    }
    return omega_pow_half(q, p.phase2) * m;
}

namespace detail {

// Per-site symplectic action with the exact half-phase increment.
void conjugate_site(GateKind kind, int power, int q, int& x, int& z, long long& half) {
    switch (kind) {
        case GateKind::X:
            half -= 2LL * z;
            break;
        case GateKind::Xpow:
            half -= 2LL * z * power;
            break;
        case GateKind::Z:
            half += 2LL * x;
            break;
        case GateKind::Zpow:
            half += 2LL * x * power;
            break;
        case GateKind::F: {
            // F (X^x Z^z) F^dag = Z^x X^-z = w^-xz X^-z Z^x
            half -= 2LL * x * z;
            int nx = mod_q(-z, q), nz = mod_q(x, q);
            x = nx; z = nz;
            break;
        }
        case GateKind::Finv: {
            half -= 2LL * x * z;
            int nx = mod_q(z, q), nz = mod_q(-x, q);
            x = nx; z = nz;
            break;
        }
        case GateKind::M:
        case GateKind::Minv:
            x = mod_q(-x, q);
            z = mod_q(-z, q);
            break;
        case GateKind::S: {
            if (q % 2 == 0)
                half += static_cast<long long>(x) * x;
            else
                half += static_cast<long long>(x) * (x - 1);
            z = mod_q(z + x, q);
            break;
        }
        case GateKind::Sinv: {
            if (q % 2 == 0)
                half -= static_cast<long long>(x) * x;
            else
                half -= static_cast<long long>(x) * (x - 1);
            z = mod_q(z - x, q);
            break;
        }
        default:
            throw std::logic_error("conjugate_site: not a single-site gate");
    }
}

}  // namespace detail

PauliString conjugate(const Gate& g, const std::vector<std::size_t>& targets,
                      const PauliString& p) {
    const int arity = gate_arity(g.kind);
    if (static_cast<int>(targets.size()) != arity)
        throw std::invalid_argument("conjugate: arity mismatch for " + gate_mnemonic(g));
    for (auto t : targets)
        if (t >= p.size()) throw std::out_of_range("conjugate: target out of range");

    PauliString out = p;
    long long half = p.phase2;
    if (arity == 1) {
        detail::conjugate_site(g.kind, g.power, p.q, out.xs[targets[0]], out.zs[targets[0]], half);
    } else {
        std::size_t c = targets[0], t = targets[1];
        if (c == t) throw std::invalid_argument("conjugate: SUM control equals target");
        int xc = out.xs[c], zc = out.zs[c], xt = out.xs[t], zt = out.zs[t];
        if (g.kind == GateKind::SUM) {
            out.zs[c] = mod_q(zc - zt, p.q);
            out.xs[t] = mod_q(xt + xc, p.q);
        } else {  // SUMinv
            out.zs[c] = mod_q(zc + zt, p.q);
            out.xs[t] = mod_q(xt - xc, p.q);
        }
    }
    out.phase2 = mod_q(half, 2 * p.q);
    return out;
}

GateAction GateAction::of(const Gate& g, const Dim& dim) {
    GateAction act{dim, gate_arity(g.kind), {}, {}};
    std::vector<std::size_t> targets(act.arity);
    for (int i = 0; i < act.arity; ++i) targets[i] = i;
    for (int i = 0; i < act.arity; ++i) {
        act.x_images.push_back(conjugate(g, targets, PauliString::single(dim, act.arity, i, 1, 0)));
        act.z_images.push_back(conjugate(g, targets, PauliString::single(dim, act.arity, i, 0, 1)));
    }
    return act;
}

bool action_preserves_commutation(const GateAction& action) {
    std::vector<PauliString> gens, images;
    for (int i = 0; i < action.arity; ++i) {
        gens.push_back(PauliString::single(action.dim, action.arity, i, 1, 0));
        gens.push_back(PauliString::single(action.dim, action.arity, i, 0, 1));
        images.push_back(action.x_images[i]);
        images.push_back(action.z_images[i]);
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (commutation_phase(gens[i], gens[j]) != commutation_phase(images[i], images[j]))
                return false;
    return true;
}

bool verify_symplectic(const GateAction& action, const Gate& g) {
    if (!action_preserves_commutation(action)) return false;
    if (action.dim.q > 7) return true;
    CMat u = gate_unitary(g, action.dim);
    CMat ud = u.dagger();
    for (int i = 0; i < action.arity; ++i) {
        for (int which = 0; which < 2; ++which) {
            PauliString gen = which == 0 ? PauliString::single(action.dim, action.arity, i, 1, 0)
                                         : PauliString::single(action.dim, action.arity, i, 0, 1);
            const PauliString& img = which == 0 ? action.x_images[i] : action.z_images[i];
            CMat lhs = u * pauli_unitary(gen) * ud;
            if (lhs.max_abs_diff(pauli_unitary(img)) > 1e-10) return false;
        }
    }
    return true;
}

}  // namespace qec5
