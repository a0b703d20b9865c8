#include "qec5/pauli.hpp"

#include <sstream>
#include <stdexcept>

namespace qec5 {

PauliString PauliString::single(const Dim& dim, std::size_t n, std::size_t site, int r, int s,
                                int half_phase) {
    PauliString p(dim, n);
    if (site >= n) throw std::out_of_range("pauli site out of range");
    p.xs[site] = mod_q(r, dim.q);
    p.zs[site] = mod_q(s, dim.q);
    p.phase2 = mod_q(half_phase, 2 * dim.q);
    return p;
}

bool PauliString::is_identity() const {
    return phase2 == 0 && is_phase_only();
}

bool PauliString::is_phase_only() const {
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] != 0 || zs[i] != 0) return false;
    return true;
}

void PauliString::reduce() {
    phase2 = mod_q(phase2, 2 * q);
    for (auto& v : xs) v = mod_q(v, q);
    for (auto& v : zs) v = mod_q(v, q);
}

PauliString PauliString::adjoint() const {
    // (w^(h/2) X^r Z^s)^dag = w^(-h/2) Z^-s X^-r = w^(-h/2) w^(-rs) X^-r Z^-s.
    PauliString out(Dim(q), size());
    long long h = -phase2;
    for (std::size_t i = 0; i < size(); ++i) {
        out.xs[i] = mod_q(-xs[i], q);
        out.zs[i] = mod_q(-zs[i], q);
        h -= 2LL * xs[i] * zs[i];
    }
    out.phase2 = mod_q(h, 2 * q);
    return out;
}

PauliString PauliString::without_phase() const {
    PauliString out = *this;
    out.phase2 = 0;
    return out;
}

bool PauliString::same_powers(const PauliString& other) const {
    return q == other.q && xs == other.xs && zs == other.zs;
}

int PauliString::weight() const {
    int w = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] != 0 || zs[i] != 0) ++w;
    return w;
}

SymplecticVector symplectic(const PauliString& p) {
    SymplecticVector v;
    v.reserve(2 * p.size());
    v.insert(v.end(), p.xs.begin(), p.xs.end());
    v.insert(v.end(), p.zs.begin(), p.zs.end());
    return v;
}

PauliString pauli_mul(const PauliString& p1, const PauliString& p2) {
    if (p1.q != p2.q) throw std::invalid_argument("pauli_mul: dimension mismatch");
    if (p1.size() != p2.size()) throw std::invalid_argument("pauli_mul: length mismatch");
    PauliString out(Dim(p1.q), p1.size());
    long long h = p1.phase2 + p2.phase2;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        // X^r Z^s . X^t Z^u = w^(s t) X^(r+t) Z^(s+u)
        h += 2LL * p1.zs[i] * p2.xs[i];
        out.xs[i] = mod_q(p1.xs[i] + p2.xs[i], p1.q);
        out.zs[i] = mod_q(p1.zs[i] + p2.zs[i], p1.q);
    }
    out.phase2 = mod_q(h, 2 * p1.q);
    return out;
}

int commutation_phase(const PauliString& p1, const PauliString& p2) {
    if (p1.q != p2.q) throw std::invalid_argument("commutation_phase: dimension mismatch");
    if (p1.size() != p2.size()) throw std::invalid_argument("commutation_phase: length mismatch");
    long long c = 0;
    for (std::size_t i = 0; i < p1.size(); ++i)
        c += static_cast<long long>(p1.zs[i]) * p2.xs[i] -
             static_cast<long long>(p1.xs[i]) * p2.zs[i];
    return mod_q(c, p1.q);
}

std::vector<int> syndrome_of(const PauliString& error, const std::vector<PauliString>& checks) {
    std::vector<int> s;
    s.reserve(checks.size());
    for (const auto& c : checks) s.push_back(commutation_phase(c, error));
    return s;
}

std::string PauliString::str() const {
    std::ostringstream out;
    if (phase2 != 0) {
        if (phase2 % 2 == 0)
            out << "w^" << phase2 / 2 << " ";
        else
            out << "w2^" << phase2 << " ";
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) out << " ";
        if (xs[i] == 0 && zs[i] == 0) {
            out << "I";
            continue;
        }
        bool dot = false;
        if (xs[i] != 0) {
            out << "X" << xs[i];
            dot = true;
        }
        if (zs[i] != 0) {
            if (dot) out << ".";
            out << "Z" << zs[i];
        }
    }
    return out.str();
}

PauliString PauliString::parse(const std::string& text, const Dim& dim) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    if (tokens.empty()) throw std::invalid_argument("empty pauli string");

    int phase2 = 0;
    std::size_t start = 0;
    if (tokens[0].rfind("w^", 0) == 0) {
        phase2 = 2 * std::stoi(tokens[0].substr(2));
        start = 1;
    } else if (tokens[0].rfind("w2^", 0) == 0) {
        phase2 = std::stoi(tokens[0].substr(3));
        start = 1;
    }

    PauliString p(dim, tokens.size() - start);
    p.phase2 = mod_q(phase2, 2 * dim.q);
    for (std::size_t i = start; i < tokens.size(); ++i) {
        const std::string& site = tokens[i];
        std::size_t idx = i - start;
        if (site == "I") continue;
        std::size_t pos = 0;
        while (pos < site.size()) {
            char axis = site[pos++];
            if (axis == '.') continue;
            if (axis != 'X' && axis != 'Z')
                throw std::invalid_argument("bad pauli site token: " + site);
            std::size_t end = pos;
            while (end < site.size() && (std::isdigit(site[end]) || site[end] == '-')) ++end;
            int power = 1;
            if (end > pos) power = std::stoi(site.substr(pos, end - pos));
            pos = end;
            if (axis == 'X')
                p.xs[idx] = mod_q(p.xs[idx] + power, dim.q);
            else
                p.zs[idx] = mod_q(p.zs[idx] + power, dim.q);
        }
    }
    return p;
}

}  // namespace qec5
