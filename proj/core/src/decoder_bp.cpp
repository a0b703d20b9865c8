#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qec5/decoder.hpp"

namespace qec5 {

BPGraph build_bp_graph(const CheckMatrix& H, int cycles) {
    const int q = H.dim.q;
    BPGraph bpg;
    bpg.q = q;
    bpg.cycles = cycles;
    bpg.checks.assign(static_cast<std::size_t>(cycles) * 4, {});

    auto add_var = [&](BPGraph::Var v, const std::vector<std::pair<int, int>>& touches) {
        int vi = static_cast<int>(bpg.vars.size());
        bpg.vars.push_back(v);
        bpg.var_checks.emplace_back();
        for (auto [check, coeff] : touches) {
            bpg.checks[check].push_back({vi, coeff});
            bpg.var_checks[vi].push_back({check, coeff});
        }
    };

    const Dim dim = H.dim;
    for (int c = 0; c < cycles; ++c)
        for (int d = 0; d < 5; ++d)
            for (int dir = 0; dir < q + 1; ++dir) {
                auto [dx, dz] = powers_of(dir, 1, dim);
                std::vector<std::pair<int, int>> touches;
                for (int i = 0; i < 4; ++i) {
                    int coeff = mod_q(static_cast<long long>(H.zpart[i][d]) * dx -
                                          static_cast<long long>(H.xpart[i][d]) * dz,
                                      q);
                    if (coeff != 0) touches.push_back({c * 4 + i, coeff});
                }
                add_var({BPGraph::Var::Kind::Space, c, d, dir}, touches);
            }
    for (int c = 0; c + 1 < cycles; ++c)
        for (int a = 0; a < 4; ++a)
            add_var({BPGraph::Var::Kind::Meas, c, a, 0},
                    {{c * 4 + a, 1}, {(c + 1) * 4 + a, mod_q(-1, q)}});
    return bpg;
}

BPGraph build_bp_graph(const CheckMatrix& H, int cycles, const MechanismPriors& priors) {
    BPGraph bpg = build_bp_graph(H, cycles);
    bpg.first_composite = static_cast<int>(bpg.vars.size());
    for (std::size_t ci = 0; ci < priors.composites.size(); ++ci) {
        const auto& comp = priors.composites[ci];
        int vi = static_cast<int>(bpg.vars.size());
        bpg.vars.push_back({BPGraph::Var::Kind::Composite, 0, static_cast<int>(ci), 0});
        bpg.var_checks.emplace_back();
        for (const auto& ev : comp.signature) {
            int check = ev.cycle * 4 + ev.anc;
            bpg.checks[check].push_back({vi, mod_q(ev.value, bpg.q)});
            bpg.var_checks[vi].push_back({check, mod_q(ev.value, bpg.q)});
        }
    }
    return bpg;
}

namespace {

void normalize(std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    if (s <= 0) {
        std::fill(v.begin(), v.end(), 1.0 / v.size());
        return;
    }
    for (double& x : v) x /= s;
}

}  // namespace

BPState decode_bp(const BPGraph& bpg, const std::vector<DetectionEvent>& events,
                  const MechanismPriors& priors, int max_iters, double damping) {
    const int q = bpg.q;
    const Dim dim(q);

    std::vector<int> observed(bpg.checks.size(), 0);
    for (const auto& ev : events) observed[ev.cycle * 4 + ev.anc] = mod_q(ev.value, q);

    auto prior_of = [&](int vi) {
        const auto& v = bpg.vars[vi];
        std::vector<double> p(q);
        for (int k = 0; k < q; ++k) {
            switch (v.kind) {
                case BPGraph::Var::Kind::Space:
                    p[k] = priors.space_at(v.cycle, v.site, v.dir, k);
                    break;
                case BPGraph::Var::Kind::Meas:
                    p[k] = priors.meas_at(v.cycle, v.site, k);
                    break;
                case BPGraph::Var::Kind::Composite:
                    p[k] = priors.composites[v.site].prob[k];
                    break;
            }
        }
        normalize(p);
        return p;
    };

    // Edge-indexed messages: one slot per (check, neighbor position).
    std::vector<std::vector<std::vector<double>>> var_to_check(bpg.checks.size());
    std::vector<std::vector<std::vector<double>>> check_to_var(bpg.checks.size());
    for (std::size_t ci = 0; ci < bpg.checks.size(); ++ci) {
        var_to_check[ci].assign(bpg.checks[ci].size(), std::vector<double>(q, 1.0 / q));
        check_to_var[ci].assign(bpg.checks[ci].size(), std::vector<double>(q, 1.0 / q));
        for (std::size_t s = 0; s < bpg.checks[ci].size(); ++s)
            var_to_check[ci][s] = prior_of(bpg.checks[ci][s].first);
    }

    BPState state;
    state.posteriors.assign(bpg.vars.size(), std::vector<double>(q, 0.0));
    state.assignment.assign(bpg.vars.size(), 0);

    auto assignment_satisfies = [&]() {
        for (std::size_t ci = 0; ci < bpg.checks.size(); ++ci) {
            long long sum = 0;
            for (auto [vi, coeff] : bpg.checks[ci])
                sum += static_cast<long long>(coeff) * state.assignment[vi];
            if (mod_q(sum, q) != observed[ci]) return false;
        }
        return true;
    };

    std::vector<double> conv_buf(q), left_acc(q), tmp(q);
    for (int iter = 1; iter <= max_iters; ++iter) {
        state.iterations = iter;
        // Check-node update via prefix/suffix cyclic convolutions in the
        // contribution domain j = coeff * k mod q.
        for (std::size_t ci = 0; ci < bpg.checks.size(); ++ci) {
            const auto& nbrs = bpg.checks[ci];
            const std::size_t deg = nbrs.size();
            std::vector<std::vector<double>> contrib(deg, std::vector<double>(q, 0.0));
            for (std::size_t s = 0; s < deg; ++s)
                for (int k = 0; k < q; ++k)
                    contrib[s][mod_q(static_cast<long long>(nbrs[s].second) * k, q)] +=
                        var_to_check[ci][s][k];
            std::vector<std::vector<double>> prefix(deg + 1, std::vector<double>(q, 0.0));
            std::vector<std::vector<double>> suffix(deg + 1, std::vector<double>(q, 0.0));
            prefix[0][0] = 1.0;
            suffix[deg][0] = 1.0;
            auto cyc_conv = [&](const std::vector<double>& a, const std::vector<double>& b,
                                std::vector<double>& out) {
                std::fill(out.begin(), out.end(), 0.0);
                for (int i = 0; i < q; ++i) {
                    if (a[i] == 0) continue;
                    for (int j = 0; j < q; ++j) out[(i + j) % q] += a[i] * b[j];
                }
            };
            for (std::size_t s = 0; s < deg; ++s) {
                cyc_conv(prefix[s], contrib[s], conv_buf);
                prefix[s + 1] = conv_buf;
            }
            for (std::size_t s = deg; s-- > 0;) {
                cyc_conv(suffix[s + 1], contrib[s], conv_buf);
                suffix[s] = conv_buf;
            }
            for (std::size_t s = 0; s < deg; ++s) {
                cyc_conv(prefix[s], suffix[s + 1], conv_buf);
                std::vector<double> msg(q);
                for (int k = 0; k < q; ++k) {
                    int j = mod_q(observed[ci] - static_cast<long long>(nbrs[s].second) * k, q);
                    msg[k] = conv_buf[j];
                }
                normalize(msg);
                for (int k = 0; k < q; ++k)
                    check_to_var[ci][s][k] =
                        damping * check_to_var[ci][s][k] + (1.0 - damping) * msg[k];
                normalize(check_to_var[ci][s]);
            }
        }
        // Variable updates and posteriors.
        for (std::size_t vi = 0; vi < bpg.vars.size(); ++vi) {
            auto prior = prior_of(static_cast<int>(vi));
            auto& post = state.posteriors[vi];
            post = prior;
            for (auto [ci, coeff] : bpg.var_checks[vi]) {
                std::size_t slot = 0;
                while (bpg.checks[ci][slot].first != static_cast<int>(vi)) ++slot;
                for (int k = 0; k < q; ++k) post[k] *= check_to_var[ci][slot][k];
            }
            normalize(post);
            for (auto [ci, coeff] : bpg.var_checks[vi]) {
                std::size_t slot = 0;
                while (bpg.checks[ci][slot].first != static_cast<int>(vi)) ++slot;
                std::vector<double> msg = prior;
                for (auto [cj, cf] : bpg.var_checks[vi]) {
                    if (cj == ci) continue;
                    std::size_t sj = 0;
                    while (bpg.checks[cj][sj].first != static_cast<int>(vi)) ++sj;
                    for (int k = 0; k < q; ++k) msg[k] *= check_to_var[cj][sj][k];
                }
                normalize(msg);
                for (int k = 0; k < q; ++k)
                    var_to_check[ci][slot][k] =
                        damping * var_to_check[ci][slot][k] + (1.0 - damping) * msg[k];
                normalize(var_to_check[ci][slot]);
            }
            // Argmax with ties resolved toward the lowest power.
            int arg = 0;
            for (int k = 1; k < q; ++k)
                if (post[k] > post[arg] + 1e-12) arg = k;
            state.assignment[vi] = arg;
        }
        if (assignment_satisfies()) {
            state.converged = true;
            break;
        }
    }

    PauliString inferred(dim, 5);
    for (std::size_t vi = 0; vi < bpg.vars.size(); ++vi) {
        const int k = state.assignment[vi];
        if (k == 0) continue;
        const auto& v = bpg.vars[vi];
        if (v.kind == BPGraph::Var::Kind::Space) {
            auto [dx, dz] = powers_of(v.dir, k, Dim(q));
            inferred = pauli_mul(inferred, PauliString::single(dim, 5, v.site, dx, dz));
        } else if (v.kind == BPGraph::Var::Kind::Composite) {
            const auto& comp = priors.composites[v.site];
            PauliString scaled(dim, 5);
            for (int i = 0; i < 5; ++i) {
                scaled.xs[i] = mod_q(static_cast<long long>(comp.residual.xs[i]) * k, q);
                scaled.zs[i] = mod_q(static_cast<long long>(comp.residual.zs[i]) * k, q);
            }
            inferred = pauli_mul(inferred, scaled);
        }
    }
    state.correction = inferred.adjoint();
    state.correction.phase2 = 0;
    return state;
}

PauliString decode_bm(const DetectorGraph& g, const BPGraph& bpg,
                      const std::vector<DetectionEvent>& events, const MechanismPriors& priors,
                      Rng* rng, int max_iters, double damping) {
    BPState bp = decode_bp(bpg, events, priors, max_iters, damping);
    if (bp.converged) return bp.correction;

    // Reweight the matching graph with the BP posteriors.
    DetectorGraph rg = g;
    std::vector<std::vector<int>> var_lookup(
        static_cast<std::size_t>(bpg.cycles) * 5, std::vector<int>(2, -1));
    std::vector<int> meas_lookup(static_cast<std::size_t>(bpg.cycles) * 4, -1);
    for (std::size_t vi = 0; vi < bpg.vars.size(); ++vi) {
        const auto& v = bpg.vars[vi];
        if (v.kind == BPGraph::Var::Kind::Space && v.dir <= 1)
            var_lookup[v.cycle * 5 + v.site][v.dir] = static_cast<int>(vi);
        if (v.kind == BPGraph::Var::Kind::Meas) meas_lookup[v.cycle * 4 + v.site] = static_cast<int>(vi);
    }
    constexpr double kFloor = 1e-15;
    for (auto& e : rg.edges) {
        int vi = -1;
        switch (e.kind) {
            case GraphEdge::Kind::SpaceX: vi = var_lookup[e.cycle * 5 + e.site][0]; break;
            case GraphEdge::Kind::SpaceZ: vi = var_lookup[e.cycle * 5 + e.site][1]; break;
            case GraphEdge::Kind::Meas: vi = meas_lookup[e.cycle * 4 + e.site]; break;
            case GraphEdge::Kind::Composite:
                if (bpg.first_composite >= 0) vi = bpg.first_composite + e.site;
                break;
        }
        if (vi < 0) continue;
        e.weight = -std::log(std::max(bp.posteriors[vi][e.power], kFloor));
    }
    return decode_mwpm(rg, events, rng);
}

bool check_success(const PauliString& residual, const CheckMatrix& H) {
    const int q = H.dim.q;
    auto rows = H.stabilizers();
    for (const auto& r : rows)
        if (commutation_phase(r, residual) != 0) return false;

    // Row-space membership of the symplectic vector over Z_q.
    std::vector<std::vector<int>> mat;
    for (const auto& r : rows) mat.push_back(symplectic(r));
    std::vector<int> target = symplectic(residual);
    std::size_t pivot_col = 0, row = 0;
    for (; row < mat.size() && pivot_col < target.size(); ++pivot_col) {
        std::size_t sel = row;
        while (sel < mat.size() && mat[sel][pivot_col] == 0) ++sel;
        if (sel == mat.size()) continue;
        std::swap(mat[row], mat[sel]);
        int inv = mod_inverse(mat[row][pivot_col], H.dim);
        for (auto& x : mat[row]) x = mod_q(static_cast<long long>(x) * inv, q);
        for (std::size_t r2 = 0; r2 < mat.size(); ++r2) {
            if (r2 == row || mat[r2][pivot_col] == 0) continue;
            int f = mat[r2][pivot_col];
            for (std::size_t cc = 0; cc < target.size(); ++cc)
                mat[r2][cc] = mod_q(mat[r2][cc] - static_cast<long long>(f) * mat[row][cc], q);
        }
        if (target[pivot_col] != 0) {
            int f = target[pivot_col];
            for (std::size_t cc = 0; cc < target.size(); ++cc)
                target[cc] = mod_q(target[cc] - static_cast<long long>(f) * mat[row][cc], q);
        }
        ++row;
    }
    for (int x : target)
        if (x != 0) return false;
    return true;
}

}  // namespace qec5
