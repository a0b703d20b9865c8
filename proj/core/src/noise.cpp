#include "qec5/noise.hpp"

#include <algorithm>
#include <stdexcept>

#include "qec5/gates.hpp"

namespace qec5 {

PauliString sample_depol1(double p, const Dim& dim, Rng& rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("depol1: probability outside [0,1]");
    const int q = dim.q;
    PauliString out(dim, 1);
    const double per = p / (q * q);
    double u = rng.uniform();
    // q^2-1 nontrivial outcomes, each with probability per.
    long long idx = static_cast<long long>(u / per);
    if (u >= per * (q * q - 1)) return out;  // identity
    ++idx;                                   // skip (0,0)
    out.xs[0] = static_cast<int>(idx / q);
    out.zs[0] = static_cast<int>(idx % q);
    return out;
}

PauliString sample_depol2(double p2, const Dim& dim, Rng& rng) {
    if (p2 < 0.0 || p2 > 1.0) throw std::invalid_argument("depol2: probability outside [0,1]");
    const int q = dim.q;
    PauliString out(dim, 2);
    const long long q4 = static_cast<long long>(q) * q * q * q;
    const double per = p2 / static_cast<double>(q4);
    double u = rng.uniform();
    if (u >= per * static_cast<double>(q4 - 1)) return out;
    long long idx = static_cast<long long>(u / per) + 1;  // 1..q^4-1
    out.zs[1] = static_cast<int>(idx % q); idx /= q;
    out.xs[1] = static_cast<int>(idx % q); idx /= q;
    out.zs[0] = static_cast<int>(idx % q); idx /= q;
    out.xs[0] = static_cast<int>(idx % q);
    return out;
}

PauliString sample_measure_flip(double pm, const Dim& dim, Rng& rng, bool uniform) {
    if (pm < 0.0 || pm > 1.0) throw std::invalid_argument("mflip: probability outside [0,1]");
    PauliString out(dim, 1);
    if (rng.uniform() < pm) out.xs[0] = uniform ? 1 + rng.uniform_int(dim.q - 1) : 1;
    return out;
}

std::vector<NoiseSite> noise_sites(const SyndromeCircuit& sc, const NoiseModel& model) {
    std::vector<NoiseSite> sites;
    if (model.kind == NoiseModel::Kind::StandardDepolarizing) {
        for (int cyc = 0; cyc < sc.cycles; ++cyc) {
            int m0 = cyc * sc.moments_per_cycle;
            for (int w : sc.data_wires)
                sites.push_back({NoiseSite::Kind::Depol1, m0, true, {w, w}, cyc});
        }
        return sites;
    }
    // Circuit level. The last cycle is taken error-free.
    const int last_cycle = sc.cycles - 1;
    for (int m = 0; m < static_cast<int>(sc.circuit.moments.size()); ++m) {
        const int cyc = sc.cycle_of_moment(m);
        if (cyc >= last_cycle) break;
        for (const auto& instr : sc.circuit.moments[m]) {
            switch (instr.op) {
                case Instruction::Op::Gate: {
                    const int gs = gate_arity(instr.gate.kind);
                    for (std::size_t g0 = 0; g0 + gs <= instr.targets.size(); g0 += gs) {
                        if (gs == 1)
                            sites.push_back({NoiseSite::Kind::Depol1, m, false,
                                             {instr.targets[g0], instr.targets[g0]}, cyc});
                        else
                            sites.push_back({NoiseSite::Kind::Depol2, m, false,
                                             {instr.targets[g0], instr.targets[g0 + 1]}, cyc});
                    }
                    break;
                }
                case Instruction::Op::Idle:
                    sites.push_back({NoiseSite::Kind::Depol1, m, false,
                                     {instr.targets[0], instr.targets[0]}, cyc});
                    break;
                case Instruction::Op::Measure:
                    for (int w : instr.targets)
                        sites.push_back({NoiseSite::Kind::MeasFlip, m, true, {w, w}, cyc});
                    break;
                default:
                    break;
            }
        }
    }
    return sites;
}

namespace {

PauliString sample_site(const NoiseSite& site, const NoiseModel& model, const Dim& dim,
                        Rng& rng) {
    switch (site.kind) {
        case NoiseSite::Kind::Depol1: return sample_depol1(model.p, dim, rng);
        case NoiseSite::Kind::Depol2: return sample_depol2(model.p, dim, rng);
        case NoiseSite::Kind::MeasFlip:
            return sample_measure_flip(model.p, dim, rng, model.uniform_readout_flip);
    }
    throw std::logic_error("unreachable");
}

Instruction fault_instruction(const NoiseSite& site, const PauliString& p) {
    Instruction instr;
    instr.op = Instruction::Op::Fault;
    const int nw = site.kind == NoiseSite::Kind::Depol2 ? 2 : 1;
    for (int i = 0; i < nw; ++i) {
        instr.targets.push_back(site.wires[i]);
        instr.fx.push_back(p.xs[i]);
        instr.fz.push_back(p.zs[i]);
    }
    return instr;
}

}  // namespace

InstrumentResult instrument(const SyndromeCircuit& sc, const NoiseModel& model, Rng& rng) {
    auto sites = noise_sites(sc, model);
    const Dim dim(sc.circuit.q);
    InstrumentResult res{Circuit(dim, sc.circuit.n_qudits), {}};
    res.circuit.moments.clear();

    // Sites are grouped per (moment, before/after) preserving enumeration order.
    std::size_t cursor = 0;
    for (int m = 0; m < static_cast<int>(sc.circuit.moments.size()); ++m) {
        Moment pre, post;
        for (; cursor < sites.size() && sites[cursor].moment == m; ++cursor) {
            PauliString fault = sample_site(sites[cursor], model, dim, rng);
            if (fault.is_phase_only()) continue;
            res.faults.push_back({sites[cursor], fault});
            (sites[cursor].before ? pre : post).push_back(fault_instruction(sites[cursor], fault));
        }
        if (!pre.empty()) res.circuit.moments.push_back(std::move(pre));
        res.circuit.moments.push_back(sc.circuit.moments[m]);
        if (!post.empty()) res.circuit.moments.push_back(std::move(post));
    }
    return res;
}

PfResult pf_run_noisy(const SyndromeCircuit& sc, const NoiseModel& model, Rng& rng) {
    // Same walk as instrument(), fused with frame propagation.
    static thread_local std::vector<NoiseSite> cached_sites;
    static thread_local const SyndromeCircuit* cached_for = nullptr;
    static thread_local NoiseModel::Kind cached_kind{};
    if (cached_for != &sc || cached_kind != model.kind) {
        cached_sites = noise_sites(sc, model);
        cached_for = &sc;
        cached_kind = model.kind;
    }
    const auto& sites = cached_sites;
    const Dim dim(sc.circuit.q);
    PfResult res{{}, PauliFrame(dim, sc.circuit.n_qudits)};
    auto& f = res.frame;
    long long half = 0;

    std::size_t cursor = 0;
    std::vector<std::pair<const NoiseSite*, PauliString>> post_faults;
    for (int m = 0; m < static_cast<int>(sc.circuit.moments.size()); ++m) {
        std::size_t site_begin = cursor;
        while (cursor < sites.size() && sites[cursor].moment == m) ++cursor;
        // Draw faults in enumeration order; apply "before" ones now and
        // stash the rest for after the moment's instructions.
        post_faults.clear();
        for (std::size_t s = site_begin; s < cursor; ++s) {
            PauliString fault = sample_site(sites[s], model, dim, rng);
            if (sites[s].before)
                f.mul(sites[s].wires[0], fault.xs[0], fault.zs[0]);
            else
                post_faults.emplace_back(&sites[s], std::move(fault));
        }
        for (const auto& instr : sc.circuit.moments[m]) {
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
                case Instruction::Op::Measure:
                    for (int w : instr.targets) res.outcome_shifts.push_back(f.xs[w]);
                    break;
                case Instruction::Op::Reset:
                    for (int w : instr.targets) f.clear(w);
                    break;
                default:
                    break;
            }
        }
        for (const auto& [site, fault] : post_faults) {
            const int nw = site->kind == NoiseSite::Kind::Depol2 ? 2 : 1;
            for (int i = 0; i < nw; ++i) f.mul(site->wires[i], fault.xs[i], fault.zs[i]);
        }
    }
    return res;
}

PfResult pf_run_single_fault(const SyndromeCircuit& sc, const NoiseSite& site,
                             const PauliString& fault) {
    const Dim dim(sc.circuit.q);
    Circuit c(dim, sc.circuit.n_qudits);
    c.moments.clear();
    for (int m = 0; m < static_cast<int>(sc.circuit.moments.size()); ++m) {
        if (m == site.moment && site.before)
            c.moments.push_back({fault_instruction(site, fault)});
        c.moments.push_back(sc.circuit.moments[m]);
        if (m == site.moment && !site.before)
            c.moments.push_back({fault_instruction(site, fault)});
    }
    return pf_run(c);
}

}  // namespace qec5
