#include "qec5/priors.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qec5 {

namespace {
constexpr double kFloor = 1e-15;
}

DirPower dir_of(int r, int s, const Dim& dim) {
    const int q = dim.q;
    r = mod_q(r, q);
    s = mod_q(s, q);
    if (r == 0 && s == 0) throw std::invalid_argument("dir_of: identity");
    if (r == 0) return {1, s};
    int t = mod_q(static_cast<long long>(s) * mod_inverse(r, dim), q);
    if (t == 0) return {0, r};
    return {1 + t, r};
}

std::pair<int, int> powers_of(int dir, int power, const Dim& dim) {
    const int q = dim.q;
    if (dir == 0) return {power, 0};
    if (dir == 1) return {0, power};
    int t = dir - 1;
    return {power, mod_q(static_cast<long long>(t) * power, q)};
}

void MechanismPriors::finalize() {
    for (int c = 0; c < cycles; ++c)
        for (int d = 0; d < 5; ++d)
            for (int dir = 0; dir < dirs(); ++dir) {
                double rest = 0;
                for (int k = 1; k < q; ++k) rest += space_at(c, d, dir, k);
                space_at(c, d, dir, 0) = std::max(1.0 - rest, kFloor);
            }
    for (int c = 0; c < cycles; ++c)
        for (int a = 0; a < 4; ++a) {
            double rest = 0;
            for (int k = 1; k < q; ++k) rest += meas_at(c, a, k);
            meas_at(c, a, 0) = std::max(1.0 - rest, kFloor);
        }
    for (auto& comp : composites) {
        double rest = 0;
        for (int k = 1; k < q; ++k) rest += comp.prob[k];
        comp.prob[0] = std::max(1.0 - rest, kFloor);
    }
}

MechanismPriors build_priors_sdep(const Dim& dim, int cycles, double p) {
    MechanismPriors pr;
    pr.q = dim.q;
    pr.cycles = cycles;
    pr.space.assign(static_cast<std::size_t>(cycles) * 5 * pr.dirs() * dim.q, 0.0);
    pr.meas.assign(static_cast<std::size_t>(cycles) * 4 * dim.q, 0.0);
    const double per = p / (dim.q * dim.q);
    for (int c = 0; c < cycles; ++c)
        for (int d = 0; d < 5; ++d)
            for (int dir = 0; dir < pr.dirs(); ++dir)
                for (int k = 1; k < dim.q; ++k) pr.space_at(c, d, dir, k) = per;
    pr.finalize();
    return pr;
}

namespace {

struct Elementary {
    PauliString fault;
    double prob;
};

std::vector<Elementary> elementary_faults(const NoiseSite& site, const NoiseModel& model,
                                          const Dim& dim) {
    std::vector<Elementary> out;
    const int q = dim.q;
    switch (site.kind) {
        case NoiseSite::Kind::Depol1: {
            const double per = model.p / (q * q);
            for (int r = 0; r < q; ++r)
                for (int s = 0; s < q; ++s) {
                    if (r == 0 && s == 0) continue;
                    out.push_back({PauliString::single(dim, 1, 0, r, s), per});
                }
            break;
        }
        case NoiseSite::Kind::Depol2: {
            const double per = model.p / (static_cast<double>(q) * q * q * q);
            for (int r1 = 0; r1 < q; ++r1)
                for (int s1 = 0; s1 < q; ++s1)
                    for (int r2 = 0; r2 < q; ++r2)
                        for (int s2 = 0; s2 < q; ++s2) {
                            if (r1 == 0 && s1 == 0 && r2 == 0 && s2 == 0) continue;
                            PauliString p(dim, 2);
                            p.xs = {r1, r2};
                            p.zs = {s1, s2};
                            out.push_back({p, per});
                        }
            break;
        }
        case NoiseSite::Kind::MeasFlip: {
            if (model.uniform_readout_flip) {
                for (int k = 1; k < q; ++k)
                    out.push_back({PauliString::single(dim, 1, 0, k, 0), model.p / (q - 1)});
            } else {
                out.push_back({PauliString::single(dim, 1, 0, 1, 0), model.p});
            }
            break;
        }
    }
    return out;
}

struct ClassKey {
    std::vector<std::array<int, 3>> signature;  // (cycle, anc, value)
    std::vector<int> residual;                  // symplectic, coset-reduced

    auto operator<=>(const ClassKey&) const = default;
};

}  // namespace

MechanismPriors build_priors_circuit(const SyndromeCircuit& sc, const NoiseModel& model) {
    const Dim dim(sc.circuit.q);
    const int q = dim.q;
    MechanismPriors pr;
    pr.q = q;
    pr.cycles = sc.cycles;
    pr.space.assign(static_cast<std::size_t>(sc.cycles) * 5 * pr.dirs() * q, 0.0);
    pr.meas.assign(static_cast<std::size_t>(sc.cycles) * 4 * q, 0.0);

    auto H = build_check_matrix(dim);
    auto rows = H.stabilizers();
    StabilizerReducer reducer(H);
    std::map<ClassKey, std::vector<double>> classes;

    for (const auto& site : noise_sites(sc, model)) {
        for (const auto& [fault, prob] : elementary_faults(site, model, dim)) {
            auto pf = pf_run_single_fault(sc, site, fault);
            auto rec = record_from_shifts(sc, pf.outcome_shifts);
            bool flagged = false;
            for (const auto& fl : rec.flags)
                for (int v : fl) flagged |= v != 0;
            if (flagged) continue;

            auto events = detection_events(rec);
            PauliString residual = reducer.reduce(pf.frame.restricted_to(sc.data_wires));
            if (events.empty()) continue;  // trivial or pure-stabilizer action

            // Template: single-qudit residual whose full syndrome shows up in
            // exactly one cycle.
            if (residual.weight() == 1) {
                int d = 0;
                while (residual.xs[d] == 0 && residual.zs[d] == 0) ++d;
                auto syn = syndrome_of(residual, rows);
                bool same_cycle = true;
                for (std::size_t i = 1; i < events.size(); ++i)
                    same_cycle &= events[i].cycle == events[0].cycle;
                if (same_cycle) {
                    bool match = true;
                    std::array<int, 4> got{0, 0, 0, 0};
                    for (const auto& ev : events) got[ev.anc] = mod_q(ev.value, q);
                    for (int i = 0; i < 4; ++i) match &= got[i] == syn[i];
                    if (match) {
                        auto [dir, k] = dir_of(residual.xs[d], residual.zs[d], dim);
                        pr.space_at(events[0].cycle, d, dir, k) += prob;
                        continue;
                    }
                }
            }
            if (residual.is_phase_only() && events.size() == 2 && events[0].anc == events[1].anc &&
                events[1].cycle == events[0].cycle + 1 &&
                mod_q(events[0].value + events[1].value, q) == 0) {
                pr.meas_at(events[0].cycle, events[0].anc, mod_q(events[0].value, q)) += prob;
                continue;
            }

            // Composite class, canonicalized so the first event value is 1.
            int lambda = mod_inverse(mod_q(events[0].value, q), dim);
            ClassKey key;
            for (const auto& ev : events)
                key.signature.push_back(
                    {ev.cycle, ev.anc, mod_q(static_cast<long long>(ev.value) * lambda, q)});
            PauliString scaled(dim, 5);
            for (int i = 0; i < 5; ++i) {
                scaled.xs[i] = mod_q(static_cast<long long>(residual.xs[i]) * lambda, q);
                scaled.zs[i] = mod_q(static_cast<long long>(residual.zs[i]) * lambda, q);
            }
            key.residual = symplectic(reducer.reduce(scaled));
            auto [it, fresh] = classes.try_emplace(key, std::vector<double>(q, 0.0));
            it->second[mod_q(events[0].value, q)] += prob;
        }
    }

    for (auto& [key, prob] : classes) {
        CompositeClass comp;
        for (const auto& s : key.signature) comp.signature.push_back({s[1], s[0], s[2]});
        comp.residual = PauliString(dim, 5);
        for (int i = 0; i < 5; ++i) {
            comp.residual.xs[i] = key.residual[i];
            comp.residual.zs[i] = key.residual[5 + i];
        }
        comp.prob = prob;
        pr.composites.push_back(std::move(comp));
    }
    pr.finalize();
    return pr;
}

void apply_weights(DetectorGraph& g, const MechanismPriors& priors) {
    const int q = g.dim.q;
    // Drop previously appended composite edges before reapplying.
    std::erase_if(g.edges, [](const GraphEdge& e) { return e.kind == GraphEdge::Kind::Composite; });
    for (auto& e : g.edges) {
        double p = kFloor;
        switch (e.kind) {
            case GraphEdge::Kind::SpaceX:
                p = priors.space_at(e.cycle, e.site, 0, e.power);
                break;
            case GraphEdge::Kind::SpaceZ:
                p = priors.space_at(e.cycle, e.site, 1, e.power);
                break;
            case GraphEdge::Kind::Meas:
                p = priors.meas_at(e.cycle, e.site, e.power);
                break;
            default:
                break;
        }
        e.weight = -std::log(std::max(p, kFloor));
    }
    for (std::size_t ci = 0; ci < priors.composites.size(); ++ci) {
        const auto& comp = priors.composites[ci];
        if (comp.signature.size() > 2) continue;  // hyper-signature: BP only
        for (int k = 1; k < q; ++k) {
            if (comp.prob[k] <= 0.0) continue;
            GraphEdge e;
            e.kind = GraphEdge::Kind::Composite;
            e.site = static_cast<int>(ci);
            e.power = k;
            e.cycle = comp.signature[0].cycle;
            e.a = g.node_id(comp.signature[0].anc,
                            mod_q(static_cast<long long>(comp.signature[0].value) * k, q),
                            comp.signature[0].cycle);
            e.b = comp.signature.size() == 2
                      ? g.node_id(comp.signature[1].anc,
                                  mod_q(static_cast<long long>(comp.signature[1].value) * k, q),
                                  comp.signature[1].cycle)
                      : -1;
            e.weight = -std::log(std::max(comp.prob[k], kFloor));
            g.edges.push_back(e);
        }
    }
    g.composites = &priors.composites;
    g.rebuild_incidence();
}

}  // namespace qec5
