#include "qec5/flag_table.hpp"

#include <json.hpp>

namespace qec5 {

namespace {

// Elementary fault enumeration shared with the priors builder would be
// natural, but the table needs the flagged classification too, so the loop
// lives here with the same per-outcome probabilities left implicit (the
// table records structure, not rates).
std::vector<PauliString> site_outcomes(const NoiseSite& site, const Dim& dim) {
    std::vector<PauliString> out;
    const int q = dim.q;
    if (site.kind == NoiseSite::Kind::Depol2) {
        for (int r1 = 0; r1 < q; ++r1)
            for (int s1 = 0; s1 < q; ++s1)
                for (int r2 = 0; r2 < q; ++r2)
                    for (int s2 = 0; s2 < q; ++s2) {
                        if (r1 == 0 && s1 == 0 && r2 == 0 && s2 == 0) continue;
                        PauliString p(dim, 2);
                        p.xs = {r1, r2};
                        p.zs = {s1, s2};
                        out.push_back(p);
                    }
    } else if (site.kind == NoiseSite::Kind::Depol1) {
        for (int r = 0; r < q; ++r)
            for (int s = 0; s < q; ++s) {
                if (r == 0 && s == 0) continue;
                out.push_back(PauliString::single(dim, 1, 0, r, s));
            }
    } else {
        for (int k = 1; k < q; ++k) out.push_back(PauliString::single(dim, 1, 0, k, 0));
    }
    return out;
}

int pauli_weight(const PauliString& p) { return p.weight(); }

}  // namespace

FlagTable build_flag_table(const Dim& dim) {
    auto sc = build_cycle(dim, true, 2);
    auto H = build_check_matrix(dim);
    NoiseModel model{NoiseModel::Kind::CircuitLevel, 0.5};

    FlagTable table{dim};
    for (const auto& site : noise_sites(sc, model)) {
        if (site.cycle != 0) continue;
        for (const auto& fault : site_outcomes(site, dim)) {
            auto pf = pf_run_single_fault(sc, site, fault);
            auto rec = record_from_shifts(sc, pf.outcome_shifts);
            int block = -1, value = 0;
            for (int b = 0; b < 4; ++b)
                if (rec.flags[0][b] != 0) {
                    block = b;
                    value = rec.flags[0][b];
                }
            if (block < 0) continue;

            PauliString residual = pf.frame.restricted_to(sc.data_wires);
            residual.phase2 = 0;
            FlagTable::Key key{block, value, {}};
            auto syn = syndrome_of(residual, H.stabilizers());
            for (int i = 0; i < 4; ++i) key.syndrome[i] = syn[i];

            PauliString corr = residual.adjoint();
            corr.phase2 = 0;
            auto it = table.entries.find(key);
            if (it == table.entries.end()) {
                table.entries[key] = {corr, false, 1};
            } else {
                ++it->second.sources;
                PauliString diff = pauli_mul(it->second.correction, residual);
                if (!check_success(diff, H)) {
                    it->second.ambiguous = true;
                    if (pauli_weight(corr) < pauli_weight(it->second.correction))
                        it->second.correction = corr;
                }
            }
        }
    }
    return table;
}

PauliString apply_flag_corrections(const FlagTable& table, SyndromeRecord& record,
                                   const CheckMatrix& H) {
    const Dim dim = table.dim;
    PauliString total(dim, 5);
    const int cycles = record.cycles();
    const int last = cycles - 1;
    for (int c = 0; c < cycles; ++c) {
        for (int b = 0; b < 4; ++b) {
            int v = record.flags[c][b];
            if (v == 0) continue;
            FlagTable::Key key{b, v, record.outcomes[last]};
            const auto* entry = table.find(key);
            if (entry == nullptr) continue;
            total = pauli_mul(total, entry->correction);
            // Remove the corrected error's syndrome footprint from this and
            // all later cycles.
            auto syn = syndrome_of(entry->correction, H.stabilizers());
            for (int c2 = c; c2 < cycles; ++c2)
                for (int i = 0; i < 4; ++i)
                    record.outcomes[c2][i] = mod_q(record.outcomes[c2][i] + syn[i], dim.q);
        }
    }
    total.phase2 = 0;
    return total;
}

FlagAuditResult audit_flag_table(const Dim& dim, DecoderKind decoder, int cycles) {
    auto sc = build_cycle(dim, true, cycles);
    auto H = build_check_matrix(dim);
    auto table = build_flag_table(dim);
    auto graph = build_graph(H, cycles);
    NoiseModel model{NoiseModel::Kind::CircuitLevel, 1e-3};
    auto priors = build_priors_circuit(sc, model);
    auto bpg = build_bp_graph(H, cycles, priors);
    apply_weights(graph, priors);

    FlagAuditResult result;
    Rng rng(0xf1a6);
    for (const auto& site : noise_sites(sc, model)) {
        if (site.cycle != 0) continue;  // audit faults of one extraction cycle
        for (const auto& fault : site_outcomes(site, dim)) {
            ++result.faults_checked;
            auto pf = pf_run_single_fault(sc, site, fault);
            auto rec = record_from_shifts(sc, pf.outcome_shifts);
            bool any_flag = false;
            for (const auto& fl : rec.flags)
                for (int v : fl) any_flag |= v != 0;
            if (any_flag) ++result.flagged_faults;
            PauliString corr = apply_flag_corrections(table, rec, H);
            auto events = detection_events(rec);
            PauliString decoded(dim, 5);
            switch (decoder) {
                case DecoderKind::Mwpm: decoded = decode_mwpm(graph, events, &rng); break;
                case DecoderKind::Bp: decoded = decode_bp(bpg, events, priors).correction; break;
                case DecoderKind::Bm: decoded = decode_bm(graph, bpg, events, priors, &rng); break;
            }
            PauliString residual = pauli_mul(pauli_mul(pf.frame.restricted_to(sc.data_wires),
                                                       corr),
                                             decoded);
            residual.phase2 = 0;
            if (!check_success(residual, H))
                result.failures.push_back({site, fault, residual});
        }
    }
    return result;
}

std::string FlagTable::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["dim"] = dim.q;
    auto& list = j["entries"] = nlohmann::json::array();
    for (const auto& [key, entry] : entries) {
        nlohmann::json e;
        e["block"] = key.block;
        e["flag"] = key.flag_value;
        e["syndrome"] = key.syndrome;
        e["correction"] = entry.correction.str();
        e["ambiguous"] = entry.ambiguous;
        e["sources"] = entry.sources;
        list.push_back(std::move(e));
    }
    return j.dump(2);
}

FlagTable FlagTable::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FlagTable table{Dim(j.at("dim").get<int>())};
    table.version = j.at("version").get<int>();
    for (const auto& e : j.at("entries")) {
        FlagTable::Key key;
        key.block = e.at("block").get<int>();
        key.flag_value = e.at("flag").get<int>();
        auto syn = e.at("syndrome").get<std::vector<int>>();
        std::copy(syn.begin(), syn.end(), key.syndrome.begin());
        FlagTable::Entry entry;
        entry.correction = PauliString::parse(e.at("correction").get<std::string>(), table.dim);
        entry.ambiguous = e.at("ambiguous").get<bool>();
        entry.sources = e.at("sources").get<int>();
        table.entries[key] = std::move(entry);
    }
    return table;
}

}  // namespace qec5
