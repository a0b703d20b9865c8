#include "qec5/experiments.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace qec5 {

long long RunConfig::effective_shots() const {
    if (sample_parameter_A > 0.0 && model.p > 0.0)
        return std::max<long long>(1, static_cast<long long>(sample_parameter_A / model.p));
    return shots;
}

std::pair<double, double> wilson_interval(long long failures, long long n, double level) {
    // Hard-coded normal quantiles for the two levels in use.
    double z;
    if (level >= 0.985)
        z = 2.5758293035489004;  // 99%
    else if (level >= 0.945)
        z = 1.959963984540054;   // 95%
    else
        z = 1.6448536269514722;  // 90%
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(failures) / nn;
    const double denom = 1.0 + z * z / nn;
    const double center = (phat + z * z / (2 * nn)) / denom;
    const double half =
        z * std::sqrt(phat * (1 - phat) / nn + z * z / (4 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::string ExperimentResult::csv_header() {
    return "q,model,decoder,flag,p,shots,failures,p_l,ci_low,ci_high,seed";
}

std::string ExperimentResult::csv_row() const {
    std::ostringstream out;
    out.precision(12);
    out << config.q << ","
        << (config.model.kind == NoiseModel::Kind::StandardDepolarizing ? "sdep" : "circuit")
        << "," << decoder_name(config.decoder) << "," << (config.flagged ? 1 : 0) << ","
        << config.model.p << "," << shots << "," << failures << "," << p_l << "," << ci_low
        << "," << ci_high << "," << config.seed;
    return out.str();
}

ExperimentResult run_experiment(const RunConfig& cfg) {
    const Dim dim(cfg.q);
    const auto sc = build_cycle(dim, cfg.flagged, cfg.cycles);
    const auto H = build_check_matrix(dim);

    const MechanismPriors priors =
        cfg.model.kind == NoiseModel::Kind::StandardDepolarizing
            ? build_priors_sdep(dim, cfg.cycles, cfg.model.p)
            : build_priors_circuit(sc, cfg.model);
    const BPGraph bpg = build_bp_graph(H, cfg.cycles, priors);
    DetectorGraph graph = build_graph(H, cfg.cycles);
    apply_weights(graph, priors);

    FlagTable table{dim};
    if (cfg.flagged) table = build_flag_table(dim);

    const long long shots = cfg.effective_shots();
    int n_threads = cfg.threads > 0 ? cfg.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = static_cast<int>(std::min<long long>(n_threads, shots));

    std::atomic<long long> failures{0};
    auto worker = [&](long long begin, long long end) {
        long long local = 0;
        for (long long shot = begin; shot < end; ++shot) {
            Rng rng = Rng::for_shot(cfg.seed, static_cast<std::uint64_t>(shot));
            auto pf = pf_run_noisy(sc, cfg.model, rng);
            auto rec = record_from_shifts(sc, pf.outcome_shifts);

            PauliString correction(dim, 5);
            if (cfg.flagged) correction = apply_flag_corrections(table, rec, H);
            auto events = detection_events(rec);
            if (!events.empty() || !correction.is_phase_only()) {
                PauliString decoded(dim, 5);
                switch (cfg.decoder) {
                    case DecoderKind::Mwpm: decoded = decode_mwpm(graph, events, &rng); break;
                    case DecoderKind::Bp:
                        decoded = decode_bp(bpg, events, priors).correction;
                        break;
                    case DecoderKind::Bm:
                        decoded = decode_bm(graph, bpg, events, priors, &rng);
                        break;
                }
                correction = pauli_mul(correction, decoded);
            }
            PauliString residual =
                pauli_mul(pf.frame.restricted_to(sc.data_wires), correction);
            residual.phase2 = 0;
            if (!check_success(residual, H)) ++local;
        }
        failures += local;
    };

    std::vector<std::thread> pool;
    const long long chunk = (shots + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        long long begin = t * chunk, end = std::min<long long>(shots, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();

    ExperimentResult res;
    res.config = cfg;
    res.shots = shots;
    res.failures = failures.load();
    res.p_l = static_cast<double>(res.failures) / static_cast<double>(shots);
    auto [lo, hi] = wilson_interval(res.failures, shots, cfg.ci_level);
    res.ci_low = lo;
    res.ci_high = hi;
    return res;
}

double p_m1(double p_c) {
    const double keep = std::pow(1.0 - p_c, 5) + 5.0 * p_c * std::pow(1.0 - p_c, 4);
    return 1.0 - keep;
}

}  // namespace qec5
