// Command-line frontend: Monte Carlo runs and sweeps, threshold fits,
// matching-graph export, flag-table audit, and a quick self-test.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qec5/experiments.hpp"
#include "qec5/flag_table.hpp"
#include "qec5/gates.hpp"
#include "qec5/statevector.hpp"

namespace {

using namespace qec5;

// Write-to-temp then atomic rename; partially written outputs never land.
void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file_atomic(out_path, content);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QEC5_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

struct CommonOpts {
    int dim = 2;
    int cycles = 3;
    std::string model = "circuit";
    std::string decoder = "bm";
    bool no_flag = false;
    long long shots = 10000;
    std::uint64_t seed = default_seed();
    int threads = 0;
    double ci = 0.99;
    double sample_a = 0.0;
    bool uniform_readout = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--dim", o.dim, "qudit dimension (prime)")->required();
    cmd->add_option("--cycles", o.cycles, "extraction cycles");
    cmd->add_option("--model", o.model, "noise model: sdep | circuit");
    cmd->add_option("--decoder", o.decoder, "decoder: mwpm | bp | bm");
    cmd->add_flag("--no-flag", o.no_flag, "disable the flag qudits");
    cmd->add_option("--shots", o.shots, "Monte Carlo shots");
    cmd->add_option("--seed", o.seed, "RNG seed (env QEC5_SEED as fallback)");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
    cmd->add_option("--ci", o.ci, "confidence level for Wilson intervals");
    cmd->add_option("--sample-a", o.sample_a, "shots = A/p convention when > 0");
    cmd->add_flag("--uniform-readout", o.uniform_readout,
                  "spread readout flips uniformly over X^k");
}

int build_config(const CommonOpts& o, double p, RunConfig& cfg, std::string& err) {
    if (!is_prime(o.dim)) {
        err = "dimension must be prime";
        return 2;
    }
    auto dec = decoder_from_name(o.decoder);
    if (!dec) {
        err = "unknown decoder '" + o.decoder + "'";
        return 2;
    }
    NoiseModel::Kind kind;
    if (o.model == "sdep" || o.model == "standard")
        kind = NoiseModel::Kind::StandardDepolarizing;
    else if (o.model == "circuit" || o.model == "circuit-level" || o.model == "cl")
        kind = NoiseModel::Kind::CircuitLevel;
    else {
        err = "unknown noise model '" + o.model + "'";
        return 2;
    }
    if (p < 0.0 || p > 1.0) {
        err = "probability outside [0,1]";
        return 2;
    }
    cfg.q = o.dim;
    cfg.cycles = o.cycles;
    cfg.model = {kind, p, o.uniform_readout};
    cfg.decoder = *dec;
    cfg.flagged = !o.no_flag;
    cfg.shots = o.shots;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.ci_level = o.ci;
    cfg.sample_parameter_A = o.sample_a;
    return 0;
}

std::vector<FitPoint> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<FitPoint> points;
    std::string line;
    bool header_checked = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!header_checked) {
            header_checked = true;
            if (!cells.empty() && cells[0] == "q") continue;  // result-file header
            if (!cells.empty() && (cells[0] == "p" || cells[0] == "p_s")) continue;
        }
        FitPoint pt;
        if (cells.size() >= 11) {
            // full result row: q,model,decoder,flag,p,shots,failures,p_l,ci_low,ci_high,seed
            pt.p = std::stod(cells[4]);
            pt.p_l = std::stod(cells[7]);
            double lo = std::stod(cells[8]), hi = std::stod(cells[9]);
            double sigma_log = (hi > lo && pt.p_l > 0) ? (std::log(hi) - std::log(lo)) / 4.0 : 1.0;
            pt.weight = sigma_log > 0 ? 1.0 / (sigma_log * sigma_log) : 1.0;
        } else if (cells.size() >= 2) {
            pt.p = std::stod(cells[0]);
            pt.p_l = std::stod(cells[1]);
            pt.weight = cells.size() >= 3 ? std::stod(cells[2]) : 1.0;
        } else {
            continue;
        }
        if (pt.p_l > 0) points.push_back(pt);
    }
    return points;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and decoding toolkit for the five-qudit code"};
    app.require_subcommand(1);

    // run
    CommonOpts run_opts;
    double run_p = 0.0;
    std::string run_out;
    auto* cmd_run = app.add_subcommand("run", "single Monte Carlo configuration, CSV on stdout");
    add_common(cmd_run, run_opts);
    cmd_run->add_option("--p", run_p, "physical error rate")->required();
    cmd_run->add_option("--out", run_out, "write CSV to file (atomic)");

    // sweep
    CommonOpts sweep_opts;
    std::vector<double> sweep_ps;
    std::string sweep_out;
    auto* cmd_sweep = app.add_subcommand("sweep", "several physical rates, one CSV row each");
    add_common(cmd_sweep, sweep_opts);
    cmd_sweep->add_option("--p", sweep_ps, "physical error rates")->required()->expected(-1);
    cmd_sweep->add_option("--out", sweep_out, "write CSV to file (atomic)");

    // threshold
    std::string thr_points, thr_out;
    double thr_a = 0.0, thr_b = 0.0;
    int thr_levels = 3;
    bool thr_emit_curves = false;
    auto* cmd_thr = app.add_subcommand("threshold", "power-law fit and threshold fixed point");
    cmd_thr->add_option("--points", thr_points, "CSV of (p,p_l[,weight]) or result rows");
    cmd_thr->add_option("--a", thr_a, "use fit parameter a directly");
    cmd_thr->add_option("--b", thr_b, "use fit parameter b directly");
    cmd_thr->add_option("--levels", thr_levels, "concatenation levels to project");
    cmd_thr->add_flag("--emit-curves", thr_emit_curves, "sample level curves into the report");
    cmd_thr->add_option("--out", thr_out, "write JSON report to file (atomic)");

    // graph
    int graph_dim = 2, graph_cycles = 1;
    std::string graph_out;
    auto* cmd_graph = app.add_subcommand("graph", "DOT export of the expanded matching graph");
    cmd_graph->add_option("--dim", graph_dim, "qudit dimension (prime)")->required();
    cmd_graph->add_option("--cycles", graph_cycles, "measurement cycles");
    cmd_graph->add_option("--out", graph_out, "write DOT to file (atomic)");

    // audit-flag-table
    int audit_dim = 2;
    std::string audit_decoder = "bm", audit_table_out;
    auto* cmd_audit =
        app.add_subcommand("audit-flag-table", "exhaustive single-fault audit of one flag cycle");
    cmd_audit->add_option("--dim", audit_dim, "qudit dimension (prime)")->required();
    cmd_audit->add_option("--decoder", audit_decoder, "decoder: mwpm | bp | bm");
    cmd_audit->add_option("--table-out", audit_table_out, "also write the table as JSON");

    // selftest
    auto* cmd_selftest = app.add_subcommand("selftest", "fast internal consistency checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed() || cmd_sweep->parsed()) {
            const bool is_run = cmd_run->parsed();
            const CommonOpts& o = is_run ? run_opts : sweep_opts;
            std::vector<double> ps = is_run ? std::vector<double>{run_p} : sweep_ps;
            std::ostringstream csv;
            csv << ExperimentResult::csv_header() << "\n";
            for (double p : ps) {
                RunConfig cfg;
                std::string err;
                if (int rc = build_config(o, p, cfg, err); rc != 0) {
                    std::cerr << "error: " << err << "\n";
                    return rc;
                }
                auto res = run_experiment(cfg);
                csv << res.csv_row() << "\n";
            }
            emit(is_run ? run_out : sweep_out, csv.str());
            return 0;
        }

        if (cmd_thr->parsed()) {
            FitResult fit;
            if (thr_a > 0.0 && thr_b > 0.0) {
                fit.a = thr_a;
                fit.b = thr_b;
            } else if (!thr_points.empty()) {
                auto points = read_points_csv(thr_points);
                if (points.size() < 3) {
                    std::cerr << "error: need at least 3 points\n";
                    return 2;
                }
                fit = fit_power_law(points);
            } else {
                std::cerr << "error: give --points or both --a and --b\n";
                return 2;
            }
            if (fit.b <= 1.0) {
                std::cerr << "error: no finite threshold (b <= 1)\n";
                return 2;
            }
            auto thr = threshold(fit);
            std::vector<LevelCurve> curves;
            if (thr_emit_curves) {
                std::vector<double> grid;
                for (int i = 0; i <= 60; ++i)
                    grid.push_back(thr.value * std::pow(10.0, -1.5 + i * 0.05));
                curves = concatenation_curves(fit, thr_levels, grid);
            }
            emit(thr_out, fit_report_json(fit, thr, curves) + "\n");
            return 0;
        }

        if (cmd_graph->parsed()) {
            if (!is_prime(graph_dim)) {
                std::cerr << "error: dimension must be prime\n";
                return 2;
            }
            Dim dim(graph_dim);
            auto H = build_check_matrix(dim);
            auto g = build_graph(H, graph_cycles);
            std::cerr << "nodes: " << g.node_count() << "\nedges: " << g.edges.size()
                      << "\ncomponents: " << g.component_count() << "\n";
            emit(graph_out, graph_dot(g, H));
            return 0;
        }

        if (cmd_audit->parsed()) {
            if (!is_prime(audit_dim)) {
                std::cerr << "error: dimension must be prime\n";
                return 2;
            }
            auto dec = decoder_from_name(audit_decoder);
            if (!dec) {
                std::cerr << "error: unknown decoder\n";
                return 2;
            }
            Dim dim(audit_dim);
            if (!audit_table_out.empty())
                write_file_atomic(audit_table_out, build_flag_table(dim).to_json());
            auto res = audit_flag_table(dim, *dec);
            std::cout << "faults checked: " << res.faults_checked << "\n"
                      << "flag raised:    " << res.flagged_faults << "\n"
                      << "failures:       " << res.failures.size() << "\n";
            for (std::size_t i = 0; i < res.failures.size() && i < 10; ++i)
                std::cout << "  fault " << res.failures[i].fault.str() << " -> residual "
                          << res.failures[i].residual_after_correction.str() << "\n";
            return res.all_pass() ? 0 : 1;
        }

        if (cmd_selftest->parsed()) {
            int bad = 0;
            for (int q : {2, 3, 5, 7}) {
                Dim dim(q);
                for (GateKind k : {GateKind::F, GateKind::S, GateKind::SUM, GateKind::M}) {
                    Gate g{k, 1};
                    if (!verify_symplectic(GateAction::of(g, dim), g)) {
                        std::cout << "FAIL gate action q=" << q << " " << gate_mnemonic(g)
                                  << "\n";
                        ++bad;
                    }
                }
                auto g = build_graph(build_check_matrix(dim), 1);
                int expect_comp = q == 2 || q == 3 ? 1 : (q == 5 ? 2 : 3);
                if (g.node_count() != 4 * (q - 1) || g.component_count() != expect_comp) {
                    std::cout << "FAIL graph structure q=" << q << "\n";
                    ++bad;
                }
            }
            if (std::abs(p_m1(0.1) - 0.08146) > 1e-5) {
                std::cout << "FAIL p_m1\n";
                ++bad;
            }
            std::cout << (bad == 0 ? "selftest passed\n" : "selftest FAILED\n");
            return bad == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
