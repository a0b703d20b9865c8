#pragma once

#include <optional>
#include <vector>

#include "qec5/detector_graph.hpp"
#include "qec5/priors.hpp"
#include "qec5/rng.hpp"

namespace qec5 {

enum class DecoderKind { Mwpm, Bp, Bm };

std::optional<DecoderKind> decoder_from_name(const std::string& name);
std::string decoder_name(DecoderKind kind);

// Minimum-weight perfect matching over the expanded graph. Active nodes are
// paired (boundary allowed) by exact search: pairwise distances come from a
// Dijkstra pass whose walk steps from an explained node to the value
// conjugate of the node its mechanism co-activates, and the pairing itself
// is an exact subset-DP. Equal-weight optima are sampled uniformly when an
// rng is supplied (hyperedge degeneracy shows up as genuine ties).
// Returns the phaseless data correction.
PauliString decode_mwpm(const DetectorGraph& g, const std::vector<DetectionEvent>& events,
                        Rng* rng = nullptr);

// Tanner-style factor graph over template mechanisms: one Z_q variable per
// (cycle, qudit, direction) and per measurement slot, one q-ary check per
// detector.
struct BPGraph {
    struct Var {
        enum class Kind { Space, Meas, Composite } kind;
        int cycle, site, dir;  // Composite: site = class index
    };
    int q = 2;
    int cycles = 1;
    std::vector<Var> vars;
    int first_composite = -1;  // index of the first composite var, -1 if none
    // check id = cycle*4 + stab; entries are (var, coeff) with coeff != 0.
    std::vector<std::vector<std::pair<int, int>>> checks;
    std::vector<std::vector<std::pair<int, int>>> var_checks;  // (check, coeff)
};

// Template mechanisms only (standard depolarizing), or with the priors'
// composite classes added as further Z_q variables (circuit level).
BPGraph build_bp_graph(const CheckMatrix& H, int cycles);
BPGraph build_bp_graph(const CheckMatrix& H, int cycles, const MechanismPriors& priors);

struct BPState {
    std::vector<std::vector<double>> posteriors;  // per variable, length q
    std::vector<int> assignment;                  // argmax powers
    int iterations = 0;
    bool converged = false;   // syndrome equation satisfied by assignment
    PauliString correction;   // data correction implied by the assignment
};

// q-ary sum-product with flooding schedule. Stops as soon as the argmax
// assignment satisfies every check, or after max_iters.
BPState decode_bp(const BPGraph& bpg, const std::vector<DetectionEvent>& events,
                  const MechanismPriors& priors, int max_iters = 50, double damping = 0.5);

// Belief matching: returns the BP correction when BP converges, otherwise
// reweights the matching graph with -log BP posteriors and matches.
PauliString decode_bm(const DetectorGraph& g, const BPGraph& bpg,
                      const std::vector<DetectionEvent>& events, const MechanismPriors& priors,
                      Rng* rng = nullptr, int max_iters = 50, double damping = 0.5);

// True iff the residual has zero syndrome and trivial logical action, i.e.
// its symplectic vector lies in the Z_q row space of the check matrix.
bool check_success(const PauliString& residual, const CheckMatrix& H);

}  // namespace qec5
