#pragma once

#include <string>
#include <vector>

#include "qec5/code5.hpp"
#include "qec5/pauli.hpp"

namespace qec5 {

// Node of the expanded matching graph: stabilizer index, nonzero eigenvalue
// exponent, extraction cycle. 4(q-1) nodes per cycle.
struct DetectorNode {
    int stab = 0;
    int value = 1;  // 1..q-1
    int cycle = 0;
};

// Edge mechanisms. Space edges are single-qudit X^t or Z^u errors at one
// cycle; their labels identify the error that activates both endpoints.
// Time edges model a measurement shift of one ancilla between consecutive
// cycles. b < 0 marks a boundary edge.
struct GraphEdge {
    enum class Kind { SpaceX, SpaceZ, Meas, Composite };
    int a = 0, b = -1;
    Kind kind = Kind::SpaceX;
    int site = 0;    // data qudit (space), ancilla (meas), or composite index
    int power = 1;   // error power t/u, measurement shift, or class power
    int cycle = 0;
    double weight = 1.0;
};

struct SyndromeRecord {
    int q = 2;
    // outcomes[cycle][ancilla], flags[cycle][block]
    std::vector<std::array<int, 4>> outcomes;
    std::vector<std::array<int, 4>> flags;

    int cycles() const { return static_cast<int>(outcomes.size()); }
};

SyndromeRecord record_from_shifts(const SyndromeCircuit& sc, const std::vector<int>& shifts);

struct DetectionEvent {
    int anc = 0;
    int cycle = 0;
    int value = 0;  // nonzero
};

struct CompositeClass;

struct DetectorGraph {
    Dim dim;
    int cycles = 1;
    std::vector<GraphEdge> edges;
    std::vector<std::vector<int>> incident;  // node id -> edge indices
    // Set when composite mechanism edges were appended from priors.
    const std::vector<CompositeClass>* composites = nullptr;

    void rebuild_incidence();

    int nodes_per_cycle() const { return 4 * (dim.q - 1); }
    int node_count() const { return nodes_per_cycle() * cycles; }
    int node_id(int stab, int value, int cycle) const {
        return cycle * nodes_per_cycle() + stab * (dim.q - 1) + (value - 1);
    }
    DetectorNode node(int id) const;
    // Value-conjugate partner (stab, q - value, cycle).
    int conj(int id) const;

    int component_count() const;           // over nodes and edges as built
    std::vector<int> component_labels() const;
};

// Expanded graph from the check matrix: per cycle, per data qudit, one
// X-power and one Z-power edge family with q-1 parallel edges each (an edge
// per nonzero power); families supported on a single check row dangle to
// the boundary. Time edges join (A, v, c) to (A, q-v, c+1). Weights start
// uniform (1.0 space, `meas_weight` time) and may be replaced from priors.
DetectorGraph build_graph(const CheckMatrix& H, int cycles, double meas_weight = 1.0);

// Nonzero cycle-to-cycle outcome differences (the previous outcome of the
// first cycle is taken to be zero).
std::vector<DetectionEvent> detection_events(const SyndromeRecord& record);

// Event (A, c, v) activates node (A, v, c).
std::vector<int> activate(const DetectorGraph& g, const std::vector<DetectionEvent>& events);

// Y-type single-qudit errors X^r Z^s (r,s != 0): the nodes they activate
// and how many two-mechanism decompositions the plain graph offers.
struct MechId {
    GraphEdge::Kind kind;
    int site;
    int power;
    auto operator<=>(const MechId&) const = default;
};

struct Hyperedge {
    int qudit = 0;
    int xpow = 1, zpow = 1;
    std::vector<int> nodes;  // cycle-0 node ids
    std::vector<std::pair<MechId, MechId>> decompositions;
    int two_edge_decompositions = 0;
    bool cross_component = false;
};

std::vector<Hyperedge> hyperedges(const CheckMatrix& H);

// DOT rendering with node labels "(S_i, w^a, c)" and error-labeled edges.
std::string graph_dot(const DetectorGraph& g, const CheckMatrix& H);

}  // namespace qec5
