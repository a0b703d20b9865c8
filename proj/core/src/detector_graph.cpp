#include "qec5/detector_graph.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace qec5 {

SyndromeRecord record_from_shifts(const SyndromeCircuit& sc, const std::vector<int>& shifts) {
    if (shifts.size() != sc.meas_order.size())
        throw std::invalid_argument("record_from_shifts: measurement count mismatch");
    SyndromeRecord rec;
    rec.q = sc.circuit.q;
    rec.outcomes.assign(sc.cycles, {0, 0, 0, 0});
    rec.flags.assign(sc.cycles, {0, 0, 0, 0});
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        const MeasSlot& slot = sc.meas_order[i];
        (slot.is_flag ? rec.flags : rec.outcomes)[slot.cycle][slot.block] = shifts[i];
    }
    return rec;
}

DetectorNode DetectorGraph::node(int id) const {
    const int per = nodes_per_cycle();
    DetectorNode n;
    n.cycle = id / per;
    id %= per;
    n.stab = id / (dim.q - 1);
    n.value = id % (dim.q - 1) + 1;
    return n;
}

int DetectorGraph::conj(int id) const {
    DetectorNode n = node(id);
    return node_id(n.stab, dim.q - n.value, n.cycle);
}

std::vector<int> DetectorGraph::component_labels() const {
    std::vector<int> label(node_count(), -1);
    int next = 0;
    for (int start = 0; start < node_count(); ++start) {
        if (label[start] >= 0) continue;
        std::vector<int> stack{start};
        label[start] = next;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int ei : incident[u]) {
                const auto& e = edges[ei];
                for (int v : {e.a, e.b}) {
                    if (v >= 0 && label[v] < 0) {
                        label[v] = next;
                        stack.push_back(v);
                    }
                }
            }
        }
        ++next;
    }
    return label;
}

int DetectorGraph::component_count() const {
    auto labels = component_labels();
    int maxl = -1;
    for (int l : labels) maxl = std::max(maxl, l);
    return maxl + 1;
}

void DetectorGraph::rebuild_incidence() {
    incident.assign(node_count(), {});
    for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
        incident[edges[ei].a].push_back(ei);
        if (edges[ei].b >= 0) incident[edges[ei].b].push_back(ei);
    }
}

DetectorGraph build_graph(const CheckMatrix& H, int cycles, double meas_weight) {
    const int q = H.dim.q;
    DetectorGraph g{H.dim, cycles, {}, {}};
    auto add_edge = [&](GraphEdge e) {
        g.edges.push_back(e);
    };

    for (int c = 0; c < cycles; ++c) {
        for (int d = 0; d < 5; ++d) {
            // X^t errors are caught by rows with Z support on d.
            std::vector<int> zrows, xrows;
            for (int i = 0; i < 4; ++i) {
                if (H.zpart[i][d] != 0) zrows.push_back(i);
                if (H.xpart[i][d] != 0) xrows.push_back(i);
            }
            for (int t = 1; t < q; ++t) {
                GraphEdge e;
                e.kind = GraphEdge::Kind::SpaceX;
                e.site = d;
                e.power = t;
                e.cycle = c;
                e.a = g.node_id(zrows[0], mod_q(H.zpart[zrows[0]][d] * t, q), c);
                e.b = zrows.size() > 1
                          ? g.node_id(zrows[1], mod_q(H.zpart[zrows[1]][d] * t, q), c)
                          : -1;
                add_edge(e);
            }
            // Z^u errors are caught by rows with X support on d.
            for (int u = 1; u < q; ++u) {
                GraphEdge e;
                e.kind = GraphEdge::Kind::SpaceZ;
                e.site = d;
                e.power = u;
                e.cycle = c;
                e.a = g.node_id(xrows[0], mod_q(-H.xpart[xrows[0]][d] * u, q), c);
                e.b = xrows.size() > 1
                          ? g.node_id(xrows[1], mod_q(-H.xpart[xrows[1]][d] * u, q), c)
                          : -1;
                add_edge(e);
            }
        }
        if (c + 1 < cycles) {
            for (int a = 0; a < 4; ++a)
                for (int v = 1; v < q; ++v) {
                    GraphEdge e;
                    e.kind = GraphEdge::Kind::Meas;
                    e.site = a;
                    e.power = v;
                    e.cycle = c;
                    e.a = g.node_id(a, v, c);
                    e.b = g.node_id(a, q - v, c + 1);
                    e.weight = meas_weight;
                    add_edge(e);
                }
        }
    }
    g.rebuild_incidence();
    return g;
}

std::vector<DetectionEvent> detection_events(const SyndromeRecord& record) {
    std::vector<DetectionEvent> events;
    if (record.outcomes.empty()) return events;
    const int cycles = record.cycles();
    for (int c = 0; c < cycles; ++c)
        for (int a = 0; a < 4; ++a) {
            int prev = c == 0 ? 0 : record.outcomes[c - 1][a];
            int diff = mod_q(record.outcomes[c][a] - prev, record.q);
            if (diff != 0) events.push_back({a, c, diff});
        }
    return events;
}

std::vector<int> activate(const DetectorGraph& g, const std::vector<DetectionEvent>& events) {
    std::vector<int> nodes;
    for (const auto& ev : events) {
        int v = mod_q(ev.value, g.dim.q);
        if (v == 0) throw std::invalid_argument("activate: zero event value");
        if (ev.cycle < 0 || ev.cycle >= g.cycles)
            throw std::out_of_range("activate: event cycle outside graph");
        nodes.push_back(g.node_id(ev.anc, v, ev.cycle));
    }
    return nodes;
}

namespace {

// Event signature of a single mechanism at cycle 0: node -> value delta.
std::map<int, int> mechanism_signature(const DetectorGraph& g, const GraphEdge& e) {
    std::map<int, int> sig;
    auto addnode = [&](int id) {
        if (id < 0) return;
        DetectorNode n = g.node(id);
        sig[n.stab] = mod_q(sig.count(n.stab) ? sig[n.stab] + n.value : n.value, g.dim.q);
    };
    addnode(e.a);
    addnode(e.b);
    return sig;
}

}  // namespace

std::vector<Hyperedge> hyperedges(const CheckMatrix& H) {
    const int q = H.dim.q;
    DetectorGraph g = build_graph(H, 1);
    auto labels = g.component_labels();
    auto rows = H.stabilizers();

    // Precompute each space mechanism's stabilizer-value signature.
    std::vector<std::map<int, int>> sigs;
    for (const auto& e : g.edges) sigs.push_back(mechanism_signature(g, e));

    std::vector<Hyperedge> result;
    for (int d = 0; d < 5; ++d)
        for (int r = 1; r < q; ++r)
            for (int s = 1; s < q; ++s) {
                Hyperedge h;
                h.qudit = d;
                h.xpow = r;
                h.zpow = s;
                PauliString err = PauliString::single(H.dim, 5, d, r, s);
                auto syn = syndrome_of(err, rows);
                std::map<int, int> target;
                for (int i = 0; i < 4; ++i)
                    if (syn[i] != 0) {
                        h.nodes.push_back(g.node_id(i, syn[i], 0));
                        target[i] = syn[i];
                    }
                // Enumerate unordered pairs of distinct mechanisms matching
                // the signature.
                for (std::size_t i = 0; i < g.edges.size(); ++i)
                    for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
                        std::map<int, int> sum = sigs[i];
                        for (auto [st, v] : sigs[j])
                            sum[st] = mod_q(sum.count(st) ? sum[st] + v : v, q);
                        for (auto it = sum.begin(); it != sum.end();)
                            it = it->second == 0 ? sum.erase(it) : std::next(it);
                        if (sum == target)
                            h.decompositions.push_back(
                                {{g.edges[i].kind, g.edges[i].site, g.edges[i].power},
                                 {g.edges[j].kind, g.edges[j].site, g.edges[j].power}});
                    }
                h.two_edge_decompositions = static_cast<int>(h.decompositions.size());
                bool cross = false;
                for (std::size_t i = 1; i < h.nodes.size(); ++i)
                    if (labels[h.nodes[i]] != labels[h.nodes[0]]) cross = true;
                h.cross_component = cross;
                result.push_back(h);
            }
    return result;
}

std::string graph_dot(const DetectorGraph& g, const CheckMatrix&) {
    std::ostringstream out;
    out << "graph detectors {\n";
    for (int id = 0; id < g.node_count(); ++id) {
        DetectorNode n = g.node(id);
        out << "  n" << id << " [label=\"(S_" << n.stab << ", w^" << n.value << ", " << n.cycle
            << ")\"];\n";
    }
    out << "  boundary [shape=box];\n";
    for (const auto& e : g.edges) {
        out << "  n" << e.a << " -- ";
        if (e.b >= 0) out << "n" << e.b;
        else out << "boundary";
        out << " [label=\"";
        switch (e.kind) {
            case GraphEdge::Kind::SpaceX: out << "X" << e.power << "_" << e.site; break;
            case GraphEdge::Kind::SpaceZ: out << "Z" << e.power << "_" << e.site; break;
            case GraphEdge::Kind::Meas: out << "m" << e.power << "_A" << e.site; break;
            case GraphEdge::Kind::Composite: out << "c" << e.site << "^" << e.power; break;
        }
        out << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace qec5
