#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "qec5/decoder.hpp"

namespace qec5 {

std::optional<DecoderKind> decoder_from_name(const std::string& name) {
    if (name == "mwpm") return DecoderKind::Mwpm;
    if (name == "bp") return DecoderKind::Bp;
    if (name == "bm") return DecoderKind::Bm;
    return std::nullopt;
}

std::string decoder_name(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::Mwpm: return "mwpm";
        case DecoderKind::Bp: return "bp";
        case DecoderKind::Bm: return "bm";
    }
    return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dijkstra over "ports". Sitting at port p means p's event still needs an
// explanation; using an incident mechanism explains it and creates an event
// at the mechanism's other endpoint m, whose cancellation continues from
// conj(m). Arrival at a node (as opposed to passing through) happens on the
// edge that lands there.
struct PathSearch {
    const DetectorGraph& g;
    std::vector<double> port_dist;
    std::vector<std::pair<int, int>> port_parent;  // (previous port, edge)
    std::vector<double> arrive_dist;               // best arrival cost at each node
    std::vector<std::pair<int, int>> arrive_via;   // (port, edge) of best arrival
    double boundary_dist = kInf;
    std::pair<int, int> boundary_via{-1, -1};

    explicit PathSearch(const DetectorGraph& graph, int start) : g(graph) {
        const int n = g.node_count();
        port_dist.assign(n, kInf);
        port_parent.assign(n, {-1, -1});
        arrive_dist.assign(n, kInf);
        arrive_via.assign(n, {-1, -1});
        using Entry = std::pair<double, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
        port_dist[start] = 0;
        pq.push({0, start});
        while (!pq.empty()) {
            auto [d, p] = pq.top();
            pq.pop();
            if (d > port_dist[p] + 1e-12) continue;
            for (int ei : g.incident[p]) {
                const auto& e = g.edges[ei];
                int other = e.a == p ? e.b : (e.b == p ? e.a : -2);
                if (other == -2) continue;  // incident via the other endpoint only
                double nd = d + e.weight;
                if (other < 0) {
                    if (nd < boundary_dist - 1e-15) {
                        boundary_dist = nd;
                        boundary_via = {p, ei};
                    }
                    continue;
                }
                if (nd < arrive_dist[other] - 1e-15) {
                    arrive_dist[other] = nd;
                    arrive_via[other] = {p, ei};
                }
                int next_port = g.conj(other);
                if (nd < port_dist[next_port] - 1e-15) {
                    port_dist[next_port] = nd;
                    port_parent[next_port] = {p, ei};
                    pq.push({nd, next_port});
                }
            }
        }
    }

    std::vector<int> path_edges_to(int node) const {
        std::vector<int> edges;
        auto [p, ei] = arrive_via[node];
        if (ei < 0) throw std::runtime_error("mwpm: unreachable pairing requested");
        edges.push_back(ei);
        while (p >= 0) {
            auto [pp, pe] = port_parent[p];
            if (pe < 0) break;
            edges.push_back(pe);
            p = pp;
        }
        return edges;
    }

    std::vector<int> path_edges_to_boundary() const {
        std::vector<int> edges;
        auto [p, ei] = boundary_via;
        if (ei < 0) throw std::runtime_error("mwpm: no boundary path");
        edges.push_back(ei);
        while (p >= 0) {
            auto [pp, pe] = port_parent[p];
            if (pe < 0) break;
            edges.push_back(pe);
            p = pp;
        }
        return edges;
    }
};

}  // namespace

PauliString decode_mwpm(const DetectorGraph& g, const std::vector<DetectionEvent>& events,
                        Rng* rng) {
    const Dim dim(g.dim.q);
    PauliString inferred(dim, 5);
    auto active = activate(g, events);
    // Merge duplicate activations (possible only with malformed input).
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());
    const int n = static_cast<int>(active.size());
    if (n == 0) return inferred;
    if (n > 24) throw std::runtime_error("mwpm: too many detection events for exact matching");

    std::vector<PathSearch> searches;
    searches.reserve(n);
    for (int i = 0; i < n; ++i) searches.emplace_back(g, active[i]);

    std::vector<std::vector<double>> pair_cost(n, std::vector<double>(n, kInf));
    std::vector<double> bnd_cost(n);
    for (int i = 0; i < n; ++i) {
        bnd_cost[i] = searches[i].boundary_dist;
        for (int j = 0; j < n; ++j)
            if (j != i) pair_cost[i][j] = searches[i].arrive_dist[active[j]];
    }
    // Symmetrize (Dijkstra direction can matter only through ties).
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pair_cost[i][j] = pair_cost[j][i] = std::min(pair_cost[i][j], pair_cost[j][i]);

    // Exact matching over subsets; each node pairs with another or with the
    // boundary.
    const std::uint32_t full = (1u << n) - 1;
    std::vector<double> best(full + 1, -1.0);
    best[0] = 0.0;
    auto solve = [&](auto&& self, std::uint32_t mask) -> double {
        if (best[mask] >= 0) return best[mask];
        int i = __builtin_ctz(mask);
        double r = bnd_cost[i] + self(self, mask & ~(1u << i));
        std::uint32_t rest = mask & ~(1u << i);
        for (std::uint32_t mm = rest; mm; mm &= mm - 1) {
            int j = __builtin_ctz(mm);
            if (pair_cost[i][j] < kInf)
                r = std::min(r, pair_cost[i][j] + self(self, mask & ~(1u << i) & ~(1u << j)));
        }
        return best[mask] = r;
    };
    solve(solve, full);

    // Reconstruct, sampling uniformly among equal-cost branches.
    const double tol = 1e-9;
    std::uint32_t mask = full;
    std::vector<std::pair<int, int>> pairs;  // (i, j) or (i, -1) for boundary
    while (mask) {
        int i = __builtin_ctz(mask);
        double target = best[mask];
        std::vector<std::pair<double, int>> options;  // (cost, partner)
        if (bnd_cost[i] + best[mask & ~(1u << i)] <= target + tol) options.push_back({0, -1});
        for (std::uint32_t mm = mask & ~(1u << i); mm; mm &= mm - 1) {
            int j = __builtin_ctz(mm);
            if (pair_cost[i][j] < kInf &&
                pair_cost[i][j] + best[mask & ~(1u << i) & ~(1u << j)] <= target + tol)
                options.push_back({0, j});
        }
        if (options.empty()) throw std::logic_error("mwpm: reconstruction failed");
        int pick = rng ? rng->uniform_int(static_cast<int>(options.size())) : 0;
        int j = options[pick].second;
        pairs.push_back({i, j});
        mask &= ~(1u << i);
        if (j >= 0) mask &= ~(1u << j);
    }

    // Compose mechanism errors along each chosen path; correction = adjoint.
    auto absorb = [&](const std::vector<int>& path_edges) {
        for (int ei : path_edges) {
            const auto& e = g.edges[ei];
            if (e.kind == GraphEdge::Kind::Meas) continue;
            if (e.kind == GraphEdge::Kind::Composite) {
                const auto& comp = (*g.composites)[e.site];
                PauliString scaled(dim, 5);
                for (int i = 0; i < 5; ++i) {
                    scaled.xs[i] =
                        mod_q(static_cast<long long>(comp.residual.xs[i]) * e.power, dim.q);
                    scaled.zs[i] =
                        mod_q(static_cast<long long>(comp.residual.zs[i]) * e.power, dim.q);
                }
                inferred = pauli_mul(inferred, scaled);
                continue;
            }
            PauliString mech =
                e.kind == GraphEdge::Kind::SpaceX
                    ? PauliString::single(dim, 5, e.site, e.power, 0)
                    : PauliString::single(dim, 5, e.site, 0, e.power);
            inferred = pauli_mul(inferred, mech);
        }
    };
    for (auto [i, j] : pairs) {
        if (j < 0) {
            // Prefer the cheaper direction's boundary path (they tie by symmetry
            // of construction only when unique; i's own search is authoritative).
            absorb(searches[i].path_edges_to_boundary());
        } else {
            // Use whichever direction realizes the symmetrized cost.
            if (searches[i].arrive_dist[active[j]] <= searches[j].arrive_dist[active[i]] + tol)
                absorb(searches[i].path_edges_to(active[j]));
            else
                absorb(searches[j].path_edges_to(active[i]));
        }
    }
    PauliString corr = inferred.adjoint();
    corr.phase2 = 0;
    return corr;
}

}  // namespace qec5
