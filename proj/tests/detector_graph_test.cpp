#include "qec5/detector_graph.hpp"

#include <gtest/gtest.h>

#include "qec5/pauli_frame.hpp"

using namespace qec5;

TEST(graph, node_counts_and_components) {
    const std::map<int, int> expected_components{{2, 1}, {3, 1}, {5, 2}, {7, 3}};
    for (auto [q, comps] : expected_components) {
        auto g = build_graph(build_check_matrix(Dim(q)), 1);
        EXPECT_EQ(g.node_count(), 4 * (q - 1));
        EXPECT_EQ(g.component_count(), comps);
    }
    auto g2 = build_graph(build_check_matrix(Dim(3)), 2);
    EXPECT_EQ(g2.node_count(), 16);
    int time_edges = 0;
    for (const auto& e : g2.edges) time_edges += e.kind == GraphEdge::Kind::Meas;
    EXPECT_EQ(time_edges, 4 * 2);  // 4 ancillas x (q-1) values, one cycle seam
}

TEST(graph, every_space_family_has_at_most_two_endpoints) {
    for (int q : {2, 3, 5, 7}) {
        auto g = build_graph(build_check_matrix(Dim(q)), 1);
        for (const auto& e : g.edges)
            if (e.kind != GraphEdge::Kind::Meas) {
                EXPECT_GE(e.a, 0);
                EXPECT_LT(e.b, g.node_count());
            }
    }
}

TEST(graph, deterministic_construction) {
    auto H = build_check_matrix(Dim(5));
    auto g1 = build_graph(H, 3);
    auto g2 = build_graph(H, 3);
    ASSERT_EQ(g1.edges.size(), g2.edges.size());
    for (std::size_t i = 0; i < g1.edges.size(); ++i) {
        EXPECT_EQ(g1.edges[i].a, g2.edges[i].a);
        EXPECT_EQ(g1.edges[i].b, g2.edges[i].b);
        EXPECT_EQ(g1.edges[i].power, g2.edges[i].power);
    }
}

TEST(events, difference_rule) {
    {
        SyndromeRecord rec;
        rec.q = 3;
        rec.outcomes = {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
        EXPECT_TRUE(detection_events(rec).empty());
    }
    {
        SyndromeRecord rec;
        rec.q = 3;
        rec.outcomes = {{0, 0, 0, 0}, {2, 0, 0, 0}, {2, 0, 0, 0}};
        auto ev = detection_events(rec);
        ASSERT_EQ(ev.size(), 1u);
        EXPECT_EQ(ev[0].anc, 0);
        EXPECT_EQ(ev[0].cycle, 1);
        EXPECT_EQ(ev[0].value, 2);
    }
    {
        SyndromeRecord rec;
        rec.q = 2;
        rec.outcomes = {{1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}};
        auto ev = detection_events(rec);
        ASSERT_EQ(ev.size(), 2u);
        EXPECT_EQ(ev[0].cycle, 0);
        EXPECT_EQ(ev[1].cycle, 2);
    }
}

TEST(events, activation) {
    auto g = build_graph(build_check_matrix(Dim(3)), 2);
    EXPECT_TRUE(activate(g, {}).empty());
    auto nodes = activate(g, {{1, 0, 2}});
    ASSERT_EQ(nodes.size(), 1u);
    auto n = g.node(nodes[0]);
    EXPECT_EQ(n.stab, 1);
    EXPECT_EQ(n.value, 2);  // the w^2 node, not w^1
    EXPECT_EQ(n.cycle, 0);
    EXPECT_THROW(activate(g, {{0, 5, 1}}), std::out_of_range);
    EXPECT_THROW(activate(g, {{0, 0, 3}}), std::invalid_argument);
}

TEST(events, injected_error_activates_edge_endpoints) {
    // Simulate an injected single-qudit error through a noiseless cycle and
    // check the active nodes are exactly that error's edge endpoints.
    Dim dim(2);
    auto H = build_check_matrix(dim);
    auto g = build_graph(H, 1);
    auto sc = build_cycle(dim, false, 1);
    for (int d = 0; d < 5; ++d) {
        Circuit c(dim, sc.circuit.n_qudits);
        c.moments.clear();
        Instruction f;
        f.op = Instruction::Op::Fault;
        f.targets = {d};
        f.fx = {1};
        f.fz = {0};
        c.moments.push_back({f});
        for (const auto& m : sc.circuit.moments) c.moments.push_back(m);
        auto rec = record_from_shifts(sc, pf_run(c).outcome_shifts);
        auto active = activate(g, detection_events(rec));
        std::sort(active.begin(), active.end());
        // Find the X_d edge in the graph.
        for (const auto& e : g.edges)
            if (e.kind == GraphEdge::Kind::SpaceX && e.site == d && e.power == 1) {
                std::vector<int> expect{e.a};
                if (e.b >= 0) expect.push_back(e.b);
                std::sort(expect.begin(), expect.end());
                EXPECT_EQ(active, expect);
            }
    }
}

TEST(hyperedges, degenerate_decompositions) {
    {
        auto hs = hyperedges(build_check_matrix(Dim(2)));
        ASSERT_EQ(hs.size(), 5u);  // one Y per qudit at q=2
        const auto& y0 = hs[0];
        EXPECT_EQ(y0.qudit, 0);
        EXPECT_EQ(y0.nodes.size(), 3u);
        EXPECT_EQ(y0.two_edge_decompositions, 3);
        // The degenerate alternatives on qudit 0 are {Z_1, Z_4} and
        // {X_2, X_3}, next to the direct {X_0, Z_0} split.
        auto has = [&](GraphEdge::Kind k1, int s1, GraphEdge::Kind k2, int s2) {
            for (auto [a, b] : y0.decompositions) {
                if (a.kind == k1 && a.site == s1 && b.kind == k2 && b.site == s2) return true;
                if (b.kind == k1 && b.site == s1 && a.kind == k2 && a.site == s2) return true;
            }
            return false;
        };
        EXPECT_TRUE(has(GraphEdge::Kind::SpaceZ, 1, GraphEdge::Kind::SpaceZ, 4));
        EXPECT_TRUE(has(GraphEdge::Kind::SpaceX, 2, GraphEdge::Kind::SpaceX, 3));
        EXPECT_TRUE(has(GraphEdge::Kind::SpaceX, 0, GraphEdge::Kind::SpaceZ, 0));
    }
    {
        auto hs = hyperedges(build_check_matrix(Dim(3)));
        for (const auto& h : hs) EXPECT_EQ(h.two_edge_decompositions, 2) << "qudit " << h.qudit;
    }
    {
        auto hs = hyperedges(build_check_matrix(Dim(5)));
        int cross = 0;
        for (const auto& h : hs) cross += h.cross_component;
        EXPECT_GT(cross, 0);  // hyperedges spanning both components exist
        for (const auto& h : hs)
            if (h.cross_component) EXPECT_EQ(h.qudit, h.qudit);  // structural smoke
    }
}

TEST(graph, dot_labels) {
    auto H = build_check_matrix(Dim(3));
    auto g = build_graph(H, 1);
    std::string dot = graph_dot(g, H);
    EXPECT_NE(dot.find("(S_0, w^1, 0)"), std::string::npos);
    EXPECT_NE(dot.find("boundary"), std::string::npos);
    EXPECT_NE(dot.find("Z1_0"), std::string::npos);
}
