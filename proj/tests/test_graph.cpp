#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "tattoo/graph.hpp"

using namespace tattoo;

namespace {

std::shared_ptr<const Graph> shared(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

// Reference count: every orientation, filtered by an independent cycle check
// (repeated removal of sources).
long brute_force_acyclic_count(const Graph& g) {
    long count = 0;
    for (OrientationCode code = 0; code < (OrientationCode{1} << g.edge_count()); ++code) {
        std::vector<int> indeg(g.vertex_count(), 0);
        std::vector<std::vector<int>> out(g.vertex_count());
        for (int i = 0; i < g.edge_count(); ++i) {
            auto [a, b] = g.edge(i);
            if (code >> i & 1) std::swap(a, b);
            out[a].push_back(b);
            ++indeg[b];
        }
        std::vector<int> stack;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (indeg[v] == 0) stack.push_back(v);
        }
        int removed = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++removed;
            for (int w : out[v]) {
                if (--indeg[w] == 0) stack.push_back(w);
            }
        }
        if (removed == g.vertex_count()) ++count;
    }
    return count;
}

GraphError::Kind parse_error_kind(const std::string& text) {
    try {
        parse_edge_list(text);
    } catch (const GraphError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for: " << text;
    return GraphError::Kind::Malformed;
}

}  // namespace

TEST(BuildFamily, JoostSevenPathsOfOrderFourHas21Edges) {
    Graph g = build_family(JoostSpec{4, 7});
    EXPECT_EQ(g.edge_count(), 21);
    EXPECT_EQ(g.vertex_count(), 2 + 7 * 2);
}

TEST(BuildFamily, FriendshipSixTrianglesHas18Edges) {
    Graph g = build_family(FriendshipSpec{3, 6});
    EXPECT_EQ(g.edge_count(), 18);
    EXPECT_EQ(g.vertex_count(), 6 * 2 + 1);
    EXPECT_EQ(g.degree(0), 12);
}

TEST(BuildFamily, SizesFollowTheFamilyCounts) {
    for (int n = 3; n <= 6; ++n) {
        for (int k = 1; k <= 4; ++k) {
            Graph g = build_family(JoostSpec{n, k});
            EXPECT_EQ(g.vertex_count(), 2 + k * (n - 2));
            EXPECT_EQ(g.edge_count(), k * (n - 1));
        }
    }
    for (int q = 3; q <= 5; ++q) {
        for (int n = 1; n <= 4; ++n) {
            Graph g = build_family(FriendshipSpec{q, n});
            EXPECT_EQ(g.vertex_count(), n * (q - 1) + 1);
            EXPECT_EQ(g.edge_count(), q * n);
        }
    }
    EXPECT_EQ(build_family(WheelSpec{5}).edge_count(), 10);
    EXPECT_EQ(build_family(StarSpec{4}).edge_count(), 4);
}

TEST(BuildFamily, PathOfOrderTwoIsSingleEdge) {
    Graph g = build_family(PathSpec{2});
    EXPECT_EQ(g.vertex_count(), 2);
    ASSERT_EQ(g.edge_count(), 1);
    EXPECT_EQ(g.edge(0), (Edge{0, 1}));
}

TEST(BuildFamily, IsDeterministic) {
    EXPECT_EQ(build_family(JoostSpec{4, 3}), build_family(JoostSpec{4, 3}));
    EXPECT_EQ(build_family(GeneralFriendshipSpec{{{4, 1}, {3, 2}}}), build_family(GeneralFriendshipSpec{{{4, 1}, {3, 2}}}));
}

TEST(BuildFamily, OutOfBoundParametersNameTheBound) {
    EXPECT_THROW(build_family(CycleSpec{2}), GraphError);
    EXPECT_THROW(build_family(PathSpec{1}), GraphError);
    EXPECT_THROW(build_family(JoostSpec{2, 3}), GraphError);
    try {
        build_family(CycleSpec{2});
    } catch (const GraphError& e) {
        EXPECT_EQ(e.kind(), GraphError::Kind::FamilyBound);
        EXPECT_NE(std::string(e.what()).find("n >= 3"), std::string::npos);
    }
}

TEST(FamilySpecText, RoundTrips) {
    for (const char* text : {"cycle:7", "path:9", "star:5", "wheel:4", "friendship:3,6", "joost:4,7", "genfriendship:3x2+4x1"}) {
        EXPECT_EQ(to_string(parse_family_spec(text)), text);
    }
    EXPECT_THROW(parse_family_spec("cycle"), GraphError);
    EXPECT_THROW(parse_family_spec("hexagon:3"), GraphError);
    EXPECT_THROW(parse_family_spec("joost:4"), GraphError);
}

TEST(ParseEdgeList, TriangleParses) {
    Graph g = parse_edge_list("0 1\n1 2\n2 0\n");
    EXPECT_EQ(g.vertex_count(), 3);
    EXPECT_EQ(g.edge_count(), 3);
}

TEST(ParseEdgeList, SkipsCommentsAndBlankLines) {
    Graph g = parse_edge_list("# a path\n\n0 1\n  1 2  # tail\n");
    EXPECT_EQ(g.edge_count(), 2);
    EXPECT_EQ(parse_edge_list(to_edge_list(g)), g);
}

TEST(ParseEdgeList, ErrorsHaveDistinctCategories) {
    EXPECT_EQ(parse_error_kind("0 1\n0 1\n"), GraphError::Kind::DuplicateEdge);
    EXPECT_EQ(parse_error_kind("0 1\n1 0\n"), GraphError::Kind::DuplicateEdge);
    EXPECT_EQ(parse_error_kind("0 1\n2 3\n"), GraphError::Kind::Disconnected);
    EXPECT_EQ(parse_error_kind("0 0\n"), GraphError::Kind::Loop);
    EXPECT_EQ(parse_error_kind("0 x\n"), GraphError::Kind::Malformed);
    EXPECT_EQ(parse_error_kind("0 1 2\n"), GraphError::Kind::Malformed);
    EXPECT_EQ(parse_error_kind("# nothing\n"), GraphError::Kind::NoEdges);
}

TEST(AcyclicOrientations, TriangleHasSix) {
    auto g = shared(build_family(CycleSpec{3}));
    EXPECT_EQ(acyclic_orientations(g).size(), 6u);
}

TEST(AcyclicOrientations, PathOnThreeVerticesHasFour) {
    auto g = shared(build_family(PathSpec{3}));
    auto all = acyclic_orientations(g);
    EXPECT_EQ(all.size(), 4u);
    for (const Digraph& d : all) EXPECT_TRUE(d.is_acyclic());
}

TEST(AcyclicOrientations, SquareHasFourteen) {
    EXPECT_EQ(acyclic_orientation_codes(build_family(CycleSpec{4})).size(), 14u);
}

TEST(AcyclicOrientations, CountsMatchBruteForceFilter) {
    for (const char* spec : {"wheel:4", "friendship:3,2", "joost:3,3", "genfriendship:4x1+3x1", "cycle:7", "star:5"}) {
        Graph g = build_family(parse_family_spec(spec));
        auto codes = acyclic_orientation_codes(g);
        EXPECT_EQ(static_cast<long>(codes.size()), brute_force_acyclic_count(g)) << spec;
        std::set<OrientationCode> distinct(codes.begin(), codes.end());
        EXPECT_EQ(distinct.size(), codes.size()) << spec;
        EXPECT_TRUE(std::is_sorted(codes.begin(), codes.end(), orientation_less)) << spec;
    }
}

TEST(Digraph, FromArcsMatchesCode) {
    auto g = shared(build_family(CycleSpec{4}));
    Digraph d(g, 0b0101);
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (ArcId a = 0; a < d.arc_count(); ++a) arcs.emplace_back(d.tail(a), d.head(a));
    EXPECT_EQ(Digraph::from_arcs(g, arcs).code(), d.code());
    arcs.pop_back();
    EXPECT_THROW(Digraph::from_arcs(g, arcs), GraphError);
}

TEST(Digraph, DirectedTriangleIsCyclic) {
    auto g = shared(parse_edge_list("0 1\n1 2\n2 0\n"));
    Digraph d(g, 0);
    EXPECT_FALSE(d.is_acyclic());
    EXPECT_TRUE(d.topological_order().empty());
}

TEST(Automorphisms, GeneratorsPreserveEdgesAndMapOrientations) {
    for (const char* spec : {"cycle:6", "joost:4,3", "friendship:3,3", "wheel:5"}) {
        Graph g = build_family(parse_family_spec(spec));
        auto gens = automorphism_generators(g);
        EXPECT_FALSE(gens.empty()) << spec;
        std::set<std::pair<int, int>> edges;
        for (const Edge& e : g.edges()) edges.insert(std::minmax(e.a, e.b));
        auto codes = acyclic_orientation_codes(g);
        std::set<OrientationCode> acyclic(codes.begin(), codes.end());
        for (const auto& perm : gens) {
            for (const Edge& e : g.edges()) EXPECT_TRUE(edges.count(std::minmax(perm[e.a], perm[e.b]))) << spec;
            for (OrientationCode c : codes) EXPECT_TRUE(acyclic.count(permute_orientation(g, perm, c))) << spec;
        }
    }
}
