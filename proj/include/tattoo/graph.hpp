#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace tattoo {

using Vertex = int;
using ArcId = int;

/// Orientation code: bit i set means edge i runs from its second endpoint to
/// its first. Graphs are limited to 64 edges so a code fits one word.
using OrientationCode = std::uint64_t;

inline constexpr int kMaxEdges = 64;

class GraphError : public std::runtime_error {
public:
    enum class Kind { Malformed, Loop, DuplicateEdge, Disconnected, VertexRange, NoEdges, FamilyBound, TooLarge };

    GraphError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

const char* to_string(GraphError::Kind kind);

struct Edge {
    Vertex a;
    Vertex b;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple connected undirected graph on vertices 0..n-1. Edge order is part of
/// the identity: it fixes arc ids and orientation codes.
class Graph {
public:
    Graph(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_[i]; }
    const std::vector<Vertex>& neighbours(Vertex v) const { return adjacency_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
    }

private:
    int vertex_count_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
};

/// One orientation of a Graph. Arc i corresponds to edge i.
class Digraph {
public:
    Digraph(std::shared_ptr<const Graph> base, OrientationCode code);

    /// Builds the orientation matching the given (tail, head) pairs; every edge
    /// must be covered exactly once.
    static Digraph from_arcs(std::shared_ptr<const Graph> base, const std::vector<std::pair<Vertex, Vertex>>& arcs);

    const Graph& base() const { return *base_; }
    const std::shared_ptr<const Graph>& base_ptr() const { return base_; }
    OrientationCode code() const { return code_; }
    int vertex_count() const { return base_->vertex_count(); }
    int arc_count() const { return base_->edge_count(); }
    Vertex tail(ArcId a) const { return tails_[a]; }
    Vertex head(ArcId a) const { return heads_[a]; }
    const std::vector<ArcId>& out_arcs(Vertex v) const { return out_[v]; }
    const std::vector<ArcId>& in_arcs(Vertex v) const { return in_[v]; }
    int out_degree(Vertex v) const { return static_cast<int>(out_[v].size()); }
    int in_degree(Vertex v) const { return static_cast<int>(in_[v].size()); }

    /// Per-edge direction flags, edge 0 first.
    std::vector<bool> bits() const;

    bool is_acyclic() const;

    /// Kahn order, always taking the smallest available vertex id. Empty when
    /// the orientation has a directed cycle.
    std::vector<Vertex> topological_order() const;

private:
    std::shared_ptr<const Graph> base_;
    OrientationCode code_;
    std::vector<Vertex> tails_;
    std::vector<Vertex> heads_;
    std::vector<std::vector<ArcId>> out_;
    std::vector<std::vector<ArcId>> in_;
};

/// Lexicographic comparison of orientation bit-vectors (edge 0 most significant).
bool orientation_less(OrientationCode a, OrientationCode b);

// Named families. Vertex 0 is always the hub / common vertex.
struct CycleSpec { int n; };
struct PathSpec { int n; };
struct StarSpec { int t; };
struct WheelSpec { int n; };  // W_{n+1} = C_n + K_1
struct FriendshipSpec { int cycle_len; int copies; };
struct GeneralFriendshipSpec { std::vector<std::pair<int, int>> families; };  // (cycle_len, copies)
struct JoostSpec { int n; int k; };  // k paths of order n between u1 = 0 and u2 = 1

using FamilySpec = std::variant<CycleSpec, PathSpec, StarSpec, WheelSpec, FriendshipSpec, GeneralFriendshipSpec, JoostSpec>;

Graph build_family(const FamilySpec& spec);

/// Parses `name:params`, e.g. `cycle:7`, `friendship:3,6`, `joost:4,7`,
/// `genfriendship:3x2+4x1`, `star:5`, `wheel:4`, `path:9`.
FamilySpec parse_family_spec(std::string_view text);
std::string to_string(const FamilySpec& spec);

/// Lines of "u v"; blank lines and '#' comments are skipped.
Graph parse_edge_list(std::string_view text);
std::string to_edge_list(const Graph& g);

/// Visits every acyclic orientation exactly once, in lexicographic order of the
/// orientation bit-vector. Returning false from the visitor stops the walk.
void for_each_acyclic_orientation(const Graph& g, const std::function<bool(OrientationCode)>& visit);
std::vector<OrientationCode> acyclic_orientation_codes(const Graph& g);
std::vector<Digraph> acyclic_orientations(std::shared_ptr<const Graph> g);

/// Vertex permutations generating the automorphism group of `g` (perm[v] is
/// the image of v). The backtracking is capped by `node_budget` per search;
/// when the cap is hit the result generates a subgroup, which is still sound
/// for symmetry reduction.
std::vector<std::vector<Vertex>> automorphism_generators(const Graph& g, long node_budget = 200000);

/// The orientation obtained by relabelling every arc through `perm`, which
/// must be an automorphism of `g`.
OrientationCode permute_orientation(const Graph& g, const std::vector<Vertex>& perm, OrientationCode code);

}  // namespace tattoo
