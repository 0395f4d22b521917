#include "tattoo/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>

namespace tattoo {

const char* to_string(GraphError::Kind kind) {
    switch (kind) {
        case GraphError::Kind::Malformed: return "malformed";
        case GraphError::Kind::Loop: return "loop";
        case GraphError::Kind::DuplicateEdge: return "duplicate-edge";
        case GraphError::Kind::Disconnected: return "disconnected";
        case GraphError::Kind::VertexRange: return "vertex-range";
        case GraphError::Kind::NoEdges: return "no-edges";
        case GraphError::Kind::FamilyBound: return "family-bound";
        case GraphError::Kind::TooLarge: return "too-large";
    }
    return "unknown";
}

Graph::Graph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)), adjacency_(std::max(vertex_count, 0)) {
    using K = GraphError::Kind;
    if (edges_.empty()) {
        throw GraphError(K::NoEdges, "graph has no edges");
    }
    if (edges_.size() > kMaxEdges) {
        throw GraphError(K::TooLarge, "graph has " + std::to_string(edges_.size()) + " edges, limit is " +
                                          std::to_string(kMaxEdges));
    }
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto& e : edges_) {
        if (e.a < 0 || e.b < 0 || e.a >= vertex_count_ || e.b >= vertex_count_) {
            throw GraphError(K::VertexRange, "edge " + std::to_string(e.a) + "-" + std::to_string(e.b) +
                                                 " outside 0.." + std::to_string(vertex_count_ - 1));
        }
        if (e.a == e.b) {
            throw GraphError(K::Loop, "loop at vertex " + std::to_string(e.a));
        }
        if (!seen.emplace(std::min(e.a, e.b), std::max(e.a, e.b)).second) {
            throw GraphError(K::DuplicateEdge, "duplicate edge " + std::to_string(e.a) + "-" + std::to_string(e.b));
        }
        adjacency_[e.a].push_back(e.b);
        adjacency_[e.b].push_back(e.a);
    }
    std::vector<bool> reached(vertex_count_, false);
    std::vector<Vertex> stack{0};
    reached[0] = true;
    int count = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : adjacency_[v]) {
            if (!reached[w]) {
                reached[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    if (count != vertex_count_) {
        throw GraphError(K::Disconnected, "graph is disconnected (" + std::to_string(count) + " of " +
                                              std::to_string(vertex_count_) + " vertices reachable from 0)");
    }
}

Digraph::Digraph(std::shared_ptr<const Graph> base, OrientationCode code)
    : base_(std::move(base)), code_(code), out_(base_->vertex_count()), in_(base_->vertex_count()) {
    int m = base_->edge_count();
    tails_.resize(m);
    heads_.resize(m);
    for (int i = 0; i < m; ++i) {
        const Edge& e = base_->edge(i);
        bool reversed = (code_ >> i) & 1U;
        tails_[i] = reversed ? e.b : e.a;
        heads_[i] = reversed ? e.a : e.b;
        out_[tails_[i]].push_back(i);
        in_[heads_[i]].push_back(i);
    }
}

Digraph Digraph::from_arcs(std::shared_ptr<const Graph> base, const std::vector<std::pair<Vertex, Vertex>>& arcs) {
    const Graph& g = *base;
    if (static_cast<int>(arcs.size()) != g.edge_count()) {
        throw GraphError(GraphError::Kind::Malformed, "arc list does not cover every edge exactly once");
    }
    OrientationCode code = 0;
    std::vector<bool> covered(g.edge_count(), false);
    for (const auto& [t, h] : arcs) {
        bool found = false;
        for (int i = 0; i < g.edge_count(); ++i) {
            const Edge& e = g.edge(i);
            if (covered[i]) continue;
            if (e.a == t && e.b == h) {
                found = true;
            } else if (e.a == h && e.b == t) {
                found = true;
                code |= OrientationCode{1} << i;
            }
            if (found) {
                covered[i] = true;
                break;
            }
        }
        if (!found) {
            throw GraphError(GraphError::Kind::Malformed,
                             "arc " + std::to_string(t) + "->" + std::to_string(h) + " matches no unused edge");
        }
    }
    return Digraph(std::move(base), code);
}

std::vector<bool> Digraph::bits() const {
    std::vector<bool> out(arc_count());
    for (int i = 0; i < arc_count(); ++i) out[i] = (code_ >> i) & 1U;
    return out;
}

std::vector<Vertex> Digraph::topological_order() const {
    int n = vertex_count();
    std::vector<int> remaining(n);
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
    for (Vertex v = 0; v < n; ++v) {
        remaining[v] = in_degree(v);
        if (remaining[v] == 0) ready.push(v);
    }
    std::vector<Vertex> order;
    order.reserve(n);
    while (!ready.empty()) {
        Vertex v = ready.top();
        ready.pop();
        order.push_back(v);
        for (ArcId a : out_[v]) {
            if (--remaining[heads_[a]] == 0) ready.push(heads_[a]);
        }
    }
    if (static_cast<int>(order.size()) != n) order.clear();
    return order;
}

bool Digraph::is_acyclic() const { return !topological_order().empty(); }

bool orientation_less(OrientationCode a, OrientationCode b) {
    OrientationCode diff = a ^ b;
    if (diff == 0) return false;
    return (a & (diff & -diff)) == 0;
}

namespace {

void check_bound(bool ok, const std::string& what) {
    if (!ok) throw GraphError(GraphError::Kind::FamilyBound, what);
}

// Appends a chain hub - r_1 - ... - r_{len-1} - hub using fresh rim ids.
void add_hub_cycle(std::vector<Edge>& edges, int& next, int len) {
    int first = next;
    edges.push_back({0, first});
    for (int i = 0; i + 1 < len - 1; ++i) {
        edges.push_back({first + i, first + i + 1});
    }
    edges.push_back({0, first + len - 2});
    next += len - 1;
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Graph build_family(const FamilySpec& spec) {
    return std::visit(
        Overloaded{
            [](const CycleSpec& s) {
                check_bound(s.n >= 3, "cycle needs n >= 3");
                std::vector<Edge> edges;
                for (int i = 0; i + 1 < s.n; ++i) edges.push_back({i, i + 1});
                edges.push_back({0, s.n - 1});
                return Graph(s.n, edges);
            },
            [](const PathSpec& s) {
                check_bound(s.n >= 2, "path needs n >= 2");
                std::vector<Edge> edges;
                for (int i = 0; i + 1 < s.n; ++i) edges.push_back({i, i + 1});
                return Graph(s.n, edges);
            },
            [](const StarSpec& s) {
                check_bound(s.t >= 1, "star needs t >= 1");
                std::vector<Edge> edges;
                for (int i = 1; i <= s.t; ++i) edges.push_back({0, i});
                return Graph(s.t + 1, edges);
            },
            [](const WheelSpec& s) {
                check_bound(s.n >= 3, "wheel needs rim n >= 3");
                std::vector<Edge> edges;
                for (int i = 1; i <= s.n; ++i) edges.push_back({0, i});
                for (int i = 1; i < s.n; ++i) edges.push_back({i, i + 1});
                edges.push_back({1, s.n});
                return Graph(s.n + 1, edges);
            },
            [](const FriendshipSpec& s) {
                check_bound(s.cycle_len >= 3, "friendship cycle length needs q >= 3");
                check_bound(s.copies >= 1, "friendship needs at least one copy");
                std::vector<Edge> edges;
                int next = 1;
                for (int j = 0; j < s.copies; ++j) add_hub_cycle(edges, next, s.cycle_len);
                return Graph(next, edges);
            },
            [](const GeneralFriendshipSpec& s) {
                check_bound(!s.families.empty(), "general friendship needs at least one cycle family");
                std::vector<Edge> edges;
                int next = 1;
                for (const auto& [len, copies] : s.families) {
                    check_bound(len >= 3, "general friendship cycle length needs >= 3");
                    check_bound(copies >= 1, "general friendship copies need >= 1");
                    for (int j = 0; j < copies; ++j) add_hub_cycle(edges, next, len);
                }
                return Graph(next, edges);
            },
            [](const JoostSpec& s) {
                check_bound(s.n >= 3, "Joost graph needs path order n >= 3");
                check_bound(s.k >= 1, "Joost graph needs k >= 1 paths");
                std::vector<Edge> edges;
                int inner = s.n - 2;
                for (int j = 0; j < s.k; ++j) {
                    int first = 2 + j * inner;
                    edges.push_back({0, first});
                    for (int i = 0; i + 1 < inner; ++i) edges.push_back({first + i, first + i + 1});
                    edges.push_back({first + inner - 1, 1});
                }
                return Graph(2 + s.k * inner, edges);
            },
        },
        spec);
}

namespace {

int parse_int(std::string_view text, std::string_view context) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw GraphError(GraphError::Kind::Malformed,
                         "expected an integer in '" + std::string(context) + "', got '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (true) {
        size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::vector<int> parse_ints(std::string_view params, std::string_view context, size_t expected) {
    std::vector<int> out;
    for (auto part : split(params, ',')) out.push_back(parse_int(part, context));
    if (out.size() != expected) {
        throw GraphError(GraphError::Kind::Malformed, "'" + std::string(context) + "' expects " +
                                                          std::to_string(expected) + " parameter(s)");
    }
    return out;
}

}  // namespace

FamilySpec parse_family_spec(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw GraphError(GraphError::Kind::Malformed, "family spec '" + std::string(text) + "' lacks ':'");
    }
    std::string_view name = text.substr(0, colon);
    std::string_view params = text.substr(colon + 1);
    if (name == "cycle") return CycleSpec{parse_ints(params, text, 1)[0]};
    if (name == "path") return PathSpec{parse_ints(params, text, 1)[0]};
    if (name == "star") return StarSpec{parse_ints(params, text, 1)[0]};
    if (name == "wheel") return WheelSpec{parse_ints(params, text, 1)[0]};
    if (name == "friendship") {
        auto v = parse_ints(params, text, 2);
        return FriendshipSpec{v[0], v[1]};
    }
    if (name == "joost") {
        auto v = parse_ints(params, text, 2);
        return JoostSpec{v[0], v[1]};
    }
    if (name == "genfriendship") {
        GeneralFriendshipSpec spec;
        for (auto term : split(params, '+')) {
            auto x = term.find('x');
            if (x == std::string_view::npos) {
                throw GraphError(GraphError::Kind::Malformed, "genfriendship term '" + std::string(term) +
                                                                  "' must look like LENxCOPIES");
            }
            spec.families.emplace_back(parse_int(term.substr(0, x), text), parse_int(term.substr(x + 1), text));
        }
        return spec;
    }
    throw GraphError(GraphError::Kind::Malformed, "unknown family '" + std::string(name) + "'");
}

std::string to_string(const FamilySpec& spec) {
    return std::visit(Overloaded{
                          [](const CycleSpec& s) { return "cycle:" + std::to_string(s.n); },
                          [](const PathSpec& s) { return "path:" + std::to_string(s.n); },
                          [](const StarSpec& s) { return "star:" + std::to_string(s.t); },
                          [](const WheelSpec& s) { return "wheel:" + std::to_string(s.n); },
                          [](const FriendshipSpec& s) {
                              return "friendship:" + std::to_string(s.cycle_len) + "," + std::to_string(s.copies);
                          },
                          [](const GeneralFriendshipSpec& s) {
                              std::string out = "genfriendship:";
                              for (size_t i = 0; i < s.families.size(); ++i) {
                                  if (i) out += "+";
                                  out += std::to_string(s.families[i].first) + "x" + std::to_string(s.families[i].second);
                              }
                              return out;
                          },
                          [](const JoostSpec& s) { return "joost:" + std::to_string(s.n) + "," + std::to_string(s.k); },
                      },
                      spec);
}

Graph parse_edge_list(std::string_view text) {
    std::vector<Edge> edges;
    int max_id = -1;
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::vector<std::string_view> tokens;
        size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) tokens.push_back(line.substr(start, i - start));
        }
        if (tokens.empty()) continue;
        std::string context = "line " + std::to_string(line_no);
        if (tokens.size() != 2) {
            throw GraphError(GraphError::Kind::Malformed, context + ": expected two vertex ids");
        }
        int u = parse_int(tokens[0], context);
        int v = parse_int(tokens[1], context);
        if (u < 0 || v < 0) {
            throw GraphError(GraphError::Kind::Malformed, context + ": vertex ids must be non-negative");
        }
        edges.push_back({u, v});
        max_id = std::max({max_id, u, v});
    }
    return Graph(max_id + 1, std::move(edges));
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    for (const auto& e : g.edges()) out << e.a << ' ' << e.b << '\n';
    return out.str();
}

namespace {

struct OrientationWalker {
    const Graph& g;
    const std::function<bool(OrientationCode)>& visit;
    std::vector<std::vector<Vertex>> out;
    std::vector<int> mark;
    int stamp = 0;

    // True if `to` is reachable from `from` along arcs placed so far.
    bool reaches(Vertex from, Vertex to) {
        ++stamp;
        std::vector<Vertex> stack{from};
        mark[from] = stamp;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            if (v == to) return true;
            for (Vertex w : out[v]) {
                if (mark[w] != stamp) {
                    mark[w] = stamp;
                    stack.push_back(w);
                }
            }
        }
        return false;
    }

    bool walk(int i, OrientationCode code) {
        if (i == g.edge_count()) return visit(code);
        const Edge& e = g.edge(i);
        for (int dir = 0; dir < 2; ++dir) {
            Vertex t = dir ? e.b : e.a;
            Vertex h = dir ? e.a : e.b;
            if (reaches(h, t)) continue;
            out[t].push_back(h);
            bool more = walk(i + 1, dir ? code | (OrientationCode{1} << i) : code);
            out[t].pop_back();
            if (!more) return false;
        }
        return true;
    }
};

}  // namespace

void for_each_acyclic_orientation(const Graph& g, const std::function<bool(OrientationCode)>& visit) {
    OrientationWalker walker{g, visit, std::vector<std::vector<Vertex>>(g.vertex_count()),
                             std::vector<int>(g.vertex_count(), 0)};
    walker.walk(0, 0);
}

std::vector<OrientationCode> acyclic_orientation_codes(const Graph& g) {
    std::vector<OrientationCode> codes;
    for_each_acyclic_orientation(g, [&](OrientationCode c) {
        codes.push_back(c);
        return true;
    });
    return codes;
}

std::vector<Digraph> acyclic_orientations(std::shared_ptr<const Graph> g) {
    std::vector<Digraph> out;
    for (OrientationCode c : acyclic_orientation_codes(*g)) out.emplace_back(g, c);
    return out;
}

namespace {

class AutomorphismSearch {
public:
    AutomorphismSearch(const Graph& g, long budget) : g_(g), n_(g.vertex_count()), budget_(budget), adj_(n_ * n_, 0) {
        for (const Edge& e : g.edges()) adj_[e.a * n_ + e.b] = adj_[e.b * n_ + e.a] = 1;
    }

    // An automorphism fixing 0..i-1 and sending i to j, if one exists.
    std::optional<std::vector<Vertex>> find(Vertex i, Vertex j) {
        perm_.assign(n_, -1);
        used_.assign(n_, 0);
        for (Vertex v = 0; v < i; ++v) perm_[v] = v, used_[v] = 1;
        if (g_.degree(i) != g_.degree(j) || !consistent(i, j)) return std::nullopt;
        perm_[i] = j;
        used_[j] = 1;
        nodes_ = 0;
        if (extend(i + 1)) return perm_;
        return std::nullopt;
    }

private:
    bool consistent(Vertex v, Vertex image) const {
        for (Vertex u = 0; u < n_; ++u) {
            if (perm_[u] >= 0 && adj_[u * n_ + v] != adj_[perm_[u] * n_ + image]) return false;
        }
        return true;
    }

    bool extend(Vertex v) {
        while (v < n_ && perm_[v] >= 0) ++v;
        if (v == n_) return true;
        if (++nodes_ > budget_) return false;
        for (Vertex image = 0; image < n_; ++image) {
            if (used_[image] || g_.degree(image) != g_.degree(v) || !consistent(v, image)) continue;
            perm_[v] = image;
            used_[image] = 1;
            if (extend(v + 1)) return true;
            perm_[v] = -1;
            used_[image] = 0;
        }
        return false;
    }

    const Graph& g_;
    int n_;
    long budget_;
    long nodes_ = 0;
    std::vector<char> adj_;
    std::vector<Vertex> perm_;
    std::vector<char> used_;
};

}  // namespace

std::vector<std::vector<Vertex>> automorphism_generators(const Graph& g, long node_budget) {
    int n = g.vertex_count();
    AutomorphismSearch search(g, node_budget);
    std::vector<std::vector<Vertex>> gens;
    // Coset representatives of each point stabiliser in the chain fixing
    // 0, 1, ... in turn generate the whole group.
    for (Vertex i = 0; i < n; ++i) {
        std::vector<char> reached(n, 0);
        reached[i] = 1;
        std::vector<std::vector<Vertex>> level;
        for (Vertex j = i + 1; j < n; ++j) {
            if (reached[j]) continue;
            auto perm = search.find(i, j);
            if (!perm) continue;
            level.push_back(*perm);
            // Close the orbit of i under this level's generators.
            bool grew = true;
            while (grew) {
                grew = false;
                for (Vertex v = 0; v < n; ++v) {
                    if (!reached[v]) continue;
                    for (const auto& p : level) {
                        if (!reached[p[v]]) reached[p[v]] = 1, grew = true;
                    }
                }
            }
        }
        gens.insert(gens.end(), level.begin(), level.end());
    }
    return gens;
}

OrientationCode permute_orientation(const Graph& g, const std::vector<Vertex>& perm, OrientationCode code) {
    std::map<std::pair<Vertex, Vertex>, int> edge_id;
    for (int e = 0; e < g.edge_count(); ++e) edge_id[{g.edge(e).a, g.edge(e).b}] = e;
    OrientationCode out = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
        Vertex tail = g.edge(e).a, head = g.edge(e).b;
        if (code >> e & 1) std::swap(tail, head);
        Vertex a = perm[tail], b = perm[head];
        auto it = edge_id.find({a, b});
        if (it != edge_id.end()) continue;  // arc keeps the stored direction
        it = edge_id.find({b, a});
        if (it == edge_id.end()) throw std::invalid_argument("permutation is not an automorphism");
        out |= OrientationCode{1} << it->second;
    }
    return out;
}

}  // namespace tattoo
