#include "tattoo/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

namespace tattoo {

namespace {

using Mask = std::uint64_t;

struct Arc {
    int from;
    int to;
};

bool has_cycle(int n, const std::vector<Arc>& arcs) {
    std::vector<std::vector<int>> out(n);
    for (const Arc& a : arcs) out[a.from].push_back(a.to);
    std::vector<int> colour(n, 0);  // 0 new, 1 on stack, 2 done
    std::function<bool(int)> visit = [&](int v) {
        colour[v] = 1;
        for (int w : out[v]) {
            if (colour[w] == 1) return true;
            if (colour[w] == 0 && visit(w)) return true;
        }
        colour[v] = 2;
        return false;
    };
    for (int v = 0; v < n; ++v) {
        if (colour[v] == 0 && visit(v)) return true;
    }
    return false;
}

// One exhaustive play-out of a fixed orientation and plan. Vertices fire in
// increasing id order among those whose in-arcs are all labelled; every
// injective dispatch is tried.
class Playout {
public:
    Playout(int n, const std::vector<Arc>& arcs, Mode mode, Policy policy, int bound)
        : n_(n), arcs_(arcs), mode_(mode), policy_(policy), bound_(bound) {}

    void run(const std::vector<int>& plan, std::optional<std::pair<int, long>>& best) {
        best_ = &best;
        State s;
        s.label.assign(arcs_.size(), 0);
        s.held.assign(n_, 0);
        s.blends.assign(n_, {});
        s.tokens.assign(n_, 0);
        s.fired.assign(n_, false);
        for (int v = 0; v < n_; ++v) {
            s.cost += plan[v];
            if (mode_ == Mode::Brush) {
                s.tokens[v] = plan[v];
            } else if (policy_ == Policy::Smallest) {
                for (int c = 1; c <= plan[v]; ++c) s.held[v] |= Mask{1} << (c - 1);
            } else {
                for (int c = 0; c < plan[v]; ++c) s.held[v] |= Mask{1} << (s.counter++ - 1);
            }
        }
        step(s);
    }

private:
    struct State {
        std::vector<Mask> label;  // 0 = untattooed
        std::vector<Mask> held;
        std::vector<std::set<Mask>> blends;
        std::vector<int> tokens;
        std::vector<bool> fired;
        int cost = 0;
        int counter = 1;
        long sum = 0;
    };

    std::vector<Mask> pool_of(const State& s, int v, Mask held) const {
        std::set<Mask> pool;
        if (mode_ == Mode::Fsg) {
            for (int c = 0; c < 64; ++c) {
                if (held >> c & 1) pool.insert(Mask{1} << c);
            }
        } else {
            for (Mask sub = held; sub != 0; sub = (sub - 1) & held) pool.insert(sub);
            pool.insert(s.blends[v].begin(), s.blends[v].end());
        }
        return {pool.begin(), pool.end()};
    }

    Mask add_colours(State& s, Mask held, int count) const {
        if (policy_ == Policy::Fresh) {
            for (int i = 0; i < count; ++i) held |= Mask{1} << (s.counter++ - 1);
            return held;
        }
        for (int c = 0; count > 0; ++c) {
            if (!(held >> c & 1)) held |= Mask{1} << c, --count;
        }
        return held;
    }

    void step(const State& s) {
        if (s.cost > bound_) return;
        int v = -1;
        std::vector<int> out;
        for (int w = 0; w < n_ && v < 0; ++w) {
            if (s.fired[w]) continue;
            bool ready = true, has_out = false;
            for (size_t a = 0; a < arcs_.size(); ++a) {
                if (arcs_[a].to == w && s.label[a] == 0) ready = false;
                if (arcs_[a].from == w) has_out = true;
            }
            if (ready && has_out) v = w;
        }
        if (v < 0) {
            bool done = std::all_of(s.label.begin(), s.label.end(), [](Mask m) { return m != 0; });
            if (done && (!*best_ || std::make_pair(s.cost, s.sum) < **best_)) *best_ = std::make_pair(s.cost, s.sum);
            return;
        }
        for (size_t a = 0; a < arcs_.size(); ++a) {
            if (arcs_[a].from == v) out.push_back(static_cast<int>(a));
        }
        int demand = static_cast<int>(out.size());

        State next = s;
        next.fired[v] = true;
        if (mode_ == Mode::Brush) {
            int extra = std::max(0, demand - s.tokens[v]);
            next.cost += extra;
            for (int a : out) {
                next.label[a] = 1;
                next.tokens[arcs_[a].to] += 1;
                next.sum += 1;
            }
            step(next);
            return;
        }
        int extra = 0;
        Mask held = s.held[v];
        while (static_cast<int>(pool_of(s, v, held).size()) < demand) {
            next.counter = s.counter;
            held = add_colours(next, s.held[v], ++extra);
        }
        next.cost += extra;
        next.held[v] = held;
        auto pool = pool_of(next, v, held);
        std::vector<bool> taken(pool.size(), false);
        std::function<void(size_t, State&)> assign = [&](size_t i, State& st) {
            if (i == out.size()) {
                step(st);
                return;
            }
            for (size_t k = 0; k < pool.size(); ++k) {
                if (taken[k]) continue;
                taken[k] = true;
                State child = st;
                int a = out[i];
                child.label[a] = pool[k];
                child.sum += label_weight(pool[k]);
                if (std::popcount(pool[k]) == 1) {
                    child.held[arcs_[a].to] |= pool[k];
                } else {
                    child.blends[arcs_[a].to].insert(pool[k]);
                }
                assign(i + 1, child);
                taken[k] = false;
            }
        };
        assign(0, next);
    }

    static long label_weight(Mask m) {
        long w = 0;
        for (int c = 0; c < 64; ++c) {
            if (m >> c & 1) w += c + 1;
        }
        return w;
    }

    int n_;
    const std::vector<Arc>& arcs_;
    Mode mode_;
    Policy policy_;
    int bound_;
    std::optional<std::pair<int, long>>* best_ = nullptr;
};

void each_plan(int n, int total, std::vector<int>& plan, int v, const std::function<void()>& visit) {
    if (v == n - 1) {
        plan[v] = total;
        visit();
        return;
    }
    for (int c = 0; c <= total; ++c) {
        plan[v] = c;
        each_plan(n, total - c, plan, v + 1, visit);
    }
}

}  // namespace

OracleValues oracle_invariants(const Graph& g, Mode mode, int cost_bound, Policy policy) {
    int m = g.edge_count();
    if (m > kOracleMaxEdges) {
        throw SearchLimitError("the oracle handles at most " + std::to_string(kOracleMaxEdges) + " edges; graph has " +
                               std::to_string(m));
    }
    int n = g.vertex_count();
    if (cost_bound <= 0) cost_bound = m;

    std::vector<std::vector<Arc>> orientations;
    for (Mask code = 0; code < (Mask{1} << m); ++code) {
        std::vector<Arc> arcs;
        for (int e = 0; e < m; ++e) {
            const Edge& edge = g.edge(e);
            arcs.push_back(code >> e & 1 ? Arc{edge.b, edge.a} : Arc{edge.a, edge.b});
        }
        if (!has_cycle(n, arcs)) orientations.push_back(std::move(arcs));
    }

    // Iterative deepening on the plan total: the first total at which some
    // strategy completes within budget `bound` is the cost minimum.
    std::optional<std::pair<int, long>> best;
    for (int bound = 1; bound <= cost_bound && !best; ++bound) {
        for (const auto& arcs : orientations) {
            Playout playout(n, arcs, mode, policy, bound);
            std::vector<int> plan(n, 0);
            for (int total = 1; total <= bound; ++total) {
                each_plan(n, total, plan, 0, [&] { playout.run(plan, best); });
            }
        }
    }
    if (!best) throw InfeasibleError("no strategy completes within cost " + std::to_string(cost_bound));

    auto [cost, sum] = *best;
    OracleValues out;
    out[cost_quantity(mode)] = static_cast<long>(cost);
    out[Quantity::MinLabelSum] = sum;
    out[Quantity::Index] = Rational(m, static_cast<long>(cost) * sum);
    out[Quantity::RawRatio] = Rational(m, sum);
    return out;
}

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

EdgeList canonical_form(int n, const EdgeList& edges) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    EdgeList best;
    do {
        EdgeList mapped;
        for (auto [a, b] : edges) {
            int x = perm[a], y = perm[b];
            mapped.emplace_back(std::min(x, y), std::max(x, y));
        }
        std::sort(mapped.begin(), mapped.end());
        if (best.empty() || mapped < best) best = std::move(mapped);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::vector<Graph> connected_graph_corpus(int max_edges) {
    if (max_edges > kOracleMaxEdges) {
        throw SearchLimitError("the corpus is limited to " + std::to_string(kOracleMaxEdges) + " edges");
    }
    std::vector<Graph> corpus;
    if (max_edges < 1) return corpus;
    // Grow every class by one edge (between existing vertices or to a new
    // vertex), keeping one canonical representative per class.
    std::set<std::pair<int, EdgeList>> layer{{2, EdgeList{{0, 1}}}};
    for (int e = 1;; ++e) {
        for (const auto& [n, edges] : layer) {
            std::vector<Edge> list;
            for (auto [a, b] : edges) list.push_back({a, b});
            corpus.emplace_back(n, std::move(list));
        }
        if (e == max_edges) break;
        std::set<std::pair<int, EdgeList>> next;
        for (const auto& [n, edges] : layer) {
            std::set<std::pair<int, int>> present(edges.begin(), edges.end());
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b <= n; ++b) {
                    if (present.count({a, b})) continue;
                    int size = b == n ? n + 1 : n;
                    EdgeList grown = edges;
                    grown.emplace_back(a, b);
                    next.emplace(size, canonical_form(size, grown));
                }
            }
        }
        layer = std::move(next);
    }
    return corpus;
}

}  // namespace tattoo
