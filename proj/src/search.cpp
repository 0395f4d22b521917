#include "search.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "tattoo/optimizer.hpp"

namespace tattoo::detail {

Deadline::Deadline(double seconds)
    : active_(seconds > 0),
      end_(std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds))),
      seconds_(seconds) {}

void Deadline::check() const {
    if (cancelled()) throw SearchLimitError("search cancelled");
    if (active_ && std::chrono::steady_clock::now() > end_) {
        throw SearchLimitError("time budget of " + std::to_string(seconds_) + " s exceeded");
    }
}

int source_cost_bound(const Digraph& d, Mode mode) {
    int bound = 0;
    for (Vertex v = 0; v < d.vertex_count(); ++v) {
        if (d.in_degree(v) == 0) bound += required_primaries(d.out_degree(v), mode);
    }
    return bound;
}

namespace {

// Dispatch pools are enumerated cheapest label first; the canonical order
// breaks ties so witnesses never depend on hashing or thread timing.
std::vector<ColourSet> dispatch_pool(ColourMask primaries, const std::vector<ColourSet>& blends,
                                     const std::vector<ColourSet>& used, Mode mode) {
    std::vector<ColourSet> pool;
    if (mode == Mode::Fsg) {
        for (ColourMask m = primaries; m != 0; m &= m - 1) {
            ColourSet c(m & (~m + 1));
            if (std::find(used.begin(), used.end(), c) == used.end()) pool.push_back(c);
        }
    } else {
        pool = mutate_pool(primaries, blends, used);
    }
    std::stable_sort(pool.begin(), pool.end(), [](ColourSet a, ColourSet b) { return a.label_sum() < b.label_sum(); });
    return pool;
}

int minimal_augmentation(ColourMask primaries, const std::vector<ColourSet>& blends, int demand, Mode mode) {
    if (demand <= 0) return 0;
    if (mode == Mode::Fsg) return std::max(0, demand - std::popcount(primaries));
    for (int m = 0;; ++m) {
        ColourMask p = primaries | smallest_missing(primaries, m);
        if (pool_size(p, blends, {}) >= demand) return m;
    }
}

struct KeyHash {
    size_t operator()(const std::vector<std::uint64_t>& key) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::uint64_t x : key) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<size_t>(h);
    }
};

// Under SMALLEST the subgraph of unfired vertices splits into weakly connected
// pieces whose futures are independent: a piece's best outcomes depend only on
// what has arrived at its vertices. The solver fires the first vertex of a
// piece (in topological order), splits the remainder, and combines the Pareto
// frontiers of (cost, label sum) of the sub-pieces, sharing the dispatcher's
// pool among them. Frontiers are memoised per piece and arrival pattern.
class ComponentSolver {
public:
    ComponentSolver(const Digraph& d, Mode mode, int cap, const Deadline& deadline)
        : d_(d), mode_(mode), cap_(cap), deadline_(deadline), arrivals_(d.vertex_count()),
          rank_(d.vertex_count()) {
        auto order = d.topological_order();
        for (size_t i = 0; i < order.size(); ++i) rank_[order[i]] = static_cast<int>(i);
    }

    std::optional<OrientationOptimum> run() {
        std::vector<Vertex> all(d_.vertex_count());
        for (Vertex v = 0; v < d_.vertex_count(); ++v) all[v] = v;
        sort_by_rank(all);
        const Frontier& f = solve(all, cap_);
        if (f.empty()) return std::nullopt;
        return flatten(f.front());
    }

private:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;
    // Persistent witness tree. A Start node opens a vertex's firing; Piece
    // nodes carry parts of its assignment; children follow in pre-order.
    struct Node {
        enum class Kind { Start, Piece, Concat } kind;
        Vertex v = -1;
        int initial = 0;
        std::vector<ArcAssignment> part;
        NodePtr a;
        NodePtr b;
    };
    struct Entry {
        int cost;
        long sum;
        NodePtr w;
    };
    using Frontier = std::vector<Entry>;  // cost ascending, sum strictly descending

    struct Arrival {
        ColourMask primaries = 0;
        std::vector<ColourSet> blends;  // sorted
    };

    struct Option {
        std::uint64_t used;
        Frontier frontier;
    };

    static void insert_pareto(Frontier& f, Entry e) {
        for (const Entry& x : f) {
            if (x.cost <= e.cost && x.sum <= e.sum) return;
        }
        std::erase_if(f, [&](const Entry& x) { return x.cost >= e.cost && x.sum >= e.sum; });
        auto it = std::lower_bound(f.begin(), f.end(), e, [](const Entry& x, const Entry& y) { return x.cost < y.cost; });
        f.insert(it, std::move(e));
    }

    void sort_by_rank(std::vector<Vertex>& vs) const {
        std::sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return rank_[a] < rank_[b]; });
    }

    std::vector<std::uint64_t> key_of(const std::vector<Vertex>& comp) const {
        std::vector<std::uint64_t> key;
        key.reserve(comp.size() * 3);
        for (Vertex w : comp) {
            const Arrival& a = arrivals_[w];
            key.push_back(static_cast<std::uint64_t>(w) | (static_cast<std::uint64_t>(a.blends.size()) << 32));
            key.push_back(a.primaries);
            for (ColourSet b : a.blends) key.push_back(b.mask());
        }
        return key;
    }

    std::vector<std::vector<Vertex>> split(const std::vector<Vertex>& rest) const {
        std::vector<char> in_rest(d_.vertex_count(), 0), seen(d_.vertex_count(), 0);
        for (Vertex w : rest) in_rest[w] = 1;
        std::vector<std::vector<Vertex>> parts;
        for (Vertex start : rest) {
            if (seen[start]) continue;
            std::vector<Vertex> part{start};
            seen[start] = 1;
            for (size_t i = 0; i < part.size(); ++i) {
                Vertex x = part[i];
                auto visit = [&](Vertex y) {
                    if (in_rest[y] && !seen[y]) {
                        seen[y] = 1;
                        part.push_back(y);
                    }
                };
                for (ArcId a : d_.out_arcs(x)) visit(d_.head(a));
                for (ArcId a : d_.in_arcs(x)) visit(d_.tail(a));
            }
            sort_by_rank(part);
            parts.push_back(std::move(part));
        }
        return parts;
    }

    // Pareto frontier of the piece restricted to cost <= budget (callers
    // filter, since a memoised frontier may cover a larger budget).
    const Frontier& solve(const std::vector<Vertex>& comp, int budget) {
        static const Frontier none;
        if (budget < 0) return none;
        auto key = key_of(comp);
        auto it = memo_.find(key);
        if (it != memo_.end() && it->second.budget >= budget) return it->second.frontier;
        if ((++calls_ & 1023) == 0) deadline_.check();
        Frontier f = solve_uncached(comp, budget);
        it = memo_.find(key);
        if (it == memo_.end()) it = memo_.emplace(std::move(key), Memo{}).first;
        it->second = Memo{budget, std::move(f)};
        return it->second.frontier;
    }

    Frontier solve_uncached(const std::vector<Vertex>& comp, int budget) {
        Vertex v = comp.front();
        if (comp.size() == 1) return Frontier{Entry{0, 0, nullptr}};

        std::vector<Vertex> rest(comp.begin() + 1, comp.end());
        auto parts = split(rest);
        std::vector<char> in_comp(d_.vertex_count(), 0), is_head(d_.vertex_count(), 0);
        for (Vertex w : comp) in_comp[w] = 1;
        for (ArcId a : d_.out_arcs(v)) is_head[d_.head(a)] = 1;

        std::vector<int> part_of(d_.vertex_count(), -1);
        for (size_t j = 0; j < parts.size(); ++j) {
            for (Vertex w : parts[j]) part_of[w] = static_cast<int>(j);
        }
        std::vector<std::vector<ArcId>> heads(parts.size());
        for (ArcId a : d_.out_arcs(v)) heads[part_of[d_.head(a)]].push_back(a);

        // Vertices that are ready as soon as the pieces start, other than v's
        // heads, must pay at least their minimal augmentation.
        std::vector<int> bound(parts.size(), 0);
        int bound_total = 0;
        for (size_t j = 0; j < parts.size(); ++j) {
            for (Vertex w : parts[j]) {
                if (is_head[w] || d_.out_degree(w) == 0) continue;
                bool ready = std::none_of(d_.in_arcs(w).begin(), d_.in_arcs(w).end(),
                                          [&](ArcId a) { return in_comp[d_.tail(a)] != 0; });
                if (ready) {
                    bound[j] += minimal_augmentation(arrivals_[w].primaries, arrivals_[w].blends, d_.out_degree(w), mode_);
                }
            }
            bound_total += bound[j];
        }

        const Arrival here = arrivals_[v];
        int demand = d_.out_degree(v);
        bool holds_nothing = here.primaries == 0 && here.blends.empty();

        Frontier result;
        std::unordered_set<ColourMask> seen_pools;
        for (int s = holds_nothing ? required_primaries(demand, mode_) : 0; s <= kMaxColour; ++s) {
            if (s > 0 && (here.primaries & colour_bit(s))) continue;  // same colours as s - 1, dearer
            ColourMask p = here.primaries | first_colours(s);
            int extra = minimal_augmentation(p, here.blends, demand, mode_);
            int own = s + extra;
            if (own + bound_total > budget) break;  // own never decreases with s
            p |= smallest_missing(p, extra);
            if (!seen_pools.insert(p).second) continue;

            auto pool = dispatch_pool(p, here.blends, {}, mode_);
            if (pool.size() > 64) throw SearchLimitError("dispatch pool of " + std::to_string(pool.size()) + " labels exceeds the search limit");

            // Per piece: every injective labelling of the arcs into it.
            std::vector<std::vector<Option>> options(parts.size());
            for (size_t j = 0; j < parts.size(); ++j) {
                int slack = budget - own - (bound_total - bound[j]);
                options[j] = piece_options(v, parts[j], heads[j], pool, slack);
            }

            std::vector<std::pair<std::uint64_t, Frontier>> states{{0, Frontier{Entry{0, 0, nullptr}}}};
            int remaining_bound = bound_total;
            for (size_t j = 0; j < parts.size(); ++j) {
                remaining_bound -= bound[j];
                std::vector<std::pair<std::uint64_t, Frontier>> next;
                std::unordered_map<std::uint64_t, size_t> index;
                for (const auto& [mask, f] : states) {
                    for (const Option& o : options[j]) {
                        if (o.used & mask) continue;
                        std::uint64_t m = mask | o.used;
                        for (const Entry& x : f) {
                            for (const Entry& y : o.frontier) {
                                int c = x.cost + y.cost;
                                if (own + c + remaining_bound > budget) break;
                                auto [pos, fresh] = index.emplace(m, next.size());
                                if (fresh) next.emplace_back(m, Frontier{});
                                Frontier& target = next[pos->second].second;
                                Entry e{c, x.sum + y.sum, nullptr};
                                bool dominated = std::any_of(target.begin(), target.end(), [&](const Entry& t) {
                                    return t.cost <= e.cost && t.sum <= e.sum;
                                });
                                if (dominated) continue;
                                e.w = std::make_shared<const Node>(Node{Node::Kind::Concat, -1, 0, {}, x.w, y.w});
                                insert_pareto(target, std::move(e));
                            }
                        }
                    }
                }
                states = std::move(next);
            }
            for (const auto& [mask, f] : states) {
                for (const Entry& x : f) {
                    Entry e{own + x.cost, x.sum, nullptr};
                    bool dominated = std::any_of(result.begin(), result.end(), [&](const Entry& t) {
                        return t.cost <= e.cost && t.sum <= e.sum;
                    });
                    if (dominated) continue;
                    e.w = std::make_shared<const Node>(Node{Node::Kind::Start, v, s, {}, x.w, nullptr});
                    insert_pareto(result, std::move(e));
                }
            }
        }
        return result;
    }

    std::vector<Option> piece_options(Vertex v, const std::vector<Vertex>& part, const std::vector<ArcId>& arcs,
                                      const std::vector<ColourSet>& pool, int slack) {
        std::vector<Option> out;
        if (slack < 0) return out;
        std::vector<int> chosen(arcs.size(), -1);
        std::function<void(size_t, std::uint64_t)> pick = [&](size_t i, std::uint64_t used) {
            if (i == arcs.size()) {
                out.push_back(evaluate(v, part, arcs, pool, chosen, used, slack));
                if (out.back().frontier.empty()) out.pop_back();
                return;
            }
            for (size_t k = 0; k < pool.size(); ++k) {
                if (used & (std::uint64_t{1} << k)) continue;
                chosen[i] = static_cast<int>(k);
                pick(i + 1, used | (std::uint64_t{1} << k));
            }
        };
        pick(0, 0);
        return out;
    }

    Option evaluate(Vertex v, const std::vector<Vertex>& part, const std::vector<ArcId>& arcs,
                    const std::vector<ColourSet>& pool, const std::vector<int>& chosen, std::uint64_t used, int slack) {
        std::vector<Arrival> saved;
        saved.reserve(arcs.size());
        long labels = 0;
        std::vector<ArcAssignment> part_assignment;
        for (size_t i = 0; i < arcs.size(); ++i) {
            Vertex h = d_.head(arcs[i]);
            saved.push_back(arrivals_[h]);
            ColourSet c = pool[chosen[i]];
            labels += c.label_sum();
            part_assignment.push_back({arcs[i], c});
            Arrival& a = arrivals_[h];
            if (c.is_primary()) {
                a.primaries |= c.mask();
            } else {
                auto it = std::lower_bound(a.blends.begin(), a.blends.end(), c);
                if (it == a.blends.end() || *it != c) a.blends.insert(it, c);
            }
        }
        const Frontier& sub = solve(part, slack);
        Option o{used, {}};
        NodePtr piece;
        for (const Entry& x : sub) {
            if (x.cost > slack) break;
            o.frontier.push_back(Entry{x.cost, x.sum + labels,
                                       std::make_shared<const Node>(Node{Node::Kind::Piece, v, 0, part_assignment, x.w, nullptr})});
        }
        for (size_t i = arcs.size(); i-- > 0;) arrivals_[d_.head(arcs[i])] = saved[i];
        return o;
    }

    OrientationOptimum flatten(const Entry& best) const {
        OrientationOptimum out{best.cost, best.sum, AllocationPlan{std::vector<int>(d_.vertex_count(), 0), Policy::Smallest}, {}};
        std::vector<int> event_of(d_.vertex_count(), -1);
        std::vector<const Node*> stack;
        if (best.w) stack.push_back(best.w.get());
        while (!stack.empty()) {
            const Node* n = stack.back();
            stack.pop_back();
            if (n->kind == Node::Kind::Start) {
                event_of[n->v] = static_cast<int>(out.schedule.size());
                out.schedule.push_back(FireEvent{n->v, {}});
                out.plan.initial[n->v] = n->initial;
            } else if (n->kind == Node::Kind::Piece) {
                auto& a = out.schedule[event_of[n->v]].assignment;
                a.insert(a.end(), n->part.begin(), n->part.end());
            }
            if (n->b) stack.push_back(n->b.get());
            if (n->a) stack.push_back(n->a.get());
        }
        for (auto& e : out.schedule) {
            std::sort(e.assignment.begin(), e.assignment.end(),
                      [](const ArcAssignment& x, const ArcAssignment& y) { return x.arc < y.arc; });
        }
        return out;
    }

    const Digraph& d_;
    Mode mode_;
    int cap_;
    const Deadline& deadline_;
    std::vector<Arrival> arrivals_;
    std::vector<int> rank_;
    struct Memo {
        int budget = -1;
        Frontier frontier;
    };
    std::unordered_map<std::vector<std::uint64_t>, Memo, KeyHash> memo_;
    unsigned long calls_ = 0;
};

// Under FRESH the index counter couples every vertex, so there is no
// decomposition: all initial count vectors are tried cheapest first, and each
// is played out depth-first in the canonical order (lowest-id ready vertex).
class FreshSolver {
public:
    FreshSolver(const Digraph& d, Mode mode, int cap, const Deadline& deadline)
        : d_(d), mode_(mode), cap_(cap), deadline_(deadline) {}

    std::optional<OrientationOptimum> run() {
        std::vector<Vertex> sites;
        for (Vertex v = 0; v < d_.vertex_count(); ++v) {
            if (d_.out_degree(v) > 0) sites.push_back(v);
        }
        std::vector<int> counts(d_.vertex_count(), 0);
        for (int total = 1; total <= cap_ && (!best_ || total <= best_->cost); ++total) {
            distribute(sites, 0, total, counts);
        }
        return best_;
    }

private:
    void distribute(const std::vector<Vertex>& sites, size_t i, int left, std::vector<int>& counts) {
        if (i + 1 == sites.size() || sites.empty()) {
            if (sites.empty()) return;
            counts[sites[i]] = left;
            play(AllocationPlan{counts, Policy::Fresh});
            counts[sites[i]] = 0;
            return;
        }
        for (int c = left; c >= 0; --c) {
            counts[sites[i]] = c;
            distribute(sites, i + 1, left - c, counts);
        }
        counts[sites[i]] = 0;
    }

    void play(const AllocationPlan& plan) {
        ProcessState s = initial_state(d_, plan, mode_);
        DispatchSchedule schedule;
        dfs(s, plan, schedule);
    }

    bool better(int cost, long sum) const {
        return !best_ || cost < best_->cost || (cost == best_->cost && sum < best_->label_sum);
    }

    void dfs(const ProcessState& s, const AllocationPlan& plan, DispatchSchedule& schedule) {
        if ((++calls_ & 1023) == 0) deadline_.check();
        if (s.cost > cap_ || (best_ && s.cost > best_->cost)) return;
        if (best_ && s.cost == best_->cost && s.label_sum + s.untattooed >= best_->label_sum) return;
        if (s.untattooed == 0) {
            if (better(s.cost, s.label_sum)) best_ = OrientationOptimum{s.cost, s.label_sum, plan, schedule};
            return;
        }
        auto ready = ready_vertices(s, d_);
        if (ready.empty()) return;
        Vertex v = ready.front();
        int extra = augmentation_needed(s, d_, v, mode_, Policy::Fresh);
        ColourMask p = s.primaries[v] | augmentation_colours(s, v, extra, Policy::Fresh);
        auto pool = dispatch_pool(p, s.arrived_blends[v], s.used_labels[v], mode_);
        std::vector<ArcId> arcs;
        for (ArcId a : d_.out_arcs(v)) {
            if (!s.arc_label[a]) arcs.push_back(a);
        }
        std::vector<ArcAssignment> assignment(arcs.size());
        std::vector<char> taken(pool.size(), 0);
        std::function<void(size_t)> pick = [&](size_t i) {
            if (i == arcs.size()) {
                ProcessState next = fire(s, d_, v, assignment, mode_, Policy::Fresh);
                schedule.push_back(FireEvent{v, assignment});
                dfs(next, plan, schedule);
                schedule.pop_back();
                return;
            }
            for (size_t k = 0; k < pool.size(); ++k) {
                if (taken[k]) continue;
                taken[k] = 1;
                assignment[i] = ArcAssignment{arcs[i], pool[k]};
                pick(i + 1);
                taken[k] = 0;
            }
        };
        pick(0);
    }

    const Digraph& d_;
    Mode mode_;
    int cap_;
    const Deadline& deadline_;
    std::optional<OrientationOptimum> best_;
    unsigned long calls_ = 0;
};

}  // namespace

std::optional<OrientationOptimum> solve_orientation(const Digraph& d, Mode mode, Policy policy, int cap,
                                                    const Deadline& deadline) {
    if (mode == Mode::Brush) throw std::invalid_argument("BRUSH orientations are solved in closed form");
    if (source_cost_bound(d, mode) > cap) return std::nullopt;
    if (policy == Policy::Fresh) return FreshSolver(d, mode, cap, deadline).run();
    return ComponentSolver(d, mode, cap, deadline).run();
}

}  // namespace tattoo::detail
