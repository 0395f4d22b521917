#include "tattoo/optimizer.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "search.hpp"

namespace tattoo {

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::Br: return "br";
        case Quantity::Btau: return "btau";
        case Quantity::Tau: return "tau";
        case Quantity::MinLabelSum: return "labelsum";
        case Quantity::Index: return "index";
        case Quantity::RawRatio: return "ratio";
    }
    return "?";
}

Quantity parse_quantity(const std::string& text) {
    if (text == "br") return Quantity::Br;
    if (text == "btau") return Quantity::Btau;
    if (text == "tau") return Quantity::Tau;
    if (text == "labelsum") return Quantity::MinLabelSum;
    if (text == "index") return Quantity::Index;
    if (text == "ratio") return Quantity::RawRatio;
    throw std::invalid_argument("unknown quantity '" + text + "' (expected br|btau|tau|labelsum|index|ratio)");
}

Quantity cost_quantity(Mode mode) {
    switch (mode) {
        case Mode::Brush: return Quantity::Br;
        case Mode::Fsg: return Quantity::Btau;
        case Mode::Blend: return Quantity::Tau;
    }
    return Quantity::Tau;
}

Mode mode_of(Quantity q) {
    switch (q) {
        case Quantity::Br: return Mode::Brush;
        case Quantity::Btau: return Mode::Fsg;
        case Quantity::Tau: return Mode::Blend;
        default: throw std::invalid_argument(std::string("quantity '") + to_string(q) + "' is not a cost quantity");
    }
}

int default_max_edges() {
    if (const char* env = std::getenv("TATTOO_MAX_EDGES")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 63) return static_cast<int>(v);
    }
    return 24;
}

InvariantResult to_invariant(const SearchResult& r, Quantity q) {
    InvariantResult out{q, 0L, r.witness, r.orientations_searched};
    switch (q) {
        case Quantity::Br:
        case Quantity::Btau:
        case Quantity::Tau: out.value = static_cast<long>(r.cost); break;
        case Quantity::MinLabelSum: out.value = r.label_sum; break;
        case Quantity::Index: out.value = r.index; break;
        case Quantity::RawRatio: out.value = r.raw_ratio; break;
    }
    return out;
}

namespace {

int brush_cost(const Digraph& d) {
    int cost = 0;
    for (Vertex v = 0; v < d.vertex_count(); ++v) cost += std::max(0, d.out_degree(v) - d.in_degree(v));
    return cost;
}

SearchResult result_from(const Outcome& o, Policy policy, long searched) {
    return SearchResult{o.mode, policy, o.primaries_used, o.label_sum, o.index, o.raw_ratio, o, searched};
}

// Replays a witness and insists it reproduces the claimed optimum.
Outcome confirm(const Digraph& d, const detail::OrientationOptimum& opt, Mode mode, Policy policy) {
    AllocationPlan plan = opt.plan;
    plan.policy = policy;
    RunResult run = run_schedule(d, plan, opt.schedule, mode);
    const Outcome* o = std::get_if<Outcome>(&run);
    if (!o || o->primaries_used != opt.cost || o->label_sum != opt.label_sum) {
        throw ConsistencyError("optimizer witness does not replay to its claimed value");
    }
    return *o;
}

Outcome greedy_outcome(const Digraph& d, Mode mode, Policy policy) {
    RunResult run = run_greedy(d, source_plan(d, mode, policy), mode);
    if (auto* o = std::get_if<Outcome>(&run)) return *o;
    throw InfeasibleError("orientation deadlocks");
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, count) on `threads` workers. The first exception
// cancels the remaining work and is rethrown on the calling thread.
void parallel_for(long count, int threads, detail::Deadline& deadline, const std::function<void(long)>& body) {
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (long i = next++; i < count; i = next++) {
                if (deadline.cancelled()) return;
                body(i);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            deadline.cancel();
        }
    };
    threads = static_cast<int>(std::min<long>(threads, std::max<long>(count, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}


// Orientations related by a graph automorphism have the same optimum under
// SMALLEST (colour numbering is local to each vertex), so only the first
// orientation of each orbit, in enumeration order, needs solving. The winner
// and its witness are the same as for a full sweep.
std::vector<long> orbit_representatives(const Graph& g, const std::vector<OrientationCode>& codes) {
    struct EdgeMap {
        std::vector<int> target;
        OrientationCode flip = 0;
    };
    std::map<std::pair<Vertex, Vertex>, int> edge_id;
    for (int e = 0; e < g.edge_count(); ++e) edge_id[{g.edge(e).a, g.edge(e).b}] = e;
    std::vector<EdgeMap> maps;
    for (const auto& perm : automorphism_generators(g)) {
        EdgeMap m{std::vector<int>(g.edge_count()), 0};
        for (int e = 0; e < g.edge_count(); ++e) {
            Vertex a = perm[g.edge(e).a], b = perm[g.edge(e).b];
            if (auto it = edge_id.find({a, b}); it != edge_id.end()) {
                m.target[e] = it->second;
            } else {
                m.target[e] = edge_id.at({b, a});
                m.flip |= OrientationCode{1} << e;
            }
        }
        maps.push_back(std::move(m));
    }

    long count = static_cast<long>(codes.size());
    std::unordered_map<OrientationCode, long> index;
    index.reserve(codes.size() * 2);
    for (long i = 0; i < count; ++i) index.emplace(codes[i], i);
    std::vector<long> parent(count);
    for (long i = 0; i < count; ++i) parent[i] = i;
    auto root = [&](long x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const EdgeMap& m : maps) {
        for (long i = 0; i < count; ++i) {
            OrientationCode c = codes[i] ^ m.flip, image = 0;
            for (int e = 0; e < g.edge_count(); ++e) {
                if (c >> e & 1) image |= OrientationCode{1} << m.target[e];
            }
            long a = root(i), b = root(index.at(image));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<long> reps;
    for (long i = 0; i < count; ++i) {
        if (root(i) == i) reps.push_back(i);
    }
    return reps;
}

}  // namespace

SearchResult optimize_orientation(const Digraph& d, Mode mode, Policy policy) {
    if (!d.is_acyclic()) throw InfeasibleError("orientation has a directed cycle; no schedule completes");
    Outcome greedy = greedy_outcome(d, mode, policy);
    if (mode == Mode::Brush) return result_from(greedy, policy, 1);
    detail::Deadline unlimited(0);
    auto opt = detail::solve_orientation(d, mode, policy, greedy.primaries_used, unlimited);
    if (!opt) throw ConsistencyError("search found nothing within the cost of a known strategy");
    return result_from(confirm(d, *opt, mode, policy), policy, 1);
}

SearchResult optimize_graph(std::shared_ptr<const Graph> g, Mode mode, Policy policy, const SearchLimits& limits) {
    if (g->edge_count() > limits.max_edges) {
        throw SearchLimitError("graph has " + std::to_string(g->edge_count()) + " edges; the search limit is " +
                               std::to_string(limits.max_edges));
    }
    detail::Deadline deadline(limits.time_budget_seconds);
    std::vector<OrientationCode> codes;
    for_each_acyclic_orientation(*g, [&](OrientationCode code) {
        codes.push_back(code);
        if (codes.size() % 4096 == 0) deadline.check();
        return true;
    });
    long count = static_cast<long>(codes.size());
    int threads = resolve_threads(limits.threads);

    std::vector<long> todo;
    if (policy == Policy::Smallest || mode == Mode::Brush) {
        todo = orbit_representatives(*g, codes);
    } else {
        for (long i = 0; i < count; ++i) todo.push_back(i);
    }
    deadline.check();
    long jobs = static_cast<long>(todo.size());

    if (mode == Mode::Brush) {
        long best = -1;
        int best_cost = -1;
        for (long i : todo) {
            int c = brush_cost(Digraph(g, codes[i]));
            if (best_cost < 0 || c < best_cost) best_cost = c, best = i;
        }
        return result_from(greedy_outcome(Digraph(g, codes[best]), mode, policy), policy, count);
    }

    // Every orientation's greedy run is a valid strategy, so the cheapest one
    // caps the search from the start.
    std::vector<int> greedy_cost(jobs);
    parallel_for(jobs, threads, deadline, [&](long k) {
        greedy_cost[k] = greedy_outcome(Digraph(g, codes[todo[k]]), mode, policy).primaries_used;
    });
    std::atomic<int> cap{*std::min_element(greedy_cost.begin(), greedy_cost.end())};

    // Each orientation is solved exactly whenever its optimum can still tie the
    // incumbent cost, so the reduction below is independent of scheduling.
    std::vector<std::optional<detail::OrientationOptimum>> results(jobs);
    parallel_for(jobs, threads, deadline, [&](long k) {
        Digraph d(g, codes[todo[k]]);
        int limit = cap.load();
        if (detail::source_cost_bound(d, mode) > limit) return;
        results[k] = detail::solve_orientation(d, mode, policy, limit, deadline);
        if (results[k]) {
            int c = results[k]->cost;
            int cur = cap.load();
            while (c < cur && !cap.compare_exchange_weak(cur, c)) {
            }
        }
        deadline.check();
    });

    long best = -1;
    for (long k = 0; k < jobs; ++k) {
        if (!results[k]) continue;
        if (best < 0 || results[k]->cost < results[best]->cost ||
            (results[k]->cost == results[best]->cost && results[k]->label_sum < results[best]->label_sum)) {
            best = k;
        }
    }
    if (best < 0) throw ConsistencyError("search found nothing within the cost of a known strategy");
    return result_from(confirm(Digraph(g, codes[todo[best]]), *results[best], mode, policy), policy, count);
}

InvariantResult min_cost_for_orientation(const Digraph& d, Mode mode, Policy policy) {
    return to_invariant(optimize_orientation(d, mode, policy), cost_quantity(mode));
}

InvariantResult invariant(std::shared_ptr<const Graph> g, Mode mode, Quantity quantity, Policy policy,
                          const SearchLimits& limits) {
    if (mode_of(quantity) != mode) {
        throw std::invalid_argument(std::string("quantity ") + to_string(quantity) + " does not belong to mode " +
                                    to_string(mode));
    }
    return to_invariant(optimize_graph(std::move(g), mode, policy, limits), quantity);
}

SearchResult best_index(std::shared_ptr<const Graph> g, Mode mode, Policy policy, const SearchLimits& limits) {
    return optimize_graph(std::move(g), mode, policy, limits);
}

std::set<long> label_sum_set(const Digraph& d, const AllocationPlan& plan, Mode mode) {
    if (!d.is_acyclic()) throw InfeasibleError("orientation has a directed cycle; no schedule completes");
    ProcessState start = initial_state(d, plan, mode);
    // Remaining label sums reachable from a state depend only on which arcs are
    // still open and what has arrived at the vertices yet to fire.
    std::map<std::vector<std::uint64_t>, std::set<long>> memo;
    std::function<const std::set<long>&(const ProcessState&)> walk = [&](const ProcessState& s) -> const std::set<long>& {
        std::vector<std::uint64_t> key;
        for (ArcId a = 0; a < d.arc_count(); ++a) key.push_back(s.arc_label[a] ? 1 : 0);
        for (Vertex v = 0; v < d.vertex_count(); ++v) {
            key.push_back(s.primaries[v]);
            key.push_back(static_cast<std::uint64_t>(s.brush_tokens[v]));
            for (ColourSet b : s.arrived_blends[v]) key.push_back(b.mask());
            key.push_back(~std::uint64_t{0});
        }
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::set<long> sums;
        if (s.untattooed == 0) {
            sums.insert(0);
        } else {
            auto ready = ready_vertices(s, d);
            if (ready.empty()) throw InfeasibleError("the plan deadlocks");
            Vertex v = ready.front();
            if (augmentation_needed(s, d, v, mode, plan.policy) > 0) {
                throw InfeasibleError("vertex " + std::to_string(v) + " cannot fire without augmentation under this plan");
            }
            std::vector<ArcId> arcs;
            for (ArcId a : d.out_arcs(v)) {
                if (!s.arc_label[a]) arcs.push_back(a);
            }
            std::vector<ColourSet> pool;
            if (mode == Mode::Brush) {
                pool.assign(arcs.size(), ColourSet::primary(1));
            } else if (mode == Mode::Fsg) {
                for (ColourMask m = s.primaries[v]; m != 0; m &= m - 1) pool.emplace_back(m & (~m + 1));
            } else {
                pool = mutate_pool(s.primaries[v], s.arrived_blends[v], s.used_labels[v]);
            }
            std::vector<ArcAssignment> assignment(arcs.size());
            std::vector<char> taken(pool.size(), 0);
            std::function<void(size_t)> pick = [&](size_t i) {
                if (i == arcs.size()) {
                    ProcessState next = fire(s, d, v, assignment, mode, plan.policy);
                    long here = next.label_sum - s.label_sum;
                    for (long rest : walk(next)) sums.insert(here + rest);
                    return;
                }
                for (size_t k = 0; k < pool.size(); ++k) {
                    if (taken[k]) continue;
                    if (mode != Mode::Brush) taken[k] = 1;
                    assignment[i] = ArcAssignment{arcs[i], pool[k]};
                    pick(i + 1);
                    taken[k] = 0;
                    if (mode == Mode::Brush) break;
                }
            };
            pick(0);
        }
        return memo.emplace(std::move(key), std::move(sums)).first->second;
    };
    return walk(start);
}

std::set<Rational> ratio_set(const Digraph& d, const AllocationPlan& plan, Mode mode) {
    int cost = 0;
    for (int c : plan.initial) cost += c;
    std::set<Rational> out;
    for (long sum : label_sum_set(d, plan, mode)) out.insert(Rational(d.arc_count(), cost * sum));
    return out;
}

}  // namespace tattoo
