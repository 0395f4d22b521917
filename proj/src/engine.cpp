#include "tattoo/engine.hpp"

#include <algorithm>
#include <bit>

namespace tattoo {

const char* to_string(Mode mode) {
    switch (mode) {
        case Mode::Brush: return "brush";
        case Mode::Fsg: return "fsg";
        case Mode::Blend: return "blend";
    }
    return "?";
}

const char* to_string(Policy policy) { return policy == Policy::Smallest ? "smallest" : "fresh"; }

Mode parse_mode(const std::string& text) {
    if (text == "brush") return Mode::Brush;
    if (text == "fsg") return Mode::Fsg;
    if (text == "blend") return Mode::Blend;
    throw std::invalid_argument("unknown mode '" + text + "' (expected brush|fsg|blend)");
}

Policy parse_policy(const std::string& text) {
    if (text == "smallest") return Policy::Smallest;
    if (text == "fresh") return Policy::Fresh;
    throw std::invalid_argument("unknown policy '" + text + "' (expected smallest|fresh)");
}

const char* to_string(FireError::Kind kind) {
    switch (kind) {
        case FireError::Kind::NotReady: return "not-ready";
        case FireError::Kind::NotInjective: return "not-injective";
        case FireError::Kind::Unavailable: return "unavailable";
        case FireError::Kind::WrongArcs: return "wrong-arcs";
        case FireError::Kind::ModeViolation: return "mode-violation";
    }
    return "?";
}

namespace {

bool contains(const std::vector<ColourSet>& sorted, ColourSet c) { return std::binary_search(sorted.begin(), sorted.end(), c); }

void insert_sorted(std::vector<ColourSet>& sorted, ColourSet c) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), c);
    if (it == sorted.end() || *it != c) sorted.insert(it, c);
}

bool in_pool(ColourSet c, ColourMask primaries, const std::vector<ColourSet>& blends) {
    return !c.empty() && (c.subset_of(primaries) || contains(blends, c));
}

std::vector<ArcId> untattooed_out_arcs(const ProcessState& state, const Digraph& d, Vertex v) {
    std::vector<ArcId> arcs;
    for (ArcId a : d.out_arcs(v)) {
        if (!state.arc_label[a]) arcs.push_back(a);
    }
    return arcs;
}

bool is_ready(const ProcessState& state, const Digraph& d, Vertex v) {
    for (ArcId a : d.in_arcs(v)) {
        if (!state.arc_label[a]) return false;
    }
    return std::any_of(d.out_arcs(v).begin(), d.out_arcs(v).end(), [&](ArcId a) { return !state.arc_label[a]; });
}

}  // namespace

long pool_size(ColourMask primaries, const std::vector<ColourSet>& arrived_blends, const std::vector<ColourSet>& used) {
    int p = std::popcount(primaries);
    long count = p >= 62 ? (1L << 62) : (1L << p) - 1;
    for (ColourSet b : arrived_blends) {
        if (!b.subset_of(primaries)) ++count;
    }
    for (ColourSet u : used) {
        if (in_pool(u, primaries, arrived_blends)) --count;
    }
    return count;
}

std::vector<ColourSet> mutate_pool(ColourMask primaries, const std::vector<ColourSet>& arrived_blends,
                                   const std::vector<ColourSet>& used) {
    std::vector<ColourSet> pool;
    for (ColourMask sub = primaries; sub != 0; sub = (sub - 1) & primaries) {
        pool.emplace_back(sub);
    }
    for (ColourSet b : arrived_blends) {
        if (!b.subset_of(primaries)) pool.push_back(b);
    }
    std::vector<ColourSet> used_sorted = used;
    std::sort(used_sorted.begin(), used_sorted.end());
    std::erase_if(pool, [&](ColourSet c) { return contains(used_sorted, c); });
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    return pool;
}

int required_primaries(int demand, Mode mode) {
    if (demand <= 0) return 0;
    if (mode != Mode::Blend) return demand;
    int s = 0;
    while ((1L << s) - 1 < demand) ++s;
    return s;
}

ColourMask augmentation_colours(const ProcessState& state, Vertex v, int count, Policy policy) {
    if (count <= 0) return 0;
    if (policy == Policy::Smallest) return smallest_missing(state.primaries[v], count);
    if (state.next_fresh + count - 1 > kMaxColour) throw std::overflow_error("colour index space exhausted");
    return first_colours(state.next_fresh + count - 1) & ~first_colours(state.next_fresh - 1);
}

int augmentation_needed(const ProcessState& state, const Digraph& d, Vertex v, Mode mode, Policy policy) {
    int demand = static_cast<int>(untattooed_out_arcs(state, d, v).size());
    if (mode == Mode::Brush) return std::max(0, demand - state.brush_tokens[v]);
    if (mode == Mode::Fsg) {
        int available = std::popcount(state.primaries[v]);
        for (ColourSet u : state.used_labels[v]) {
            if (u.is_primary() && u.subset_of(state.primaries[v])) --available;
        }
        return std::max(0, demand - available);
    }
    for (int m = 0;; ++m) {
        ColourMask p = state.primaries[v] | augmentation_colours(state, v, m, policy);
        if (pool_size(p, state.arrived_blends[v], state.used_labels[v]) >= demand) return m;
    }
}

ProcessState initial_state(const Digraph& d, const AllocationPlan& plan, Mode mode) {
    int n = d.vertex_count();
    if (static_cast<int>(plan.initial.size()) != n) {
        throw PlanError("allocation plan covers " + std::to_string(plan.initial.size()) + " vertices, graph has " +
                        std::to_string(n));
    }
    bool any = false;
    for (int c : plan.initial) {
        if (c < 0) throw PlanError("allocation counts must be non-negative");
        if (c > kMaxColour) throw PlanError("allocation count exceeds colour index space");
        any = any || c > 0;
    }
    if (!any) throw PlanError("allocation plan allocates nothing");

    ProcessState s;
    s.arc_label.assign(d.arc_count(), std::nullopt);
    s.primaries.assign(n, 0);
    s.arrived_blends.assign(n, {});
    s.used_labels.assign(n, {});
    s.brush_tokens.assign(n, 0);
    s.untattooed = d.arc_count();
    for (Vertex v = 0; v < n; ++v) {
        int c = plan.initial[v];
        s.cost += c;
        if (mode == Mode::Brush) {
            s.brush_tokens[v] = c;
        } else if (plan.policy == Policy::Smallest) {
            s.primaries[v] = first_colours(c);
        } else {
            s.primaries[v] = augmentation_colours(s, v, c, Policy::Fresh);
            s.next_fresh += c;
        }
    }
    return s;
}

std::vector<Vertex> ready_vertices(const ProcessState& state, const Digraph& d) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < d.vertex_count(); ++v) {
        if (is_ready(state, d, v)) out.push_back(v);
    }
    return out;
}

ProcessState fire(const ProcessState& state, const Digraph& d, Vertex v, const std::vector<ArcAssignment>& assignment,
                  Mode mode, Policy policy) {
    using K = FireError::Kind;
    if (v < 0 || v >= d.vertex_count() || !is_ready(state, d, v)) {
        throw FireError(K::NotReady, "vertex " + std::to_string(v) + " is not ready");
    }
    std::vector<ArcId> expected = untattooed_out_arcs(state, d, v);
    std::vector<ArcId> given;
    for (const auto& [arc, brush] : assignment) given.push_back(arc);
    std::sort(given.begin(), given.end());
    if (given != expected) {
        throw FireError(K::WrongArcs, "assignment at vertex " + std::to_string(v) +
                                          " must cover exactly its untattooed out-arcs");
    }

    ProcessState next = state;
    int demand = static_cast<int>(expected.size());
    int extra = augmentation_needed(state, d, v, mode, policy);
    next.cost += extra;

    if (mode == Mode::Brush) {
        for (const auto& [arc, brush] : assignment) {
            if (brush != ColourSet::primary(1)) {
                throw FireError(K::ModeViolation, "BRUSH mode dispatches only the anonymous brush c1");
            }
        }
        next.brush_tokens[v] += extra - demand;
        for (const auto& [arc, brush] : assignment) {
            next.arc_label[arc] = brush;
            next.brush_tokens[d.head(arc)] += 1;
            next.label_sum += 1;
        }
        next.untattooed -= demand;
        return next;
    }

    std::vector<ColourSet> brushes;
    for (const auto& [arc, brush] : assignment) brushes.push_back(brush);
    std::sort(brushes.begin(), brushes.end());
    if (std::adjacent_find(brushes.begin(), brushes.end()) != brushes.end()) {
        throw FireError(K::NotInjective, "vertex " + std::to_string(v) + " dispatches the same brush twice");
    }

    next.primaries[v] |= augmentation_colours(state, v, extra, policy);
    if (policy == Policy::Fresh) next.next_fresh += extra;

    for (const auto& [arc, brush] : assignment) {
        if (mode == Mode::Fsg && !brush.is_primary()) {
            throw FireError(K::ModeViolation, "FSG mode forbids blend " + brush.str());
        }
        bool available = mode == Mode::Fsg ? brush.subset_of(next.primaries[v])
                                           : in_pool(brush, next.primaries[v], next.arrived_blends[v]);
        if (!available || contains(next.used_labels[v], brush)) {
            throw FireError(K::Unavailable, brush.str() + " is not available at vertex " + std::to_string(v));
        }
    }
    for (const auto& [arc, brush] : assignment) {
        next.arc_label[arc] = brush;
        insert_sorted(next.used_labels[v], brush);
        Vertex h = d.head(arc);
        if (brush.is_primary()) {
            next.primaries[h] |= brush.mask();
        } else {
            insert_sorted(next.arrived_blends[h], brush);
        }
        next.label_sum += brush.label_sum();
    }
    next.untattooed -= demand;
    return next;
}

namespace {

Outcome make_outcome(const Digraph& d, const AllocationPlan& plan, DispatchSchedule schedule, const ProcessState& s,
                     Mode mode) {
    long edges = d.arc_count();
    Rational raw(edges, s.label_sum);
    Rational index = s.cost > 0 ? Rational(edges, s.cost * s.label_sum) : Rational(0);
    return Outcome{mode, s.cost, s.label_sum, raw, index, Witness{d, plan, std::move(schedule)}};
}

}  // namespace

RunResult run_schedule(const Digraph& d, const AllocationPlan& plan, const DispatchSchedule& schedule, Mode mode) {
    ProcessState state = initial_state(d, plan, mode);
    for (size_t i = 0; i < schedule.size(); ++i) {
        if (state.untattooed == 0) {
            throw ReplayError(static_cast<int>(i), std::nullopt, "event after every arc is tattooed");
        }
        if (ready_vertices(state, d).empty()) return Deadlock{state};
        try {
            state = fire(state, d, schedule[i].vertex, schedule[i].assignment, mode, plan.policy);
        } catch (const FireError& e) {
            throw ReplayError(static_cast<int>(i), e.kind(), "event " + std::to_string(i) + ": " + e.what());
        }
    }
    if (state.untattooed > 0) {
        if (ready_vertices(state, d).empty()) return Deadlock{state};
        throw ReplayError(static_cast<int>(schedule.size()), std::nullopt,
                          "schedule ends with " + std::to_string(state.untattooed) + " arcs untattooed");
    }
    return make_outcome(d, plan, schedule, state, mode);
}

RunResult run_greedy(const Digraph& d, const AllocationPlan& plan, Mode mode) {
    ProcessState state = initial_state(d, plan, mode);
    DispatchSchedule schedule;
    while (state.untattooed > 0) {
        auto ready = ready_vertices(state, d);
        if (ready.empty()) return Deadlock{state};
        Vertex v = ready.front();
        auto arcs = untattooed_out_arcs(state, d, v);
        FireEvent event{v, {}};
        if (mode == Mode::Brush) {
            for (ArcId a : arcs) event.assignment.push_back({a, ColourSet::primary(1)});
        } else {
            int extra = augmentation_needed(state, d, v, mode, plan.policy);
            ColourMask p = state.primaries[v] | augmentation_colours(state, v, extra, plan.policy);
            std::vector<ColourSet> pool;
            if (mode == Mode::Fsg) {
                for (ColourMask m = p; m != 0; m &= m - 1) {
                    ColourSet c(m & -m);
                    if (!contains(state.used_labels[v], c)) pool.push_back(c);
                }
            } else {
                pool = mutate_pool(p, state.arrived_blends[v], state.used_labels[v]);
            }
            std::stable_sort(pool.begin(), pool.end(),
                             [](ColourSet a, ColourSet b) { return a.label_sum() < b.label_sum(); });
            for (size_t i = 0; i < arcs.size(); ++i) event.assignment.push_back({arcs[i], pool[i]});
        }
        state = fire(state, d, v, event.assignment, mode, plan.policy);
        schedule.push_back(std::move(event));
    }
    return make_outcome(d, plan, std::move(schedule), state, mode);
}

AllocationPlan source_plan(const Digraph& d, Mode mode, Policy policy) {
    AllocationPlan plan{std::vector<int>(d.vertex_count(), 0), policy};
    for (Vertex v = 0; v < d.vertex_count(); ++v) {
        if (d.in_degree(v) == 0) plan.initial[v] = required_primaries(d.out_degree(v), mode);
    }
    return plan;
}

}  // namespace tattoo
