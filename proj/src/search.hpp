#pragma once

#include <atomic>
#include <chrono>
#include <optional>

#include "tattoo/engine.hpp"
#include "tattoo/graph.hpp"

namespace tattoo::detail {

/// Wall-clock budget shared by every worker of one search. A budget of zero
/// never expires. `cancel` lets a failing worker stop the others early.
class Deadline {
public:
    explicit Deadline(double seconds);
    void check() const;
    void cancel() { cancelled_.store(true, std::memory_order_relaxed); }
    bool cancelled() const { return cancelled_.load(std::memory_order_relaxed); }

private:
    bool active_;
    std::chrono::steady_clock::time_point end_;
    double seconds_;
    std::atomic<bool> cancelled_{false};
};

struct OrientationOptimum {
    int cost;
    long label_sum;
    AllocationPlan plan;
    DispatchSchedule schedule;
};

/// Lexicographic minimum of (cost, label sum) over every plan and schedule of
/// one acyclic orientation whose cost does not exceed `cap`. FSG and BLEND only.
std::optional<OrientationOptimum> solve_orientation(const Digraph& d, Mode mode, Policy policy, int cap,
                                                    const Deadline& deadline);

/// Cheap cost lower bound: every source needs its required primaries.
int source_cost_bound(const Digraph& d, Mode mode);

}  // namespace tattoo::detail
