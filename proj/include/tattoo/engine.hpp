#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tattoo/colour.hpp"
#include "tattoo/graph.hpp"
#include "tattoo/rational.hpp"

namespace tattoo {

/// BRUSH: anonymous brushes. FSG: distinct primaries, no blending.
/// BLEND: full tattooing, primaries mutate into first-order blends.
enum class Mode { Brush, Fsg, Blend };

/// How new primaries are numbered. SMALLEST restarts at c1 per vertex and
/// takes the smallest indices not already present; FRESH draws globally unused
/// indices from a counter.
enum class Policy { Smallest, Fresh };

const char* to_string(Mode mode);
const char* to_string(Policy policy);
Mode parse_mode(const std::string& text);
Policy parse_policy(const std::string& text);

/// Primaries allocated at t = 0. Augmentation beyond this happens lazily when a
/// vertex fires and is not part of the plan.
struct AllocationPlan {
    std::vector<int> initial;
    Policy policy = Policy::Smallest;

    friend bool operator==(const AllocationPlan&, const AllocationPlan&) = default;
};

struct ArcAssignment {
    ArcId arc;
    ColourSet brush;
    friend bool operator==(const ArcAssignment&, const ArcAssignment&) = default;
};

/// One firing: the vertex dispatches one brush along each untattooed out-arc.
struct FireEvent {
    Vertex vertex;
    std::vector<ArcAssignment> assignment;
    friend bool operator==(const FireEvent&, const FireEvent&) = default;
};

using DispatchSchedule = std::vector<FireEvent>;

struct ProcessState {
    std::vector<std::optional<ColourSet>> arc_label;
    std::vector<ColourMask> primaries;                  // allocated or arrived as singletons
    std::vector<std::vector<ColourSet>> arrived_blends;  // sorted, no repeats
    std::vector<std::vector<ColourSet>> used_labels;     // dispatched from each vertex
    std::vector<int> brush_tokens;                       // BRUSH mode only
    int cost = 0;
    int next_fresh = 1;
    long label_sum = 0;
    int untattooed = 0;

    friend bool operator==(const ProcessState&, const ProcessState&) = default;
};

class FireError : public std::runtime_error {
public:
    enum class Kind { NotReady, NotInjective, Unavailable, WrongArcs, ModeViolation };

    FireError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

const char* to_string(FireError::Kind kind);

class PlanError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Witness {
    Digraph digraph;
    AllocationPlan plan;
    DispatchSchedule schedule;
};

struct Outcome {
    Mode mode;
    int primaries_used;
    long label_sum;
    Rational raw_ratio;  // |E| / label_sum
    Rational index;      // |E| / (primaries_used * label_sum)
    Witness witness;
};

struct Deadlock {
    ProcessState state;
};

using RunResult = std::variant<Outcome, Deadlock>;

/// A schedule that cannot be replayed. `event` is the offending event index
/// (schedule size when the schedule ends early).
class ReplayError : public std::runtime_error {
public:
    ReplayError(int event, std::optional<FireError::Kind> kind, const std::string& what)
        : std::runtime_error(what), event_(event), kind_(kind) {}
    int event() const { return event_; }
    std::optional<FireError::Kind> kind() const { return kind_; }

private:
    int event_;
    std::optional<FireError::Kind> kind_;
};

/// Every non-empty subset of `primaries`, plus the arrived blends, minus
/// anything already dispatched. Canonical order, no repeats.
std::vector<ColourSet> mutate_pool(ColourMask primaries, const std::vector<ColourSet>& arrived_blends,
                                   const std::vector<ColourSet>& used);

/// Size of mutate_pool without materialising it.
long pool_size(ColourMask primaries, const std::vector<ColourSet>& arrived_blends, const std::vector<ColourSet>& used);

/// Primaries a vertex holding nothing needs to cover `demand` out-arcs:
/// ceil(log2(demand + 1)) under BLEND, the demand itself otherwise.
int required_primaries(int demand, Mode mode);

/// Minimum number of new primaries a vertex must receive before firing.
int augmentation_needed(const ProcessState& state, const Digraph& d, Vertex v, Mode mode, Policy policy);

/// Colours augmentation would add at `v` when `count` new primaries are needed.
ColourMask augmentation_colours(const ProcessState& state, Vertex v, int count, Policy policy);

/// Validates the plan and applies the t = 0 allocations.
ProcessState initial_state(const Digraph& d, const AllocationPlan& plan, Mode mode);

/// Vertices whose in-arcs are all tattooed and which still have an untattooed out-arc.
std::vector<Vertex> ready_vertices(const ProcessState& state, const Digraph& d);

/// Augments `v` as needed, then tattoos every assigned out-arc.
ProcessState fire(const ProcessState& state, const Digraph& d, Vertex v, const std::vector<ArcAssignment>& assignment,
                  Mode mode, Policy policy);

RunResult run_schedule(const Digraph& d, const AllocationPlan& plan, const DispatchSchedule& schedule, Mode mode);

/// Fires the lowest-id ready vertex each step, handing out the lowest label
/// sums first (canonical order breaks ties), arcs in id order.
RunResult run_greedy(const Digraph& d, const AllocationPlan& plan, Mode mode);

/// Plan with nothing allocated except the required count at each source.
AllocationPlan source_plan(const Digraph& d, Mode mode, Policy policy = Policy::Smallest);

}  // namespace tattoo
