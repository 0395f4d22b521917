#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>

#include "tattoo/engine.hpp"
#include "tattoo/graph.hpp"
#include "tattoo/rational.hpp"

namespace tattoo {

enum class Quantity { Br, Btau, Tau, MinLabelSum, Index, RawRatio };

const char* to_string(Quantity q);
Quantity parse_quantity(const std::string& text);

/// The cost quantity a mode minimises: BR for BRUSH, BTAU for FSG, TAU for BLEND.
Quantity cost_quantity(Mode mode);
Mode mode_of(Quantity cost_quantity);

/// Edge limit for full searches when nothing else is configured: the
/// TATTOO_MAX_EDGES environment variable, else 24.
int default_max_edges();

struct SearchLimits {
    int max_edges = default_max_edges();
    double time_budget_seconds = 0.0;  // 0 = unlimited
    int threads = 1;
};

/// Raised instead of returning an approximation when a configured limit is hit.
class SearchLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when no strategy completes (cyclic orientation, infeasible plan).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a witness fails to replay to the value claimed for it.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Lexicographic optimum over (cost, label sum): the minimum allocation cost,
/// then the minimum label sum among strategies attaining it.
struct SearchResult {
    Mode mode;
    Policy policy;
    int cost;
    long label_sum;
    Rational index;      // |E| / (cost * label_sum)
    Rational raw_ratio;  // |E| / label_sum
    Outcome witness;
    long orientations_searched;
};

struct InvariantResult {
    Quantity quantity;
    std::variant<long, Rational> value;
    Outcome witness;
    long orientations_searched;
};

InvariantResult to_invariant(const SearchResult& r, Quantity q);

/// Optimum for one fixed orientation. Throws InfeasibleError when cyclic.
SearchResult optimize_orientation(const Digraph& d, Mode mode, Policy policy = Policy::Smallest);

/// Optimum over every acyclic orientation. Ties on (cost, label sum) go to the
/// lexicographically smallest orientation bit-vector.
SearchResult optimize_graph(std::shared_ptr<const Graph> g, Mode mode, Policy policy = Policy::Smallest,
                            const SearchLimits& limits = {});

InvariantResult min_cost_for_orientation(const Digraph& d, Mode mode, Policy policy = Policy::Smallest);

/// quantity must be BR, BTAU or TAU and agree with `mode`.
InvariantResult invariant(std::shared_ptr<const Graph> g, Mode mode, Quantity quantity,
                          Policy policy = Policy::Smallest, const SearchLimits& limits = {});

/// The index search: cost minimum first, then the smallest label sum at that
/// cost. Both INDEX and RAW_RATIO are carried by the SearchResult.
SearchResult best_index(std::shared_ptr<const Graph> g, Mode mode, Policy policy = Policy::Smallest,
                        const SearchLimits& limits = {});

/// All values |E| / (cost * label_sum) over every complete schedule for a
/// fixed orientation and plan. Throws InfeasibleError if any firing would
/// need augmentation.
std::set<Rational> ratio_set(const Digraph& d, const AllocationPlan& plan, Mode mode);

/// Label sums behind ratio_set, for diagnostics.
std::set<long> label_sum_set(const Digraph& d, const AllocationPlan& plan, Mode mode);

}  // namespace tattoo
