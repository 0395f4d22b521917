#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tattoo/engine.hpp"
#include "tattoo/graph.hpp"
#include "tattoo/optimizer.hpp"

namespace tattoo::report {

using nlohmann::json;

/// Quantities accepted by `compute`: the six invariants plus the ratio set of
/// the best-index witness.
enum class Query { Br, Btau, Tau, MinLabelSum, Index, RawRatio, RatioSet };

Query parse_query(const std::string& text);
const char* to_string(Query q);

struct ComputeRequest {
    std::shared_ptr<const Graph> graph;
    std::string label;  // family spec or input path, for the summary only
    Mode mode = Mode::Blend;
    Policy policy = Policy::Smallest;
    Query query = Query::Index;
    SearchLimits limits;
};

json graph_json(const Graph& g, const std::string& label);
std::shared_ptr<const Graph> graph_from_json(const json& j);

json witness_json(const Witness& w);
Witness witness_from_json(std::shared_ptr<const Graph> g, const json& j);

/// Runs the query and builds the result document. Cost quantities must match
/// the mode (br/brush, btau/fsg, tau/blend).
json compute(const ComputeRequest& request);

/// Re-runs the witness stored in a compute document and checks it reproduces
/// the recorded cost, label sum and value. Returns a summary document;
/// throws ConsistencyError on mismatch.
json replay(const json& document);

/// Removes run-to-run noise (timings) so documents can be compared byte for byte.
json without_timing(json document);

enum class Status { Pass, Fail, Discrepancy };
const char* to_string(Status s);

struct VerifyRow {
    std::string check;
    Status status;
    std::string detail;
};

/// Suites: "paper-anchors", "closed-forms", "oracle". Unknown names throw
/// std::invalid_argument. `corpus_edges` bounds the oracle suite's corpus.
std::vector<VerifyRow> verify(const std::string& suite, const SearchLimits& limits, int corpus_edges = 5);

void print_rows(std::ostream& out, const std::vector<VerifyRow>& rows);
bool any_failed(const std::vector<VerifyRow>& rows);

struct SweepInstance {
    std::string family;
    std::string params;
    std::shared_ptr<const Graph> graph;  // null when the instance could not be built
    std::string build_error;
};

/// Instances of a named family over inclusive parameter ranges. Families with
/// one parameter ignore `k`. Empty ranges give no instances.
std::vector<SweepInstance> family_instances(const std::string& family, std::pair<int, int> n, std::pair<int, int> k);

/// `count` random connected graphs on `vertices` vertices with `edges` edges
/// (a random spanning tree plus extra edges), reproducible from `seed`.
std::vector<SweepInstance> random_instances(int count, int vertices, int edges, std::uint64_t seed);

struct SweepOutcome {
    std::string csv;
    int failures;
    int rows;
};

/// One CSV row per instance, in input order. Refused or failing instances are
/// recorded with a status instead of aborting the sweep.
SweepOutcome sweep(const std::vector<SweepInstance>& instances, Mode mode, Policy policy, const SearchLimits& limits);

}  // namespace tattoo::report
