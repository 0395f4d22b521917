#pragma once

#include <map>
#include <variant>
#include <vector>

#include "tattoo/engine.hpp"
#include "tattoo/graph.hpp"
#include "tattoo/optimizer.hpp"

namespace tattoo {

inline constexpr int kOracleMaxEdges = 6;

using OracleValues = std::map<Quantity, std::variant<long, Rational>>;

/// Brute force over every acyclic orientation, every allocation plan with
/// cost <= cost_bound and every dispatch, sharing no firing code with the
/// engine. Returns the mode's cost quantity, the minimum label sum at that
/// cost, INDEX and RAW_RATIO. cost_bound <= 0 means |E|, which always
/// suffices. Refuses graphs with more than kOracleMaxEdges edges.
OracleValues oracle_invariants(const Graph& g, Mode mode, int cost_bound = 0, Policy policy = Policy::Smallest);

/// Every connected simple graph with 1..max_edges edges, one per isomorphism
/// class, ordered by edge count, then vertex count, then canonical edge list.
std::vector<Graph> connected_graph_corpus(int max_edges);

}  // namespace tattoo
