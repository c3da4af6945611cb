#pragma once

#include "dsscap/config.hpp"
#include "dsscap/rational.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dsscap {

// Failure histories and their information-flow-graph realizations. The
// min-cut between source and any user is an upper bound on what that user can
// reconstruct, and minimizing it over histories recovers the system capacity,
// which is how these graphs serve as a brute-force oracle for the closed-form
// result.

/// One failure and repair. Helpers name node indices; at any moment each node
/// index has exactly one live instance, so this pins down the instances that
/// ship data (always the live ones, which keeps histories causally valid by
/// construction).
struct RepairEvent {
  int failed = 0;
  std::vector<int> helpers;  // d distinct node indices, none equal to failed
};

struct RepairSchedule {
  std::vector<RepairEvent> events;
  std::vector<int> user_set;  // k distinct node indices, contacted at the end
};

/// A directed acyclic source/sink network with integer capacities. Every node
/// instance becomes an (in, out) vertex pair joined by a storage edge; repair
/// downloads become bandwidth edges between instances. Rational capacities
/// are multiplied by `scale` (the denominator LCM) so max-flow runs on exact
/// integers; `infinite` stands in for the unconstrained source/user edges and
/// exceeds the sum of all finite capacities.
struct FlowGraph {
  struct Edge {
    int from;
    int to;
    BigInt cap;
  };
  int vertex_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<Edge> edges;
  BigInt scale = 1;
  BigInt infinite = 0;
  std::vector<std::string> labels;  // per vertex, for dumps
};

/// The canonical worst-case history for a failure tuple: the i-th failed node
/// downloads from all previously repaired nodes plus the cheapest d-i fresh
/// nodes outside the tuple prefix (ties by index). Needs a helper-identity
/// bandwidth model. The user contacts exactly the repaired nodes.
RepairSchedule chain_schedule(const DssConfig& config, const std::vector<int>& tuple);

/// Same chain structure with caller-chosen fresh helper sets; fresh_sets[i]
/// must have d-i entries disjoint from tuple[0..i]. Works for any model.
RepairSchedule chain_schedule_explicit(const DssConfig& config,
                                       const std::vector<int>& tuple,
                                       const std::vector<std::vector<int>>& fresh_sets);

FlowGraph build_flow_graph(const DssConfig& config, const RepairSchedule& schedule);

/// Exact min-cut value of the graph divided by its scale.
Rational max_flow_min_cut(const FlowGraph& graph);

enum class OracleMode {
  Chains,      // minimize over the canonical chain of every failure tuple
  Exhaustive,  // additionally enumerate every history up to depth k
};

/// Brute-force capacity: the minimum min-cut over the enumerated histories.
/// Guards: n <= 8 for chains, n <= 5 for exhaustive (override via limit).
Rational oracle_capacity(const DssConfig& config, OracleMode mode,
                         std::optional<int> limit = std::nullopt);

/// Uniformly random causally valid schedule with up to max_events events.
RepairSchedule random_schedule(const DssConfig& config, std::mt19937_64& rng,
                               int max_events);

/// One edge per line: "src dst capacity", with # comments carrying the scale
/// and the vertex labels.
std::string dump_graph(const FlowGraph& graph);

}  // namespace dsscap
