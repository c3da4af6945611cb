#pragma once

#include "dsscap/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dsscap {

// Node indices are 0-based throughout the core. File formats, CLI output and
// the Python API use the 1-based identifiers of the host system; the
// conversion happens only at those boundaries.

struct SystemParams {
  int n = 0;  // node count
  int k = 0;  // nodes a user must contact to reconstruct
  int d = 0;  // helpers contacted during a repair
};

/// Symmetric repair: every helper ships gamma/d regardless of context.
struct Homogeneous {
  Rational gamma;
};

/// Per-helper bandwidth that depends only on the helper's identity.
struct HelperOnly {
  std::vector<Rational> beta;  // one entry per node
};

/// Fully general bandwidth. Key is (failed node j, helper set S sorted
/// ascending, j not in S, |S| = d); the value vector aligns with sorted S and
/// holds the amount each helper ships for that repair context.
struct FullTable {
  using Key = std::pair<int, std::vector<int>>;
  std::map<Key, std::vector<Rational>> entries;
};

using RepairBandwidthModel = std::variant<Homogeneous, HelperOnly, FullTable>;

struct DssConfig {
  SystemParams params;
  std::vector<Rational> alpha;  // storage per node, data units
  RepairBandwidthModel bandwidth;
};

const char* model_name(const RepairBandwidthModel& model);

/// Checks every structural invariant (dimensions, parameter ordering,
/// non-negativity, table completeness). Throws DssError on violation.
/// Returns non-fatal warnings, currently one per helper whose bandwidth
/// exceeds its own storage; such systems are legal and never clamped.
std::vector<std::string> validate(const DssConfig& config);

/// Average amount node j downloads over all equally likely helper sets.
Rational node_avg_repair_bw(const DssConfig& config, int j);

/// (mean storage per node, mean of node_avg_repair_bw over all nodes).
std::pair<Rational, Rational> system_averages(const DssConfig& config);

/// Every per-helper bandwidth entry of the expanded table, ascending,
/// duplicates retained. Size is n * d * binom(n-1, d).
std::vector<Rational> sorted_beta_multiset(const DssConfig& config);

/// Canonical form: same system with an explicit FullTable model. Idempotent.
DssConfig expand_to_full(const DssConfig& config);

/// Multiplies all storage and bandwidth values by c > 0. Capacities and
/// bounds scale linearly, so scaling by the denominator LCM yields an
/// equivalent integer-valued system.
DssConfig scale_config(const DssConfig& config, const Rational& c);

/// LCM of the denominators of all alpha and effective per-helper beta values.
BigInt integer_scale_factor(const DssConfig& config);

bool is_integer_config(const DssConfig& config);

/// Per-helper amounts for repairing node `failed` from helper node set
/// `helpers` (sorted ascending, size d, not containing `failed`). Result
/// aligns with `helpers`. This is the single lookup the flow-graph and
/// simulation layers share.
std::vector<Rational> beta_for_repair(const DssConfig& config, int failed,
                                      const std::vector<int>& helpers);

/// Per-node shipped amount for models where bandwidth depends only on the
/// helper identity (gamma/d under homogeneous symmetric repair). nullopt for
/// Full models.
std::optional<std::vector<Rational>> per_node_betas(const DssConfig& config);

}  // namespace dsscap
