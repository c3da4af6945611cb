#pragma once

#include "dsscap/capacity.hpp"
#include "dsscap/config.hpp"

#include <optional>
#include <vector>

namespace dsscap {

// Combining all n! node-permuted copies of a system yields a homogeneous
// system with symmetric repair whose per-node resources are n! times the
// original averages. Its closed-form capacity, divided by n!, certifies the
// average-resource upper bound numerically.

struct LiftReport {
  Rational alpha_b;        // storage per node of the combined system
  Rational beta_b;         // per-helper repair bandwidth of the combined system
  Rational capacity_b;     // closed-form capacity of the combined system
  Rational implied_bound;  // capacity_b / n!
};

enum class LiftMode { Formula, Explicit };

struct LiftCheck {
  Rational exact;         // exact capacity of the original system
  LiftReport lift;
  Rational margin_big;    // capacity_b - n! * exact, must be >= 0
  Rational margin_bound;  // implied_bound - exact, must be >= 0
};

/// Relabels nodes: node i of the result carries the resources of node
/// sigma[i]. sigma must be a bijection on 0..n-1.
DssConfig permute_config(const DssConfig& config, const std::vector<int>& sigma);

/// Component-wise sum of systems sharing (n, k, d); models are expanded to
/// Full first, so the result always carries an explicit table.
DssConfig combine_configs(const std::vector<DssConfig>& configs);

/// Formula mode computes the combined system's resources directly from the
/// averages. Explicit mode (n <= 6) materializes the n! permuted copies,
/// verifies the sum is homogeneous with a symmetric table, and reads the
/// resources off it. Both modes agree exactly.
LiftReport permutation_lift(const DssConfig& config, LiftMode mode);

/// Verifies n! * exact <= capacity_b and exact <= implied_bound, returning
/// both margins. Throws SandwichViolation if either fails (a bug, not input).
LiftCheck lift_bound_check(const DssConfig& config,
                           std::optional<int> limit = std::nullopt);

}  // namespace dsscap
