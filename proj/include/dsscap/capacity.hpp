#pragma once

#include "dsscap/config.hpp"
#include "dsscap/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace dsscap {

/// A minimizing failure sequence certifying the exact capacity value.
/// tuple[i] is the i-th failed node; helper_sets[i] is the set of live
/// original nodes (outside tuple[0..i]) it downloads fresh data from, of size
/// d - i; terms[i] = min(alpha[tuple[i]], sum of beta over helper_sets[i]).
struct CapacityWitness {
  std::vector<int> tuple;
  std::vector<std::vector<int>> helper_sets;
  std::vector<Rational> terms;
  Rational value;
};

struct ExactCapacity {
  Rational value;
  CapacityWitness witness;
};

struct BoundsReport {
  Rational avg_upper;
  Rational c_min;
  Rational c_max;
  std::optional<std::pair<Rational, Rational>> cprime;  // helper-only bounds
  std::optional<ExactCapacity> exact;
};

/// Capacity of a homogeneous system with symmetric repair:
/// sum over i = 1..k of min(alpha, (d-i+1) * gamma / d).
Rational homogeneous_capacity(const Rational& alpha, const Rational& gamma,
                              int k, int d);

/// Upper bound from average resources: the homogeneous capacity of a system
/// whose every node carries the mean storage and mean repair bandwidth.
Rational average_upper_bound(const DssConfig& config);

/// (lower, upper) bounds valid for any bandwidth model, computed from the
/// sorted storage vector and the sorted per-helper bandwidth multiset.
std::pair<Rational, Rational> general_bounds(const DssConfig& config);

/// Tighter (lower, upper) bounds for helper-identity bandwidth models.
/// Rejects Full models with ModelUnsupported.
std::pair<Rational, Rational> helper_only_bounds(const DssConfig& config);

/// Same bounds computed via the crossover form that switches from storage
/// terms to bandwidth terms at the best split point. Kept as an independent
/// route for cross-checking; helper_only_bounds asserts agreement.
std::pair<Rational, Rational> helper_only_bounds_switch_form(const DssConfig& config);

/// Exact capacity by enumerating all ordered failure tuples; the inner helper
/// choice is greedy over the smallest betas. Refuses n > limit (default 10)
/// since enumeration is factorial. Witness tie-break: lexicographically
/// smallest tuple, then lexicographically smallest helper sets.
ExactCapacity exact_capacity(const DssConfig& config,
                             std::optional<int> limit = std::nullopt);

/// Everything the bound operations can say about one system, with the
/// sandwich invariants checked before returning (violation means a bug here,
/// never bad input).
BoundsReport bounds_report(const DssConfig& config, bool compute_exact,
                           std::optional<int> limit = std::nullopt);

}  // namespace dsscap
