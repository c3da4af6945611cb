#pragma once

#include <functional>
#include <vector>

namespace dsscap {

/// Advances `state` to the next k-combination of {0,...,n-1} in lexicographic
/// order. Pass an empty vector to start; returns false when exhausted.
bool next_combination(std::vector<int>& state, int n, int k);

/// Calls fn once per k-combination of `pool` (pool must be sorted ascending;
/// combinations come out in lexicographic order over pool positions).
void for_each_combination(const std::vector<int>& pool, int k,
                          const std::function<void(const std::vector<int>&)>& fn);

/// Calls fn once per ordered tuple of k distinct elements of {0,...,n-1},
/// in lexicographic order.
void for_each_tuple(int n, int k,
                    const std::function<void(const std::vector<int>&)>& fn);

}  // namespace dsscap
