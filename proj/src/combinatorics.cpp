#include "dsscap/combinatorics.hpp"

namespace dsscap {

bool next_combination(std::vector<int>& state, int n, int k) {
  if (k > n || k < 0) return false;
  if (state.empty()) {
    for (int j = 0; j < k; ++j) state.push_back(j);
    return true;
  }
  if (k == 0 || state[0] == n - k) return false;
  int i = k - 1;
  while (state[i] >= n - k + i) --i;
  ++state[i];
  for (int j = i + 1; j < k; ++j) state[j] = state[i] + j - i;
  return true;
}

void for_each_combination(const std::vector<int>& pool, int k,
                          const std::function<void(const std::vector<int>&)>& fn) {
  const int n = static_cast<int>(pool.size());
  if (k > n || k < 0) return;
  std::vector<int> idx;
  std::vector<int> combo(k);
  while (next_combination(idx, n, k)) {
    for (int j = 0; j < k; ++j) combo[j] = pool[idx[j]];
    fn(combo);
  }
}

namespace {

void tuple_rec(int n, int k, std::vector<int>& tuple, std::vector<bool>& used,
               const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(tuple.size()) == k) {
    fn(tuple);
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = true;
    tuple.push_back(i);
    tuple_rec(n, k, tuple, used, fn);
    tuple.pop_back();
    used[i] = false;
  }
}

}  // namespace

void for_each_tuple(int n, int k,
                    const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> tuple;
  std::vector<bool> used(n, false);
  tuple.reserve(k);
  tuple_rec(n, k, tuple, used, fn);
}

}  // namespace dsscap
