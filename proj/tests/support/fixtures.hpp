#pragma once

#include "dsscap/config.hpp"
#include "dsscap/rng.hpp"

#include <random>
#include <vector>

namespace dsscap::testing {

// The two worked systems used as goldens throughout the suites.

inline DssConfig example1() {
  return DssConfig{{3, 2, 2},
                   {Rational(1), Rational(2), Rational(2)},
                   HelperOnly{{Rational(1), Rational(2), Rational(2)}}};
}

inline DssConfig example2() {
  return DssConfig{{3, 2, 2},
                   {Rational(5), Rational(6), Rational(7)},
                   HelperOnly{{Rational(3), Rational(4), Rational(5)}}};
}

inline DssConfig homogeneous_small() {
  return DssConfig{{3, 2, 2},
                   {Rational(10), Rational(10), Rational(10)},
                   Homogeneous{Rational(20)}};
}

inline SystemParams random_params(std::mt19937_64& rng, int max_n) {
  const int n = 3 + static_cast<int>(uniform_below(rng, max_n - 2));
  const int k = 1 + static_cast<int>(uniform_below(rng, n - 1));
  const int d = k + static_cast<int>(uniform_below(rng, n - k));
  return {n, k, d};
}

inline Rational random_value(std::mt19937_64& rng, int max_value,
                             bool allow_rational) {
  const BigInt num = uniform_below(rng, max_value + 1);
  if (!allow_rational) return Rational(num);
  const BigInt den = 1 + uniform_below(rng, 3);  // denominators 1..3
  return Rational(num, den);
}

inline DssConfig random_helper_only(std::mt19937_64& rng, int max_n = 5,
                                    int max_value = 3,
                                    bool allow_rational = false) {
  const SystemParams p = random_params(rng, max_n);
  std::vector<Rational> alpha, beta;
  for (int i = 0; i < p.n; ++i) {
    alpha.push_back(random_value(rng, max_value, allow_rational));
    beta.push_back(random_value(rng, max_value, allow_rational));
  }
  return {p, std::move(alpha), HelperOnly{std::move(beta)}};
}

inline DssConfig random_homogeneous(std::mt19937_64& rng, int max_n = 5,
                                    int max_value = 6,
                                    bool allow_rational = true) {
  const SystemParams p = random_params(rng, max_n);
  std::vector<Rational> alpha(p.n, random_value(rng, max_value, allow_rational));
  return {p, std::move(alpha),
          Homogeneous{random_value(rng, max_value, allow_rational)}};
}

inline DssConfig random_full(std::mt19937_64& rng, int max_n = 5,
                             int max_value = 3, bool allow_rational = false) {
  DssConfig base = random_helper_only(rng, max_n, max_value, allow_rational);
  DssConfig full = expand_to_full(base);
  for (auto& [key, values] : std::get<FullTable>(full.bandwidth).entries)
    for (auto& v : values) v = random_value(rng, max_value, allow_rational);
  return full;
}

/// Full model whose every repair context downloads exactly `gamma` in total,
/// split randomly across the d helpers.
inline DssConfig random_constant_total_full(std::mt19937_64& rng,
                                            const std::vector<Rational>& alpha,
                                            const SystemParams& params,
                                            const Rational& gamma) {
  DssConfig base{params, alpha, Homogeneous{gamma}};
  DssConfig full = expand_to_full(base);
  for (auto& [key, values] : std::get<FullTable>(full.bandwidth).entries) {
    std::vector<BigInt> weights(values.size());
    BigInt total = 0;
    for (auto& w : weights) {
      w = uniform_below(rng, 5);
      total += w;
    }
    if (total == 0) {
      weights[0] = 1;
      total = 1;
    }
    for (size_t i = 0; i < values.size(); ++i)
      values[i] = gamma * Rational(weights[i], total);
  }
  return full;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(uniform_below(rng, i + 1));
    std::swap(sigma[i], sigma[j]);
  }
  return sigma;
}

}  // namespace dsscap::testing
