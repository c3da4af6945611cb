#include "dsscap/lift.hpp"

#include "dsscap/errors.hpp"

#include <algorithm>
#include <numeric>

namespace dsscap {

DssConfig permute_config(const DssConfig& config, const std::vector<int>& sigma) {
  const int n = config.params.n;
  if (static_cast<int>(sigma.size()) != n)
    throw DssError(ErrorCode::NotAPermutation,
                   "sigma has " + std::to_string(sigma.size()) +
                       " entries, expected " + std::to_string(n));
  std::vector<bool> seen(n, false);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[v])
      throw DssError(ErrorCode::NotAPermutation, "sigma is not a bijection on 1..n");
    seen[v] = true;
  }

  DssConfig out = config;
  for (int i = 0; i < n; ++i) out.alpha[i] = config.alpha[sigma[i]];

  if (std::holds_alternative<Homogeneous>(config.bandwidth)) return out;

  if (const auto* ho = std::get_if<HelperOnly>(&config.bandwidth)) {
    auto& beta = std::get<HelperOnly>(out.bandwidth).beta;
    for (int i = 0; i < n; ++i) beta[i] = ho->beta[sigma[i]];
    return out;
  }

  const auto& table = std::get<FullTable>(config.bandwidth).entries;
  FullTable relabeled;
  for (const auto& [key, values] : table) {
    // Relabeled node i plays the role of original node sigma(i), so entry
    // (j, S) of the result reads from (sigma(j), sigma(S)) of the original.
    const auto& [j, helpers] = key;
    std::vector<int> mapped(helpers.size());
    for (size_t t = 0; t < helpers.size(); ++t) mapped[t] = sigma[helpers[t]];
    std::vector<int> mapped_sorted = mapped;
    std::sort(mapped_sorted.begin(), mapped_sorted.end());
    const auto& src = table.at({sigma[j], mapped_sorted});
    std::vector<Rational> out_values(helpers.size());
    for (size_t t = 0; t < helpers.size(); ++t) {
      auto pos = std::lower_bound(mapped_sorted.begin(), mapped_sorted.end(),
                                  mapped[t]) -
                 mapped_sorted.begin();
      out_values[t] = src[pos];
    }
    relabeled.entries[key] = std::move(out_values);
  }
  out.bandwidth = std::move(relabeled);
  return out;
}

DssConfig combine_configs(const std::vector<DssConfig>& configs) {
  if (configs.empty())
    throw DssError(ErrorCode::ParamMismatch, "nothing to combine");
  const auto& p0 = configs.front().params;
  for (const auto& c : configs)
    if (c.params.n != p0.n || c.params.k != p0.k || c.params.d != p0.d)
      throw DssError(ErrorCode::ParamMismatch,
                     "all systems must share (n, k, d)");

  DssConfig acc = expand_to_full(configs.front());
  auto& acc_table = std::get<FullTable>(acc.bandwidth).entries;
  for (size_t t = 1; t < configs.size(); ++t) {
    DssConfig next = expand_to_full(configs[t]);
    for (int i = 0; i < p0.n; ++i) acc.alpha[i] += next.alpha[i];
    const auto& next_table = std::get<FullTable>(next.bandwidth).entries;
    for (auto& [key, values] : acc_table) {
      const auto& add = next_table.at(key);
      for (size_t v = 0; v < values.size(); ++v) values[v] += add[v];
    }
  }
  return acc;
}

namespace {

LiftReport lift_by_formula(const DssConfig& config) {
  const auto& p = config.params;
  auto [alpha_bar, gamma_bar] = system_averages(config);
  const BigInt nfact = factorial(p.n);
  LiftReport report;
  report.alpha_b = Rational(nfact) * alpha_bar;
  report.beta_b = Rational(nfact) * gamma_bar / p.d;
  report.capacity_b =
      homogeneous_capacity(report.alpha_b, Rational(p.d) * report.beta_b, p.k, p.d);
  report.implied_bound = report.capacity_b / Rational(nfact);
  return report;
}

LiftReport lift_by_explicit_sum(const DssConfig& config) {
  const auto& p = config.params;
  if (p.n > 6)
    throw DssError(ErrorCode::TooManyPermutations,
                   "explicit lift materializes n! copies; n=" + std::to_string(p.n) +
                       " is over the n <= 6 cap (use formula mode)");

  std::vector<int> sigma(p.n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<DssConfig> copies;
  do {
    copies.push_back(permute_config(config, sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  DssConfig combined = combine_configs(copies);

  for (const auto& a : combined.alpha)
    if (a != combined.alpha.front())
      throw DssError(ErrorCode::LiftNotHomogeneous,
                     "combined system has unequal node storage");
  const auto& table = std::get<FullTable>(combined.bandwidth).entries;
  const Rational& beta = table.begin()->second.front();
  for (const auto& [key, values] : table)
    for (const auto& v : values)
      if (v != beta)
        throw DssError(ErrorCode::LiftNotHomogeneous,
                       "combined system has asymmetric repair bandwidth");

  LiftReport report;
  report.alpha_b = combined.alpha.front();
  report.beta_b = beta;
  report.capacity_b =
      homogeneous_capacity(report.alpha_b, Rational(p.d) * report.beta_b, p.k, p.d);
  report.implied_bound = report.capacity_b / Rational(factorial(p.n));
  return report;
}

}  // namespace

LiftReport permutation_lift(const DssConfig& config, LiftMode mode) {
  if (mode == LiftMode::Formula) return lift_by_formula(config);

  LiftReport explicit_report = lift_by_explicit_sum(config);
  LiftReport formula_report = lift_by_formula(config);
  if (explicit_report.alpha_b != formula_report.alpha_b ||
      explicit_report.beta_b != formula_report.beta_b ||
      explicit_report.capacity_b != formula_report.capacity_b ||
      explicit_report.implied_bound != formula_report.implied_bound)
    throw DssError(ErrorCode::OracleMismatch,
                   "explicit lift disagrees with the closed form");
  return explicit_report;
}

LiftCheck lift_bound_check(const DssConfig& config, std::optional<int> limit) {
  LiftCheck check;
  check.exact = exact_capacity(config, limit).value;
  check.lift = lift_by_formula(config);
  const BigInt nfact = factorial(config.params.n);
  check.margin_big = check.lift.capacity_b - Rational(nfact) * check.exact;
  check.margin_bound = check.lift.implied_bound - check.exact;
  if (check.margin_big < 0 || check.margin_bound < 0)
    throw DssError(ErrorCode::SandwichViolation,
                   "exact capacity exceeds the lifted-system bound");
  return check;
}

}  // namespace dsscap
