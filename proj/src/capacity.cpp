#include "dsscap/capacity.hpp"

#include "dsscap/errors.hpp"

#include <algorithm>
#include <numeric>

namespace dsscap {

namespace {

std::vector<Rational> sorted_copy(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Rational homogeneous_capacity(const Rational& alpha, const Rational& gamma,
                              int k, int d) {
  if (alpha < 0 || gamma < 0)
    throw DssError(ErrorCode::NegativeValue, "alpha and gamma must be >= 0");
  if (k < 1 || k > d)
    throw DssError(ErrorCode::ParamViolation,
                   "need 1 <= k <= d, got k=" + std::to_string(k) +
                       " d=" + std::to_string(d));
  Rational total = 0;
  for (int i = 1; i <= k; ++i) {
    const Rational download = Rational(d - i + 1) * gamma / d;
    total += std::min(alpha, download);
  }
  return total;
}

Rational average_upper_bound(const DssConfig& config) {
  auto [alpha_bar, gamma_bar] = system_averages(config);
  return homogeneous_capacity(alpha_bar, gamma_bar, config.params.k,
                              config.params.d);
}

std::pair<Rational, Rational> general_bounds(const DssConfig& config) {
  const auto& p = config.params;
  std::vector<Rational> alpha = sorted_copy(config.alpha);
  std::vector<Rational> beta = sorted_beta_multiset(config);
  const size_t m = beta.size();

  Rational c_min, c_max;
  bool first = true;
  Rational alpha_prefix = 0;
  for (int l = 0; l <= p.k; ++l) {
    if (l > 0) alpha_prefix += alpha[l - 1];
    // Number of bandwidth terms a cut needs once l storage terms are taken.
    const int h = (2 * p.d - p.k - l + 1) * (p.k - l) / 2;
    Rational low = alpha_prefix, high = alpha_prefix;
    for (int j = 0; j < h; ++j) {
      low += beta[j];
      high += beta[m - 1 - j];
    }
    if (first || low < c_min) c_min = low;
    if (first || high < c_max) c_max = high;
    first = false;
  }
  return {c_min, c_max};
}

std::pair<Rational, Rational> helper_only_bounds(const DssConfig& config) {
  auto betas = per_node_betas(config);
  if (!betas)
    throw DssError(ErrorCode::ModelUnsupported,
                   "helper-identity bounds need a homogeneous or helper_only model");
  const auto& p = config.params;
  std::vector<Rational> alpha = sorted_copy(config.alpha);
  std::vector<Rational> beta = sorted_copy(*betas);

  Rational lo = 0, hi = 0;
  for (int i = 1; i <= p.k; ++i) {
    Rational cheap = 0;  // the d-i+1 smallest helpers
    for (int j = 1; j <= p.d - i + 1; ++j) cheap += beta[j - 1];
    lo += std::min(alpha[i - 1], cheap);

    Rational window = 0;  // helpers i+1 .. d+1 in sorted order
    for (int j = i + 1; j <= p.d + 1; ++j) window += beta[j - 1];
    hi += std::min(alpha[i - 1], window);
  }

  auto cross = helper_only_bounds_switch_form(config);
  if (cross.first != lo || cross.second != hi)
    throw DssError(ErrorCode::OracleMismatch,
                   "helper-identity bound forms disagree: (" + format_rational(lo) +
                       "," + format_rational(hi) + ") vs (" +
                       format_rational(cross.first) + "," +
                       format_rational(cross.second) + ")");
  return {lo, hi};
}

std::pair<Rational, Rational> helper_only_bounds_switch_form(const DssConfig& config) {
  auto betas = per_node_betas(config);
  if (!betas)
    throw DssError(ErrorCode::ModelUnsupported,
                   "helper-identity bounds need a homogeneous or helper_only model");
  const auto& p = config.params;
  std::vector<Rational> alpha = sorted_copy(config.alpha);
  std::vector<Rational> beta = sorted_copy(*betas);

  Rational lo, hi;
  bool first = true;
  Rational alpha_prefix = 0;
  for (int l = 0; l <= p.k; ++l) {
    if (l > 0) alpha_prefix += alpha[l - 1];
    Rational low = alpha_prefix;
    for (int j = 0; j <= p.k - l - 1; ++j)
      for (int i = 1; i <= p.d - l - j; ++i) low += beta[i - 1];
    Rational high = alpha_prefix;
    for (int j = 1; j <= p.k - l; ++j)
      for (int i = l + 1 + j; i <= p.d + 1; ++i) high += beta[i - 1];
    if (first || low < lo) lo = low;
    if (first || high < hi) hi = high;
    first = false;
  }
  return {lo, hi};
}

ExactCapacity exact_capacity(const DssConfig& config, std::optional<int> limit) {
  auto betas = per_node_betas(config);
  if (!betas)
    throw DssError(ErrorCode::ModelUnsupported,
                   "exact capacity needs a homogeneous or helper_only model");
  const auto& p = config.params;
  const int max_n = limit.value_or(10);
  if (p.n > max_n)
    throw DssError(ErrorCode::SearchTooLarge,
                   "enumeration over n=" + std::to_string(p.n) +
                       " nodes exceeds the limit of " + std::to_string(max_n) +
                       " (raise the limit to force it)");
  const std::vector<Rational>& beta = *betas;

  // Indices sorted by (beta, index): the cheapest valid helper set at every
  // step is a prefix of this order restricted to the allowed pool, and taking
  // the smallest indices among equal betas makes the witness deterministic.
  std::vector<int> by_beta(p.n);
  std::iota(by_beta.begin(), by_beta.end(), 0);
  std::stable_sort(by_beta.begin(), by_beta.end(),
                   [&](int a, int b) { return beta[a] < beta[b]; });

  std::optional<CapacityWitness> best;
  std::vector<int> tuple;
  std::vector<bool> used(p.n, false);
  std::vector<std::vector<int>> helper_sets;
  std::vector<Rational> terms;

  auto descend = [&](auto&& self) -> void {
    const int i = static_cast<int>(tuple.size());
    if (i == p.k) {
      Rational value = 0;
      for (const auto& t : terms) value += t;
      if (!best || value < best->value)
        best = CapacityWitness{tuple, helper_sets, terms, value};
      return;
    }
    for (int f = 0; f < p.n; ++f) {
      if (used[f]) continue;
      used[f] = true;
      tuple.push_back(f);

      const int want = p.d - i;  // fresh helpers for the (i+1)-th failure
      std::vector<int> set;
      set.reserve(want);
      Rational sum = 0;
      for (int idx : by_beta) {
        if (used[idx]) continue;
        set.push_back(idx);
        sum += beta[idx];
        if (static_cast<int>(set.size()) == want) break;
      }
      std::sort(set.begin(), set.end());
      helper_sets.push_back(std::move(set));
      terms.push_back(std::min(config.alpha[f], sum));

      self(self);

      terms.pop_back();
      helper_sets.pop_back();
      tuple.pop_back();
      used[f] = false;
    }
  };
  descend(descend);

  ExactCapacity out;
  out.value = best->value;
  out.witness = std::move(*best);
  return out;
}

BoundsReport bounds_report(const DssConfig& config, bool compute_exact,
                           std::optional<int> limit) {
  BoundsReport report;
  report.avg_upper = average_upper_bound(config);
  auto [c_min, c_max] = general_bounds(config);
  report.c_min = c_min;
  report.c_max = c_max;

  const bool helper_model = !std::holds_alternative<FullTable>(config.bandwidth);
  if (helper_model) report.cprime = helper_only_bounds(config);
  if (compute_exact && helper_model) report.exact = exact_capacity(config, limit);

  auto violated = [&](const std::string& what) {
    throw DssError(ErrorCode::SandwichViolation, what);
  };
  if (report.c_min > report.c_max) violated("c_min > c_max");
  if (report.cprime && report.cprime->first > report.cprime->second)
    violated("cprime_min > cprime_max");
  if (report.exact) {
    const Rational& c = report.exact->value;
    if (c < report.c_min || c > report.c_max)
      violated("exact capacity outside [c_min, c_max]");
    if (c > report.avg_upper) violated("exact capacity above the average bound");
    if (report.cprime && (c < report.cprime->first || c > report.cprime->second))
      violated("exact capacity outside [cprime_min, cprime_max]");
  }
  return report;
}

}  // namespace dsscap
