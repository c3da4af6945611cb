#include "dsscap/config.hpp"

#include "dsscap/combinatorics.hpp"
#include "dsscap/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dsscap {

namespace {

void check_params(const SystemParams& p) {
  if (p.n < 2 || p.k < 1 || p.d < 1)
    throw DssError(ErrorCode::ParamViolation,
                   "need n >= 2, k >= 1, d >= 1, got n=" + std::to_string(p.n) +
                       " k=" + std::to_string(p.k) + " d=" + std::to_string(p.d));
  if (p.k > p.d || p.d > p.n - 1)
    throw DssError(ErrorCode::ParamViolation,
                   "need k <= d <= n-1, got n=" + std::to_string(p.n) +
                       " k=" + std::to_string(p.k) + " d=" + std::to_string(p.d));
}

void check_nonnegative(const Rational& v, const std::string& what) {
  if (v < 0) throw DssError(ErrorCode::NegativeValue, what + " is negative");
}

std::string key_string(const FullTable::Key& key) {
  std::ostringstream os;
  os << "(j=" << key.first + 1 << ", S={";
  for (size_t i = 0; i < key.second.size(); ++i)
    os << (i ? "," : "") << key.second[i] + 1;
  os << "})";
  return os.str();
}

}  // namespace

const char* model_name(const RepairBandwidthModel& model) {
  if (std::holds_alternative<Homogeneous>(model)) return "homogeneous";
  if (std::holds_alternative<HelperOnly>(model)) return "helper_only";
  return "full";
}

std::vector<std::string> validate(const DssConfig& config) {
  const auto& p = config.params;
  check_params(p);

  if (static_cast<int>(config.alpha.size()) != p.n)
    throw DssError(ErrorCode::DimensionMismatch,
                   "alpha has " + std::to_string(config.alpha.size()) +
                       " entries, expected n=" + std::to_string(p.n));
  for (int i = 0; i < p.n; ++i)
    check_nonnegative(config.alpha[i], "alpha[" + std::to_string(i + 1) + "]");

  std::vector<std::string> warnings;
  auto warn_large_beta = [&](int helper, const Rational& beta) {
    if (beta > config.alpha[helper]) {
      std::ostringstream os;
      os << "helper node " << helper + 1 << " ships " << format_rational(beta)
         << " per repair, more than its own storage "
         << format_rational(config.alpha[helper]);
      warnings.push_back(os.str());
    }
  };

  if (const auto* hom = std::get_if<Homogeneous>(&config.bandwidth)) {
    check_nonnegative(hom->gamma, "gamma");
    Rational beta = hom->gamma / p.d;
    for (int i = 0; i < p.n; ++i) warn_large_beta(i, beta);
  } else if (const auto* ho = std::get_if<HelperOnly>(&config.bandwidth)) {
    if (static_cast<int>(ho->beta.size()) != p.n)
      throw DssError(ErrorCode::DimensionMismatch,
                     "beta has " + std::to_string(ho->beta.size()) +
                         " entries, expected n=" + std::to_string(p.n));
    for (int i = 0; i < p.n; ++i) {
      check_nonnegative(ho->beta[i], "beta[" + std::to_string(i + 1) + "]");
      warn_large_beta(i, ho->beta[i]);
    }
  } else {
    const auto& table = std::get<FullTable>(config.bandwidth).entries;
    // Every (j, S) context must be present, with one value per helper.
    BigInt expected = BigInt(p.n) * binomial(p.n - 1, p.d);
    if (BigInt(table.size()) != expected)
      throw DssError(ErrorCode::IncompleteTable,
                     "table has " + std::to_string(table.size()) + " keys, expected " +
                         expected.str());
    for (const auto& [key, values] : table) {
      const auto& [j, helpers] = key;
      if (j < 0 || j >= p.n)
        throw DssError(ErrorCode::IndexOutOfRange, "table key " + key_string(key));
      if (static_cast<int>(helpers.size()) != p.d ||
          !std::is_sorted(helpers.begin(), helpers.end()) ||
          std::adjacent_find(helpers.begin(), helpers.end()) != helpers.end())
        throw DssError(ErrorCode::IncompleteTable,
                       "malformed helper set in key " + key_string(key));
      for (int h : helpers) {
        if (h < 0 || h >= p.n)
          throw DssError(ErrorCode::IndexOutOfRange, "table key " + key_string(key));
        if (h == j)
          throw DssError(ErrorCode::IncompleteTable,
                         "failed node inside helper set " + key_string(key));
      }
      if (values.size() != helpers.size())
        throw DssError(ErrorCode::IncompleteTable,
                       "value count mismatch at " + key_string(key));
      for (size_t i = 0; i < values.size(); ++i) {
        check_nonnegative(values[i], "beta at " + key_string(key));
        warn_large_beta(helpers[i], values[i]);
      }
    }
  }
  return warnings;
}

Rational node_avg_repair_bw(const DssConfig& config, int j) {
  const auto& p = config.params;
  if (j < 0 || j >= p.n)
    throw DssError(ErrorCode::IndexOutOfRange,
                   "node index " + std::to_string(j + 1) + " outside 1.." +
                       std::to_string(p.n));

  if (const auto* hom = std::get_if<Homogeneous>(&config.bandwidth))
    return hom->gamma;

  if (const auto* ho = std::get_if<HelperOnly>(&config.bandwidth)) {
    // Each helper i != j appears in binom(n-2, d-1) of the binom(n-1, d)
    // helper sets, so the average collapses to d/(n-1) times the beta sum.
    Rational sum = 0;
    for (int i = 0; i < p.n; ++i)
      if (i != j) sum += ho->beta[i];
    return sum * Rational(p.d, p.n - 1);
  }

  const auto& table = std::get<FullTable>(config.bandwidth).entries;
  Rational total = 0;
  for (const auto& [key, values] : table) {
    if (key.first != j) continue;
    for (const auto& v : values) total += v;
  }
  return total / Rational(binomial(p.n - 1, p.d));
}

std::pair<Rational, Rational> system_averages(const DssConfig& config) {
  const int n = config.params.n;
  Rational alpha_bar = 0;
  for (const auto& a : config.alpha) alpha_bar += a;
  alpha_bar /= n;
  Rational gamma_bar = 0;
  for (int j = 0; j < n; ++j) gamma_bar += node_avg_repair_bw(config, j);
  gamma_bar /= n;
  return {alpha_bar, gamma_bar};
}

std::vector<Rational> sorted_beta_multiset(const DssConfig& config) {
  const auto& p = config.params;
  const BigInt m = BigInt(p.n) * p.d * binomial(p.n - 1, p.d);
  if (m > 50'000'000)
    throw DssError(ErrorCode::SearchTooLarge,
                   "the per-helper bandwidth multiset has " + m.str() +
                       " entries; this system is too large to expand");
  std::vector<Rational> out;

  if (const auto* hom = std::get_if<Homogeneous>(&config.bandwidth)) {
    out.assign(static_cast<size_t>(m), hom->gamma / p.d);
    return out;
  }
  if (const auto* ho = std::get_if<HelperOnly>(&config.bandwidth)) {
    // Helper i serves each of the n-1 other nodes in binom(n-2, d-1) contexts.
    BigInt copies = BigInt(p.n - 1) * binomial(p.n - 2, p.d - 1);
    for (int i = 0; i < p.n; ++i)
      for (BigInt c = 0; c < copies; ++c) out.push_back(ho->beta[i]);
    std::sort(out.begin(), out.end());
    return out;
  }
  const auto& table = std::get<FullTable>(config.bandwidth).entries;
  for (const auto& [key, values] : table)
    out.insert(out.end(), values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

DssConfig expand_to_full(const DssConfig& config) {
  const auto& p = config.params;
  if (std::holds_alternative<FullTable>(config.bandwidth)) return config;

  FullTable table;
  std::vector<int> others;
  for (int j = 0; j < p.n; ++j) {
    others.clear();
    for (int i = 0; i < p.n; ++i)
      if (i != j) others.push_back(i);
    for_each_combination(others, p.d, [&](const std::vector<int>& helpers) {
      table.entries[{j, helpers}] = beta_for_repair(config, j, helpers);
    });
  }
  DssConfig out = config;
  out.bandwidth = std::move(table);
  return out;
}

DssConfig scale_config(const DssConfig& config, const Rational& c) {
  if (c <= 0)
    throw DssError(ErrorCode::NonPositiveScalar,
                   "scale factor " + format_rational(c) + " must be positive");
  DssConfig out = config;
  for (auto& a : out.alpha) a *= c;
  if (auto* hom = std::get_if<Homogeneous>(&out.bandwidth)) {
    hom->gamma *= c;
  } else if (auto* ho = std::get_if<HelperOnly>(&out.bandwidth)) {
    for (auto& b : ho->beta) b *= c;
  } else {
    for (auto& [key, values] : std::get<FullTable>(out.bandwidth).entries)
      for (auto& v : values) v *= c;
  }
  return out;
}

BigInt integer_scale_factor(const DssConfig& config) {
  BigInt l = 1;
  auto fold = [&](const Rational& v) { l = lcm(l, rat_den(v)); };
  for (const auto& a : config.alpha) fold(a);
  if (const auto* hom = std::get_if<Homogeneous>(&config.bandwidth)) {
    fold(hom->gamma / config.params.d);  // the effective per-helper amount
  } else if (const auto* ho = std::get_if<HelperOnly>(&config.bandwidth)) {
    for (const auto& b : ho->beta) fold(b);
  } else {
    for (const auto& [key, values] : std::get<FullTable>(config.bandwidth).entries)
      for (const auto& v : values) fold(v);
  }
  return l;
}

bool is_integer_config(const DssConfig& config) {
  return integer_scale_factor(config) == 1;
}

std::optional<std::vector<Rational>> per_node_betas(const DssConfig& config) {
  if (const auto* hom = std::get_if<Homogeneous>(&config.bandwidth))
    return std::vector<Rational>(config.params.n, hom->gamma / config.params.d);
  if (const auto* ho = std::get_if<HelperOnly>(&config.bandwidth)) return ho->beta;
  return std::nullopt;
}

std::vector<Rational> beta_for_repair(const DssConfig& config, int failed,
                                      const std::vector<int>& helpers) {
  const auto& p = config.params;
  if (failed < 0 || failed >= p.n)
    throw DssError(ErrorCode::IndexOutOfRange,
                   "failed node " + std::to_string(failed + 1) + " outside 1.." +
                       std::to_string(p.n));
  if (static_cast<int>(helpers.size()) != p.d)
    throw DssError(ErrorCode::BadHelpers,
                   "expected d=" + std::to_string(p.d) + " helpers, got " +
                       std::to_string(helpers.size()));
  for (int h : helpers) {
    if (h < 0 || h >= p.n)
      throw DssError(ErrorCode::IndexOutOfRange,
                     "helper " + std::to_string(h + 1) + " outside 1.." +
                         std::to_string(p.n));
    if (h == failed)
      throw DssError(ErrorCode::BadHelpers, "failed node listed as its own helper");
  }
  if (!std::is_sorted(helpers.begin(), helpers.end()) ||
      std::adjacent_find(helpers.begin(), helpers.end()) != helpers.end())
    throw DssError(ErrorCode::BadHelpers, "helper set must be sorted and distinct");

  if (const auto* hom = std::get_if<Homogeneous>(&config.bandwidth))
    return std::vector<Rational>(helpers.size(), hom->gamma / p.d);
  if (const auto* ho = std::get_if<HelperOnly>(&config.bandwidth)) {
    std::vector<Rational> out;
    out.reserve(helpers.size());
    for (int h : helpers) out.push_back(ho->beta[h]);
    return out;
  }
  const auto& table = std::get<FullTable>(config.bandwidth).entries;
  auto it = table.find({failed, helpers});
  if (it == table.end())
    throw DssError(ErrorCode::IncompleteTable,
                   "no table entry for " + key_string({failed, helpers}));
  return it->second;
}

}  // namespace dsscap
