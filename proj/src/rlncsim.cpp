#include "dsscap/rlncsim.hpp"

#include "dsscap/capacity.hpp"
#include "dsscap/combinatorics.hpp"
#include "dsscap/errors.hpp"
#include "dsscap/rng.hpp"

#include <algorithm>
#include <numeric>

namespace dsscap {

namespace {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

int checked_int(const Rational& value, const char* what) {
  if (!is_integer(value))
    throw DssError(ErrorCode::NonIntegerUnits,
                   std::string(what) + " " + format_rational(value) +
                       " is not an integer; scale the system first");
  BigInt n = rat_num(value);
  if (n < 0 || n > 1'000'000)
    throw DssError(ErrorCode::SearchTooLarge,
                   std::string(what) + " " + n.str() + " is outside sane simulation range");
  return static_cast<int>(n);
}

std::vector<std::uint32_t> random_row(std::mt19937_64& rng, int cols,
                                      std::uint64_t p) {
  std::vector<std::uint32_t> row(cols);
  for (auto& v : row) v = static_cast<std::uint32_t>(uniform_below(rng, p));
  return row;
}

// One fresh random combination of the given rows.
std::vector<std::uint32_t> random_combination(std::mt19937_64& rng,
                                              const GfMatrix& rows, int cols,
                                              std::uint64_t p) {
  std::vector<std::uint64_t> acc(cols, 0);
  for (const auto& row : rows) {
    std::uint64_t coeff = uniform_below(rng, p);
    if (coeff == 0) continue;
    for (int c = 0; c < cols; ++c) acc[c] = (acc[c] + coeff * row[c]) % p;
  }
  std::vector<std::uint32_t> out(cols);
  for (int c = 0; c < cols; ++c) out[c] = static_cast<std::uint32_t>(acc[c]);
  return out;
}

}  // namespace

void check_field(const FieldSpec& field) {
  const std::uint64_t p = field.p;
  if (p < 2 || p >= (1ull << 32))
    throw DssError(ErrorCode::InvalidField,
                   "field modulus must be a prime in [2, 2^32)");
  for (std::uint64_t f = 2; f * f <= p; ++f)
    if (p % f == 0)
      throw DssError(ErrorCode::InvalidField,
                     std::to_string(p) + " is not prime");
}

int gf_rank(const GfMatrix& matrix, std::uint64_t p) {
  GfMatrix m = matrix;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] % p != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    const std::uint64_t inv = mod_pow(m[rank][col], p - 2, p);
    for (int c = col; c < cols; ++c)
      m[rank][c] = static_cast<std::uint32_t>(m[rank][c] * inv % p);
    for (int r = rank + 1; r < rows; ++r) {
      const std::uint64_t factor = m[r][col] % p;
      if (factor == 0) continue;
      for (int c = col; c < cols; ++c) {
        std::uint64_t sub = factor * m[rank][c] % p;
        m[r][c] = static_cast<std::uint32_t>((m[r][c] + p - sub) % p);
      }
    }
    ++rank;
  }
  return rank;
}

RlncState init_storage(const DssConfig& config, int file_dim, FieldSpec field,
                       std::uint64_t seed) {
  check_field(field);
  if (file_dim < 0)
    throw DssError(ErrorCode::ParamViolation, "file dimension must be >= 0");
  if (!is_integer_config(config))
    throw DssError(ErrorCode::NonIntegerUnits,
                   "simulation needs integer units; scale by the denominator LCM first");

  RlncState state;
  state.config = config;
  state.field = field;
  state.file_dim = file_dim;
  state.seed = seed;
  state.rng.seed(seed);
  state.node_rows.resize(config.params.n);
  for (int j = 0; j < config.params.n; ++j) {
    const int rows = checked_int(config.alpha[j], "node storage");
    for (int r = 0; r < rows; ++r)
      state.node_rows[j].push_back(random_row(state.rng, file_dim, field.p));
  }
  return state;
}

RlncState init_storage_with_rows(const DssConfig& config, int file_dim,
                                 FieldSpec field, std::vector<GfMatrix> rows) {
  check_field(field);
  if (!is_integer_config(config))
    throw DssError(ErrorCode::NonIntegerUnits,
                   "simulation needs integer units; scale by the denominator LCM first");
  if (static_cast<int>(rows.size()) != config.params.n)
    throw DssError(ErrorCode::DimensionMismatch,
                   "need one row block per node");
  for (int j = 0; j < config.params.n; ++j) {
    if (static_cast<int>(rows[j].size()) != checked_int(config.alpha[j], "node storage"))
      throw DssError(ErrorCode::DimensionMismatch,
                     "node " + std::to_string(j + 1) + " must store exactly alpha rows");
    for (const auto& row : rows[j]) {
      if (static_cast<int>(row.size()) != file_dim)
        throw DssError(ErrorCode::DimensionMismatch,
                       "row width must equal the file dimension");
      for (auto v : row)
        if (v >= field.p)
          throw DssError(ErrorCode::InvalidField, "row entry outside the field");
    }
  }
  RlncState state;
  state.config = config;
  state.field = field;
  state.file_dim = file_dim;
  state.seed = 0;
  state.rng.seed(0);
  state.node_rows = std::move(rows);
  return state;
}

void apply_repair(RlncState& state, int failed, const std::vector<int>& helpers) {
  const auto& config = state.config;
  std::vector<int> sorted = helpers;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Rational> betas = beta_for_repair(config, failed, sorted);

  GfMatrix received;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const int shipped = checked_int(betas[i], "repair bandwidth");
    for (int t = 0; t < shipped; ++t)
      received.push_back(random_combination(state.rng, state.node_rows[sorted[i]],
                                            state.file_dim, state.field.p));
  }
  const int store = checked_int(config.alpha[failed], "node storage");
  GfMatrix replacement;
  for (int r = 0; r < store; ++r)
    replacement.push_back(
        random_combination(state.rng, received, state.file_dim, state.field.p));
  state.node_rows[failed] = std::move(replacement);
}

void apply_schedule(RlncState& state, const RepairSchedule& schedule) {
  for (const auto& event : schedule.events)
    apply_repair(state, event.failed, event.helpers);
}

int reconstruct_rank(const RlncState& state, const std::vector<int>& user_set) {
  const int n = state.config.params.n;
  if (static_cast<int>(user_set.size()) != state.config.params.k)
    throw DssError(ErrorCode::BadUserSet,
                   "user contacts " + std::to_string(user_set.size()) +
                       " nodes, expected k=" + std::to_string(state.config.params.k));
  std::vector<bool> seen(n, false);
  GfMatrix stacked;
  for (int u : user_set) {
    if (u < 0 || u >= n || seen[u])
      throw DssError(ErrorCode::BadUserSet, "user set must be distinct nodes in 1..n");
    seen[u] = true;
    for (const auto& row : state.node_rows[u]) stacked.push_back(row);
  }
  if (stacked.empty()) return 0;
  return gf_rank(stacked, state.field.p);
}

TrialReport run_random_trials(const DssConfig& config, int file_dim, int rounds,
                              int trials, FieldSpec field, std::uint64_t seed) {
  if (rounds < 0 || trials < 1)
    throw DssError(ErrorCode::ParamViolation, "need rounds >= 0 and trials >= 1");
  const auto& p = config.params;

  TrialReport report;
  report.field = field;
  report.file_dim = file_dim;
  report.rounds = rounds;
  report.trials = trials;
  report.seed = seed;

  std::vector<int> pool(p.n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = splitmix64(seed + static_cast<std::uint64_t>(t));
    RlncState state = init_storage(config, file_dim, field, trial_seed);
    for (int r = 0; r < rounds; ++r) {
      const int failed = static_cast<int>(uniform_below(state.rng, p.n));
      std::vector<int> others;
      for (int i = 0; i < p.n; ++i)
        if (i != failed) others.push_back(i);
      for (int pick = 0; pick < p.d; ++pick) {
        size_t at = uniform_below(state.rng, others.size() - pick);
        std::swap(others[pick], others[pick + at]);
      }
      std::vector<int> helpers(others.begin(), others.begin() + p.d);
      apply_repair(state, failed, helpers);
    }
    bool all_ok = true;
    for_each_combination(pool, p.k, [&](const std::vector<int>& users) {
      if (!all_ok) return;
      const int rank = reconstruct_rank(state, users);
      if (rank != file_dim) {
        all_ok = false;
        if (!report.first_failure) report.first_failure = TrialFailure{t, users, rank};
      }
    });
    if (all_ok) ++report.successes;
  }
  return report;
}

AdversarialReport adversarial_witness_trial(const DssConfig& config, int file_dim,
                                            FieldSpec field, std::uint64_t seed,
                                            std::optional<int> limit) {
  ExactCapacity exact = exact_capacity(config, limit);
  RepairSchedule schedule = chain_schedule_explicit(config, exact.witness.tuple,
                                                    exact.witness.helper_sets);
  RlncState state = init_storage(config, file_dim, field, seed);
  apply_schedule(state, schedule);

  AdversarialReport report;
  report.field = field;
  report.file_dim = file_dim;
  report.capacity = exact.value;
  report.tuple = exact.witness.tuple;
  report.seed = seed;
  report.rank = reconstruct_rank(state, schedule.user_set);
  report.certified = Rational(report.rank) <= exact.value;
  return report;
}

}  // namespace dsscap
