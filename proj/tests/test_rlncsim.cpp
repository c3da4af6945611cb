#include <doctest.h>

#include "dsscap/capacity.hpp"
#include "dsscap/errors.hpp"
#include "dsscap/rlncsim.hpp"

#include "support/fixtures.hpp"

#include <functional>
#include <random>

using namespace dsscap;
using namespace dsscap::testing;

namespace {

Rational rat(int num, int den = 1) { return Rational(num, den); }

// A deterministic code for the (3,2,2) worked example storing (x, y, z):
// node 1 keeps x, node 2 keeps (y, z), node 3 keeps two mixtures involving x,
// so that any pair of nodes recovers all three symbols.
std::vector<GfMatrix> worked_example_code(std::uint64_t p) {
  const std::uint32_t minus1 = static_cast<std::uint32_t>(p - 1);
  return {
      {{1, 0, 0}},
      {{0, 1, 0}, {0, 0, 1}},
      {{1, 1, 1}, {0, 1, minus1}},
  };
}

}  // namespace

TEST_CASE("field validation") {
  check_field(FieldSpec{2});
  check_field(FieldSpec{65537});
  CHECK_THROWS_AS(check_field(FieldSpec{1}), DssError);
  CHECK_THROWS_AS(check_field(FieldSpec{4}), DssError);
  CHECK_THROWS_AS(check_field(FieldSpec{65536}), DssError);
  CHECK_THROWS_AS(check_field(FieldSpec{1ull << 33}), DssError);
}

TEST_CASE("rank over small fields") {
  CHECK(gf_rank({{1, 0}, {0, 1}}, 5) == 2);
  CHECK(gf_rank({{0, 0}, {0, 0}}, 5) == 0);
  CHECK(gf_rank({{1, 2}, {2, 4}}, 5) == 1);
  CHECK(gf_rank({{1, 2}, {2, 4}}, 7) == 1);
  CHECK(gf_rank({{2, 3}, {3, 2}}, 5) == 1);  // second row is 4x the first mod 5
  CHECK(gf_rank({}, 5) == 0);
}

TEST_CASE("initial storage shapes and determinism") {
  RlncState a = init_storage(example1(), 3, FieldSpec{}, 99);
  RlncState b = init_storage(example1(), 3, FieldSpec{}, 99);
  CHECK(a.node_rows == b.node_rows);
  CHECK(a.node_rows[0].size() == 1);
  CHECK(a.node_rows[1].size() == 2);
  CHECK(a.node_rows[2].size() == 2);

  RlncState c = init_storage(example1(), 3, FieldSpec{}, 100);
  CHECK(a.node_rows != c.node_rows);

  CHECK_THROWS_AS(init_storage(scale_config(example1(), rat(1, 3)), 3,
                               FieldSpec{}, 1),
                  DssError);
}

TEST_CASE("the deterministic worked-example code reconstructs from any pair") {
  RlncState state =
      init_storage_with_rows(example1(), 3, FieldSpec{}, worked_example_code(65537));
  CHECK(reconstruct_rank(state, {0, 1}) == 3);
  CHECK(reconstruct_rank(state, {0, 2}) == 3);
  CHECK(reconstruct_rank(state, {1, 2}) == 3);
}

TEST_CASE("rank is limited by contacted storage") {
  RlncState state = init_storage(example1(), 4, FieldSpec{}, 5);
  CHECK(reconstruct_rank(state, {0, 1}) <= 3);  // their rows total 1 + 2
}

TEST_CASE("one-symbol files store scalars everywhere") {
  RlncState state = init_storage(example1(), 1, FieldSpec{}, 6);
  for (int j = 0; j < 3; ++j)
    for (const auto& row : state.node_rows[j]) CHECK(row.size() == 1);
}

TEST_CASE("zero rows give zero rank") {
  std::vector<GfMatrix> rows = {{{0, 0, 0}}, {{0, 0, 0}, {0, 0, 0}},
                                {{0, 0, 0}, {0, 0, 0}}};
  RlncState state = init_storage_with_rows(example1(), 3, FieldSpec{}, rows);
  CHECK(reconstruct_rank(state, {0, 1}) == 0);
}

TEST_CASE("repair replaces the failed node's rows") {
  RlncState state = init_storage(example1(), 3, FieldSpec{}, 17);
  apply_repair(state, 0, {1, 2});
  CHECK(state.node_rows[0].size() == 1);

  RlncState replay = init_storage(example1(), 3, FieldSpec{}, 17);
  apply_repair(replay, 0, {1, 2});
  CHECK(state.node_rows == replay.node_rows);

  CHECK_THROWS_AS(apply_repair(state, 0, {0, 1}), DssError);
  CHECK_THROWS_AS(apply_repair(state, 0, {1}), DssError);
}

TEST_CASE("zero-bandwidth repairs wipe the node") {
  DssConfig config = example1();
  std::get<HelperOnly>(config.bandwidth).beta = {rat(0), rat(0), rat(0)};
  RlncState state = init_storage(config, 3, FieldSpec{}, 23);
  apply_repair(state, 1, {0, 2});
  CHECK(gf_rank(state.node_rows[1], state.field.p) == 0);
}

TEST_CASE("repaired rows cannot outrank what was received") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 40; ++i) {
    DssConfig config = random_helper_only(rng, 5, 3);
    const auto& p = config.params;
    RlncState state = init_storage(config, 6, FieldSpec{}, rng());
    const int failed = static_cast<int>(uniform_below(rng, p.n));
    std::vector<int> pool;
    for (int j = 0; j < p.n; ++j)
      if (j != failed) pool.push_back(j);
    for (int pick = 0; pick < p.d; ++pick) {
      size_t at = uniform_below(rng, pool.size() - pick);
      std::swap(pool[pick], pool[pick + at]);
    }
    std::vector<int> helpers(pool.begin(), pool.begin() + p.d);
    std::sort(helpers.begin(), helpers.end());
    apply_repair(state, failed, helpers);

    Rational shipped = 0;
    for (const Rational& b : beta_for_repair(config, failed, helpers)) shipped += b;
    const int rank = gf_rank(state.node_rows[failed], state.field.p);
    CHECK(Rational(rank) <= std::min(config.alpha[failed], shipped));
  }
}

TEST_CASE("rank never exceeds the min-cut of the same history") {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 30; ++i) {
    DssConfig config = random_helper_only(rng, 4, 3);
    RepairSchedule schedule = random_schedule(config, rng, 2 * config.params.k);
    const Rational cut =
        max_flow_min_cut(build_flow_graph(config, schedule));
    const int file_dim = static_cast<int>(rat_num(cut)) + 2;
    RlncState state = init_storage(config, file_dim, FieldSpec{}, rng());
    apply_schedule(state, schedule);
    CHECK(Rational(reconstruct_rank(state, schedule.user_set)) <= cut);
  }
}

TEST_CASE("random trials on the worked example") {
  TrialReport report = run_random_trials(example1(), 3, 10, 40, FieldSpec{}, 77);
  CHECK(report.successes == report.trials);
  CHECK_FALSE(report.first_failure.has_value());

  TrialReport replay = run_random_trials(example1(), 3, 10, 40, FieldSpec{}, 77);
  CHECK(replay.successes == report.successes);

  TrialReport empty = run_random_trials(example1(), 0, 5, 10, FieldSpec{}, 1);
  CHECK(empty.successes == empty.trials);  // rank 0 always reaches file_dim 0
}

TEST_CASE("tiny fields fail visibly more often") {
  TrialReport big = run_random_trials(example1(), 3, 8, 120, FieldSpec{65537}, 5);
  TrialReport tiny = run_random_trials(example1(), 3, 8, 120, FieldSpec{2}, 5);
  CHECK(big.successes > tiny.successes);
  CHECK(tiny.first_failure.has_value());
}

TEST_CASE("oversized files are never reconstructible past the cut") {
  AdversarialReport a = adversarial_witness_trial(example1(), 4, FieldSpec{}, 3);
  CHECK(a.capacity == rat(3));
  CHECK(a.rank <= 3);
  CHECK(a.certified);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    AdversarialReport e2 =
        adversarial_witness_trial(example2(), 10, FieldSpec{}, seed);
    CHECK(e2.capacity == rat(9));
    CHECK(e2.rank <= 9);
    CHECK(e2.certified);
  }

  AdversarialReport hom =
      adversarial_witness_trial(homogeneous_small(), 21, FieldSpec{}, 11);
  CHECK(hom.capacity == rat(20));
  CHECK(hom.rank <= 20);
  CHECK(hom.certified);
}
