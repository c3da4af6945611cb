#pragma once

#include "dsscap/config.hpp"
#include "dsscap/flowgraph.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace dsscap {

// Functional-repair achievability at desk scale: store a file as random
// linear combinations over a prime field, replay failure histories, and
// check reconstruction by rank. Rank can never exceed the min-cut of the
// matching flow graph, which makes the simulator a third, independent route
// to the capacity results.

struct FieldSpec {
  std::uint64_t p = 65537;
};

/// Throws InvalidField unless p is a prime in [2, 2^32).
void check_field(const FieldSpec& field);

using GfMatrix = std::vector<std::vector<std::uint32_t>>;

/// Rank of the matrix over GF(p).
int gf_rank(const GfMatrix& matrix, std::uint64_t p);

struct RlncState {
  DssConfig config;  // integer units only
  FieldSpec field;
  int file_dim = 0;                  // symbols in the stored file
  std::vector<GfMatrix> node_rows;   // per node: alpha_j rows of file_dim coefficients
  std::uint64_t seed = 0;
  std::mt19937_64 rng;               // advances as repairs are applied
};

/// Fills every node with alpha_j uniformly random coefficient rows. The
/// config must already be in integer units (NonIntegerUnits otherwise).
RlncState init_storage(const DssConfig& config, int file_dim, FieldSpec field,
                       std::uint64_t seed);

/// Deterministic variant: node contents are supplied instead of drawn.
RlncState init_storage_with_rows(const DssConfig& config, int file_dim,
                                 FieldSpec field, std::vector<GfMatrix> rows);

/// Replaces `failed`: every helper ships beta fresh random combinations of
/// its own rows, and the replacement stores alpha_failed random combinations
/// of everything received.
void apply_repair(RlncState& state, int failed, const std::vector<int>& helpers);

void apply_schedule(RlncState& state, const RepairSchedule& schedule);

/// Rank over GF(p) of the stacked rows of the contacted nodes.
/// Reconstruction succeeds iff this equals file_dim.
int reconstruct_rank(const RlncState& state, const std::vector<int>& user_set);

struct TrialFailure {
  int trial = 0;
  std::vector<int> user_set;
  int rank = 0;
};

struct TrialReport {
  FieldSpec field;
  int file_dim = 0;
  int rounds = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  int successes = 0;  // trials where every k-subset reconstructed
  std::optional<TrialFailure> first_failure;
};

/// Per trial: fresh random storage, `rounds` random repairs, then a rank
/// check over every k-subset of nodes. Trials draw independent sub-seeds
/// derived from `seed`.
TrialReport run_random_trials(const DssConfig& config, int file_dim, int rounds,
                              int trials, FieldSpec field, std::uint64_t seed);

struct AdversarialReport {
  FieldSpec field;
  int file_dim = 0;
  Rational capacity;          // exact capacity of the (integer) system
  std::vector<int> tuple;     // minimizing failure tuple that was replayed
  int rank = 0;               // user rank after the replay
  bool certified = false;     // rank <= capacity
  std::uint64_t seed = 0;
};

/// Replays the minimizing failure history behind the exact-capacity witness
/// and checks that the witness user set cannot reconstruct more than the
/// capacity, regardless of the coding randomness. Intended with
/// file_dim = capacity + 1 to certify infeasibility.
AdversarialReport adversarial_witness_trial(const DssConfig& config, int file_dim,
                                            FieldSpec field, std::uint64_t seed,
                                            std::optional<int> limit = std::nullopt);

}  // namespace dsscap
