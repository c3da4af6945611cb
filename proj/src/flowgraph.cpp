#include "dsscap/flowgraph.hpp"

#include "dsscap/combinatorics.hpp"
#include "dsscap/errors.hpp"
#include "dsscap/rng.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

namespace dsscap {

namespace {

void check_tuple(const DssConfig& config, const std::vector<int>& tuple) {
  const auto& p = config.params;
  if (static_cast<int>(tuple.size()) != p.k)
    throw DssError(ErrorCode::ParamViolation,
                   "failure tuple has " + std::to_string(tuple.size()) +
                       " entries, expected k=" + std::to_string(p.k));
  std::vector<bool> seen(p.n, false);
  for (int f : tuple) {
    if (f < 0 || f >= p.n)
      throw DssError(ErrorCode::IndexOutOfRange,
                     "node index " + std::to_string(f + 1) + " outside 1.." +
                         std::to_string(p.n));
    if (seen[f])
      throw DssError(ErrorCode::DuplicateIndices,
                     "node " + std::to_string(f + 1) + " fails twice in the tuple");
    seen[f] = true;
  }
}

RepairSchedule assemble_chain(const std::vector<int>& tuple,
                              const std::vector<std::vector<int>>& fresh_sets) {
  RepairSchedule schedule;
  for (size_t i = 0; i < tuple.size(); ++i) {
    RepairEvent event;
    event.failed = tuple[i];
    event.helpers.assign(tuple.begin(), tuple.begin() + i);
    event.helpers.insert(event.helpers.end(), fresh_sets[i].begin(),
                         fresh_sets[i].end());
    std::sort(event.helpers.begin(), event.helpers.end());
    schedule.events.push_back(std::move(event));
  }
  schedule.user_set = tuple;
  std::sort(schedule.user_set.begin(), schedule.user_set.end());
  return schedule;
}

// Dinic blocking-flow max-flow, exact over the capacity type.
template <typename Cap>
class MaxFlow {
public:
  explicit MaxFlow(int n) : head_(n, -1) {}

  void add_edge(int from, int to, Cap cap) {
    edges_.push_back({to, head_[from], std::move(cap)});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[to], Cap(0)});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  Cap run(int source, int sink) {
    Cap total(0);
    while (bfs(source, sink)) {
      iter_ = head_;
      for (;;) {
        Cap pushed = dfs(source, sink, Cap(-1));
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

private:
  struct Edge {
    int to;
    int next;
    Cap cap;
  };

  bool bfs(int source, int sink) {
    level_.assign(head_.size(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop();
      for (int e = head_[v]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[v] + 1;
          queue.push(edges_[e].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // limit < 0 means unbounded.
  Cap dfs(int v, int sink, Cap limit) {
    if (v == sink) return limit;
    for (int& e = iter_[v]; e != -1; e = edges_[e].next) {
      Edge& edge = edges_[e];
      if (edge.cap <= 0 || level_[edge.to] != level_[v] + 1) continue;
      Cap next_limit = edge.cap;
      if (limit >= 0 && limit < next_limit) next_limit = limit;
      Cap pushed = dfs(edge.to, sink, next_limit);
      if (pushed > 0) {
        edge.cap -= pushed;
        edges_[e ^ 1].cap += pushed;
        return pushed;
      }
      level_[edge.to] = -1;
    }
    return Cap(0);
  }

  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<Edge> edges_;
};

}  // namespace

RepairSchedule chain_schedule(const DssConfig& config, const std::vector<int>& tuple) {
  auto betas = per_node_betas(config);
  if (!betas)
    throw DssError(ErrorCode::ModelUnsupported,
                   "minimizing chain schedules need a helper-identity model");
  check_tuple(config, tuple);
  const auto& p = config.params;

  // Indices by (beta, index); the cheapest fresh helpers at every step are a
  // prefix of this order restricted to nodes outside the tuple prefix.
  std::vector<int> by_beta(p.n);
  std::iota(by_beta.begin(), by_beta.end(), 0);
  std::stable_sort(by_beta.begin(), by_beta.end(),
                   [&](int a, int b) { return (*betas)[a] < (*betas)[b]; });

  std::vector<bool> failed(p.n, false);
  std::vector<std::vector<int>> fresh_sets;
  for (size_t i = 0; i < tuple.size(); ++i) {
    failed[tuple[i]] = true;
    const int want = p.d - static_cast<int>(i);
    std::vector<int> fresh;
    for (int idx : by_beta) {
      if (failed[idx]) continue;
      fresh.push_back(idx);
      if (static_cast<int>(fresh.size()) == want) break;
    }
    std::sort(fresh.begin(), fresh.end());
    fresh_sets.push_back(std::move(fresh));
  }
  return assemble_chain(tuple, fresh_sets);
}

RepairSchedule chain_schedule_explicit(const DssConfig& config,
                                       const std::vector<int>& tuple,
                                       const std::vector<std::vector<int>>& fresh_sets) {
  check_tuple(config, tuple);
  const auto& p = config.params;
  if (fresh_sets.size() != tuple.size())
    throw DssError(ErrorCode::BadHelpers, "need one fresh helper set per failure");
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (static_cast<int>(fresh_sets[i].size()) != p.d - static_cast<int>(i))
      throw DssError(ErrorCode::BadHelpers,
                     "fresh set " + std::to_string(i + 1) + " must have d-" +
                         std::to_string(i) + " nodes");
    for (int h : fresh_sets[i]) {
      if (h < 0 || h >= p.n)
        throw DssError(ErrorCode::IndexOutOfRange,
                       "helper " + std::to_string(h + 1) + " outside 1.." +
                           std::to_string(p.n));
      if (std::find(tuple.begin(), tuple.begin() + i + 1, h) != tuple.begin() + i + 1)
        throw DssError(ErrorCode::BadHelpers,
                       "fresh helper " + std::to_string(h + 1) +
                           " already failed at step " + std::to_string(i + 1));
    }
  }
  return assemble_chain(tuple, fresh_sets);
}

FlowGraph build_flow_graph(const DssConfig& config, const RepairSchedule& schedule) {
  const auto& p = config.params;

  FlowGraph graph;
  graph.labels = {"source", "sink"};
  graph.source = 0;
  graph.sink = 1;

  // Live instance of each node index, as a vertex pair (in, out).
  struct Instance {
    int in;
    int out;
  };
  std::vector<Instance> live(p.n);
  std::vector<int> version(p.n, 0);
  int next_vertex = 2;

  struct PendingEdge {
    int from;
    int to;
    Rational cap;
    bool infinite;
  };
  std::vector<PendingEdge> pending;

  auto new_instance = [&](int node) {
    int in = next_vertex++;
    int out = next_vertex++;
    std::string tag = "v" + std::to_string(node + 1) + "#" +
                      std::to_string(version[node]);
    graph.labels.push_back(tag + ".in");
    graph.labels.push_back(tag + ".out");
    pending.push_back({in, out, config.alpha[node], false});
    live[node] = {in, out};
  };

  for (int j = 0; j < p.n; ++j) {
    new_instance(j);
    pending.push_back({graph.source, live[j].in, Rational(0), true});
  }

  for (size_t e = 0; e < schedule.events.size(); ++e) {
    const auto& event = schedule.events[e];
    std::vector<int> helpers = event.helpers;
    std::sort(helpers.begin(), helpers.end());
    std::vector<Rational> betas;
    try {
      betas = beta_for_repair(config, event.failed, helpers);
    } catch (const DssError& err) {
      throw DssError(ErrorCode::CausalityViolation,
                     "event " + std::to_string(e + 1) + ": " + err.what());
    }
    // Helper edges leave the instances live before the replacement appears.
    std::vector<Instance> sources;
    sources.reserve(helpers.size());
    for (int h : helpers) sources.push_back(live[h]);

    ++version[event.failed];
    new_instance(event.failed);
    for (size_t i = 0; i < helpers.size(); ++i)
      pending.push_back({sources[i].out, live[event.failed].in, betas[i], false});
  }

  if (static_cast<int>(schedule.user_set.size()) != p.k)
    throw DssError(ErrorCode::BadUserSet,
                   "user contacts " + std::to_string(schedule.user_set.size()) +
                       " nodes, expected k=" + std::to_string(p.k));
  std::vector<bool> contacted(p.n, false);
  for (int u : schedule.user_set) {
    if (u < 0 || u >= p.n)
      throw DssError(ErrorCode::BadUserSet,
                     "user node " + std::to_string(u + 1) + " outside 1.." +
                         std::to_string(p.n));
    if (contacted[u])
      throw DssError(ErrorCode::BadUserSet,
                     "user contacts node " + std::to_string(u + 1) + " twice");
    contacted[u] = true;
    pending.push_back({live[u].out, graph.sink, Rational(0), true});
  }

  graph.vertex_count = next_vertex;
  graph.scale = 1;
  for (const auto& edge : pending)
    if (!edge.infinite) graph.scale = lcm(graph.scale, rat_den(edge.cap));

  BigInt finite_total = 0;
  for (const auto& edge : pending)
    if (!edge.infinite) finite_total += rat_num(edge.cap * Rational(graph.scale));
  graph.infinite = finite_total + 1;

  for (const auto& edge : pending) {
    BigInt cap = edge.infinite ? graph.infinite
                               : BigInt(rat_num(edge.cap * Rational(graph.scale)));
    graph.edges.push_back({edge.from, edge.to, std::move(cap)});
  }
  return graph;
}

Rational max_flow_min_cut(const FlowGraph& graph) {
  // Use machine integers when every capacity fits comfortably; fall back to
  // arbitrary precision otherwise. The value is identical either way.
  const BigInt int64_budget = BigInt(std::numeric_limits<long long>::max()) / 4;
  BigInt flow;
  if (graph.infinite < int64_budget) {
    MaxFlow<long long> solver(graph.vertex_count);
    for (const auto& e : graph.edges)
      solver.add_edge(e.from, e.to, static_cast<long long>(e.cap));
    flow = solver.run(graph.source, graph.sink);
  } else {
    MaxFlow<BigInt> solver(graph.vertex_count);
    for (const auto& e : graph.edges) solver.add_edge(e.from, e.to, e.cap);
    flow = solver.run(graph.source, graph.sink);
  }
  return Rational(flow, graph.scale);
}

Rational oracle_capacity(const DssConfig& config, OracleMode mode,
                         std::optional<int> limit) {
  if (!per_node_betas(config))
    throw DssError(ErrorCode::ModelUnsupported,
                   "the brute-force oracle needs a helper-identity model");
  const auto& p = config.params;
  const int max_n = limit.value_or(mode == OracleMode::Chains ? 8 : 5);
  if (p.n > max_n)
    throw DssError(ErrorCode::SearchTooLarge,
                   "oracle enumeration over n=" + std::to_string(p.n) +
                       " nodes exceeds the limit of " + std::to_string(max_n));

  std::optional<Rational> best;
  auto consider = [&](const Rational& cut) {
    if (!best || cut < *best) best = cut;
  };

  for_each_tuple(p.n, p.k, [&](const std::vector<int>& tuple) {
    consider(max_flow_min_cut(build_flow_graph(config, chain_schedule(config, tuple))));
  });

  if (mode == OracleMode::Exhaustive) {
    // Histories grow as (n * binom(n-1, d))^depth; refuse anything absurd.
    BigInt branches = BigInt(p.n) * binomial(p.n - 1, p.d);
    BigInt graphs = 0, prefix = 1;
    for (int depth = 0; depth <= p.k; ++depth) {
      graphs += prefix * binomial(p.n, p.k);
      prefix *= branches;
    }
    if (graphs > 20'000'000)
      throw DssError(ErrorCode::SearchTooLarge,
                     "exhaustive oracle would evaluate " + graphs.str() + " graphs");

    std::vector<int> user_pool(p.n);
    std::iota(user_pool.begin(), user_pool.end(), 0);
    RepairSchedule schedule;
    auto explore = [&](auto&& self) -> void {
      for_each_combination(user_pool, p.k, [&](const std::vector<int>& users) {
        schedule.user_set = users;
        consider(max_flow_min_cut(build_flow_graph(config, schedule)));
      });
      if (static_cast<int>(schedule.events.size()) == p.k) return;
      for (int f = 0; f < p.n; ++f) {
        std::vector<int> others;
        for (int i = 0; i < p.n; ++i)
          if (i != f) others.push_back(i);
        for_each_combination(others, p.d, [&](const std::vector<int>& helpers) {
          schedule.events.push_back({f, helpers});
          self(self);
          schedule.events.pop_back();
        });
      }
    };
    explore(explore);
  }
  return *best;
}

RepairSchedule random_schedule(const DssConfig& config, std::mt19937_64& rng,
                               int max_events) {
  const auto& p = config.params;
  RepairSchedule schedule;
  const int count = static_cast<int>(uniform_below(rng, max_events + 1));
  for (int e = 0; e < count; ++e) {
    RepairEvent event;
    event.failed = static_cast<int>(uniform_below(rng, p.n));
    std::vector<int> pool;
    for (int i = 0; i < p.n; ++i)
      if (i != event.failed) pool.push_back(i);
    for (int pick = 0; pick < p.d; ++pick) {
      size_t at = uniform_below(rng, pool.size() - pick);
      std::swap(pool[pick], pool[pick + at]);
    }
    event.helpers.assign(pool.begin(), pool.begin() + p.d);
    std::sort(event.helpers.begin(), event.helpers.end());
    schedule.events.push_back(std::move(event));
  }
  std::vector<int> pool(p.n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int pick = 0; pick < p.k; ++pick) {
    size_t at = uniform_below(rng, pool.size() - pick);
    std::swap(pool[pick], pool[pick + at]);
  }
  schedule.user_set.assign(pool.begin(), pool.begin() + p.k);
  std::sort(schedule.user_set.begin(), schedule.user_set.end());
  return schedule;
}

std::string dump_graph(const FlowGraph& graph) {
  std::ostringstream os;
  os << "# flow graph: " << graph.vertex_count << " vertices, "
     << graph.edges.size() << " edges, scale " << graph.scale.str() << "\n";
  for (int v = 0; v < graph.vertex_count; ++v)
    os << "# " << v << " " << graph.labels[v] << "\n";
  for (const auto& e : graph.edges)
    os << e.from << " " << e.to << " " << e.cap.str() << "\n";
  return os.str();
}

}  // namespace dsscap
