#include "dsscap/cli.hpp"

#include "dsscap/capacity.hpp"
#include "dsscap/errors.hpp"
#include "dsscap/flowgraph.hpp"
#include "dsscap/json_io.hpp"
#include "dsscap/lift.hpp"
#include "dsscap/rlncsim.hpp"
#include "dsscap/rng.hpp"
#include "dsscap/secrecy.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace dsscap {

namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<int> max_n_override() {
  const char* env = std::getenv("DSS_CAPACITY_MAX_N");
  if (!env) return std::nullopt;
  try {
    return std::stoi(env);
  } catch (const std::exception&) {
    throw DssError(ErrorCode::ParseError,
                   "DSS_CAPACITY_MAX_N must be an integer, got '" +
                       std::string(env) + "'");
  }
}

ordered_json rat(const Rational& r) { return format_rational(r); }

ordered_json indices_1based(const std::vector<int>& v) {
  ordered_json arr = ordered_json::array();
  for (int i : v) arr.push_back(i + 1);
  return arr;
}

ordered_json witness_to_json(const CapacityWitness& w) {
  ordered_json doc;
  doc["tuple"] = indices_1based(w.tuple);
  ordered_json sets = ordered_json::array();
  for (const auto& s : w.helper_sets) sets.push_back(indices_1based(s));
  doc["helper_sets"] = std::move(sets);
  ordered_json terms = ordered_json::array();
  for (const auto& t : w.terms) terms.push_back(rat(t));
  doc["terms"] = std::move(terms);
  doc["value"] = rat(w.value);
  return doc;
}

// Table rendering walks the same JSON the machine report carries, adding a
// decimal hint after non-integer rationals.
std::string table_scalar(const ordered_json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      return format_rational_approx(parse_rational(s));
    } catch (const DssError&) {
      return s;
    }
  }
  if (v.is_null()) return "none";
  return v.dump();
}

void render_table(std::ostream& out, const ordered_json& doc, int indent) {
  const std::string pad(indent * 2, ' ');
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      out << pad << key << ":\n";
      render_table(out, value, indent + 1);
    } else if (value.is_array()) {
      out << pad << key << ": [";
      for (size_t i = 0; i < value.size(); ++i)
        out << (i ? ", " : "") << (value[i].is_string()
                                       ? value[i].get<std::string>()
                                       : value[i].dump());
      out << "]\n";
    } else {
      out << pad << key << ": " << table_scalar(value) << "\n";
    }
  }
}

void emit_report(std::ostream& out, const std::string& format,
                 const std::string& command, const DssConfig& config,
                 const std::vector<std::string>& warnings,
                 const ordered_json& results) {
  ordered_json report;
  report["command"] = command;
  report["config_digest"] = config_digest(config);
  report["results"] = results;
  report["warnings"] = warnings;
  if (format == "json") {
    out << report.dump(2) << "\n";
    return;
  }
  out << "command: " << command << "\n";
  out << "config_digest: " << report["config_digest"].get<std::string>() << "\n";
  for (const auto& w : warnings) out << "warning: " << w << "\n";
  render_table(out, results, 0);
}

ordered_json bounds_to_json(const BoundsReport& report) {
  ordered_json results;
  results["avg_upper"] = rat(report.avg_upper);
  results["c_min"] = rat(report.c_min);
  results["c_max"] = rat(report.c_max);
  if (report.cprime) {
    results["cprime_min"] = rat(report.cprime->first);
    results["cprime_max"] = rat(report.cprime->second);
  }
  if (report.exact) {
    ordered_json exact;
    exact["value"] = rat(report.exact->value);
    exact["witness"] = witness_to_json(report.exact->witness);
    results["exact"] = std::move(exact);
  }
  return results;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"capacity and secrecy bounds for heterogeneous distributed storage"};
  app.require_subcommand(1);

  std::string format = "table";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  std::string config_path;

  auto* cmd_validate =
      app.add_subcommand("validate", "check a system description");
  cmd_validate->add_option("config", config_path, "system JSON file")->required();

  bool want_exact = false;
  auto* cmd_bounds =
      app.add_subcommand("bounds", "capacity bounds from averages and sorted resources");
  cmd_bounds->add_option("config", config_path)->required();
  cmd_bounds->add_flag("--exact", want_exact, "also run the exact enumeration");

  auto* cmd_capacity =
      app.add_subcommand("capacity", "exact capacity with a minimizing witness");
  cmd_capacity->add_option("config", config_path)->required();

  int ell = 0;
  auto* cmd_secrecy =
      app.add_subcommand("secrecy", "upper bound with ell eavesdropped nodes");
  cmd_secrecy->add_option("config", config_path)->required();
  cmd_secrecy->add_option("--ell", ell, "number of compromised nodes")->required();

  bool explicit_lift = false;
  auto* cmd_lift =
      app.add_subcommand("lift", "combined permuted-copies system and the bound it implies");
  cmd_lift->add_option("config", config_path)->required();
  cmd_lift->add_flag("--explicit", explicit_lift,
                     "materialize all n! copies instead of using the closed form");

  bool exhaustive = false;
  std::string dump_path;
  auto* cmd_flowcheck = app.add_subcommand(
      "flowcheck", "cross-check the exact capacity against the flow-graph oracle");
  cmd_flowcheck->add_option("config", config_path)->required();
  cmd_flowcheck->add_flag("--exhaustive", exhaustive,
                          "also enumerate all histories up to depth k");
  cmd_flowcheck->add_option("--dump-graph", dump_path,
                            "write the witness chain graph as an edge list");

  int file_size = 0;
  int trials = 100;
  int rounds = 20;
  std::uint64_t seed = 0;
  std::uint64_t field_p = 65537;
  bool adversarial = false;
  auto* cmd_simulate =
      app.add_subcommand("simulate", "random-linear-coding reconstruction trials");
  cmd_simulate->add_option("config", config_path)->required();
  cmd_simulate->add_option("--file-size", file_size, "stored symbols (integer units)")
      ->required();
  cmd_simulate->add_option("--trials", trials)->capture_default_str();
  cmd_simulate->add_option("--rounds", rounds, "random repairs per trial")
      ->capture_default_str();
  cmd_simulate->add_option("--seed", seed)->capture_default_str();
  cmd_simulate->add_option("--field-p", field_p, "prime field modulus")
      ->capture_default_str();
  cmd_simulate->add_flag("--adversarial", adversarial,
                         "replay the minimizing witness history instead");

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("dsscap");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, out, os);
    err << os.str();
    return code == 0 ? 0 : 1;
  }

  try {
    const DssConfig config = load_config_file(config_path);
    const std::vector<std::string> warnings = validate(config);
    const std::optional<int> limit = max_n_override();

    if (app.got_subcommand(cmd_validate)) {
      ordered_json results;
      results["valid"] = true;
      results["n"] = config.params.n;
      results["k"] = config.params.k;
      results["d"] = config.params.d;
      results["model"] = model_name(config.bandwidth);
      emit_report(out, format, "validate", config, warnings, results);
      return 0;
    }

    if (app.got_subcommand(cmd_bounds)) {
      BoundsReport report = bounds_report(config, want_exact, limit);
      emit_report(out, format, "bounds", config, warnings, bounds_to_json(report));
      return 0;
    }

    if (app.got_subcommand(cmd_capacity)) {
      ExactCapacity exact = exact_capacity(config, limit);
      ordered_json results;
      results["value"] = rat(exact.value);
      results["witness"] = witness_to_json(exact.witness);
      emit_report(out, format, "capacity", config, warnings, results);
      return 0;
    }

    if (app.got_subcommand(cmd_secrecy)) {
      ordered_json results;
      results["ell"] = ell;
      results["bound"] = rat(secrecy_upper_bound(config, ell));
      emit_report(out, format, "secrecy", config, warnings, results);
      return 0;
    }

    if (app.got_subcommand(cmd_lift)) {
      LiftReport lift = permutation_lift(
          config, explicit_lift ? LiftMode::Explicit : LiftMode::Formula);
      ordered_json results;
      results["mode"] = explicit_lift ? "explicit" : "formula";
      results["alpha_b"] = rat(lift.alpha_b);
      results["beta_b"] = rat(lift.beta_b);
      results["capacity_b"] = rat(lift.capacity_b);
      results["implied_bound"] = rat(lift.implied_bound);
      try {
        LiftCheck check = lift_bound_check(config, limit);
        ordered_json doc;
        doc["exact"] = rat(check.exact);
        doc["n_factorial"] = factorial(config.params.n).str();
        doc["lifted_total"] =
            rat(Rational(factorial(config.params.n)) * check.exact);
        doc["margin_big"] = rat(check.margin_big);
        doc["margin_bound"] = rat(check.margin_bound);
        results["check"] = std::move(doc);
      } catch (const DssError& e) {
        if (is_internal_error(e.code())) throw;
        // Exact capacity unavailable (Full model or oversized n): report the
        // lift without the certification block.
      }
      emit_report(out, format, "lift", config, warnings, results);
      return 0;
    }

    if (app.got_subcommand(cmd_flowcheck)) {
      ExactCapacity exact = exact_capacity(config, limit);
      Rational chains = oracle_capacity(config, OracleMode::Chains, limit);
      bool agree = chains == exact.value;
      ordered_json results;
      results["exact"] = rat(exact.value);
      results["witness_tuple"] = indices_1based(exact.witness.tuple);
      results["chains"] = rat(chains);
      if (exhaustive) {
        Rational full = oracle_capacity(config, OracleMode::Exhaustive, limit);
        results["exhaustive"] = rat(full);
        agree = agree && full == exact.value;
      }
      results["agree"] = agree;
      if (!dump_path.empty()) {
        FlowGraph graph = build_flow_graph(
            config, chain_schedule(config, exact.witness.tuple));
        std::ofstream dump(dump_path);
        if (!dump)
          throw DssError(ErrorCode::ParseError, "cannot write " + dump_path);
        dump << dump_graph(graph);
        results["graph_file"] = dump_path;
      }
      emit_report(out, format, "flowcheck", config, warnings, results);
      if (!agree) {
        err << "OracleMismatch: flow-graph oracle disagrees with the exact capacity\n";
        return 2;
      }
      return 0;
    }

    if (app.got_subcommand(cmd_simulate)) {
      const BigInt scale = integer_scale_factor(config);
      const DssConfig scaled =
          scale == 1 ? config : scale_config(config, Rational(scale));
      FieldSpec field{field_p};
      ordered_json results;
      results["p"] = field_p;
      results["file_size"] = file_size;
      results["seed"] = seed;
      results["scale"] = scale.str();

      if (adversarial) {
        int max_rank = 0;
        bool certified = true;
        ordered_json first;
        for (int t = 0; t < trials; ++t) {
          AdversarialReport run = adversarial_witness_trial(
              scaled, file_size, field, splitmix64(seed + static_cast<std::uint64_t>(t)),
              limit);
          max_rank = std::max(max_rank, run.rank);
          certified = certified && run.certified;
          if (t == 0) {
            first["capacity"] = rat(run.capacity);
            first["witness_tuple"] = indices_1based(run.tuple);
          }
        }
        results["mode"] = "adversarial";
        results["runs"] = trials;
        results["capacity"] = first["capacity"];
        results["witness_tuple"] = first["witness_tuple"];
        results["max_rank"] = max_rank;
        results["certified"] = certified;
        emit_report(out, format, "simulate", config, warnings, results);
        if (!certified) {
          err << "SandwichViolation: simulated rank exceeded the capacity cut\n";
          return 2;
        }
        return 0;
      }

      TrialReport report =
          run_random_trials(scaled, file_size, rounds, trials, field, seed);
      results["mode"] = "random";
      results["rounds"] = rounds;
      results["trials"] = trials;
      results["successes"] = report.successes;
      results["success_fraction"] =
          rat(Rational(report.successes, report.trials));
      if (report.first_failure) {
        ordered_json failure;
        failure["trial"] = report.first_failure->trial;
        failure["user_set"] = indices_1based(report.first_failure->user_set);
        failure["rank"] = report.first_failure->rank;
        results["first_failure"] = std::move(failure);
      } else {
        results["first_failure"] = nullptr;
      }
      emit_report(out, format, "simulate", config, warnings, results);
      return 0;
    }

    err << "no subcommand selected\n";
    return 1;
  } catch (const DssError& e) {
    err << e.what() << "\n";
    return is_internal_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dsscap
