#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dsscap/capacity.hpp"
#include "dsscap/errors.hpp"
#include "dsscap/flowgraph.hpp"
#include "dsscap/json_io.hpp"
#include "dsscap/lift.hpp"
#include "dsscap/rlncsim.hpp"
#include "dsscap/secrecy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;

namespace pybind11::detail {

// dsscap::Rational <-> fractions.Fraction, exactly. Accepts ints, "p/q"
// strings and Fraction-like objects on the way in; floats are rejected.
template <>
struct type_caster<dsscap::Rational> {
  PYBIND11_TYPE_CASTER(dsscap::Rational, const_name("Fraction"));

  bool load(handle src, bool) {
    if (PyFloat_Check(src.ptr())) return false;
    try {
      value = dsscap::parse_rational(py::str(src).cast<std::string>());
      return true;
    } catch (const dsscap::DssError&) {
      return false;
    }
  }

  static handle cast(const dsscap::Rational& src, return_value_policy, handle) {
    static py::object fraction =
        py::module_::import("fractions").attr("Fraction");
    return fraction(dsscap::format_rational(src)).release();
  }
};

}  // namespace pybind11::detail

namespace {

using namespace dsscap;

std::vector<int> to_zero_based(const std::vector<int>& v, const char* what) {
  std::vector<int> out;
  out.reserve(v.size());
  for (int i : v) {
    if (i < 1) throw DssError(ErrorCode::IndexOutOfRange,
                              std::string(what) + " indices are 1-based");
    out.push_back(i - 1);
  }
  return out;
}

std::vector<int> to_one_based(const std::vector<int>& v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (int i : v) out.push_back(i + 1);
  return out;
}

std::vector<std::vector<int>> to_one_based(const std::vector<std::vector<int>>& v) {
  std::vector<std::vector<int>> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(to_one_based(s));
  return out;
}

}  // namespace

PYBIND11_MODULE(_dsscap, m) {
  m.doc() = "capacity and secrecy bounds for heterogeneous distributed storage systems";
  m.attr("__version__") = "0.1.0";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DssError& e) {
      if (is_internal_error(e.code()))
        PyErr_SetString(PyExc_RuntimeError, e.what());
      else
        PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<DssConfig>(m, "DssConfig")
      .def_property_readonly("n", [](const DssConfig& c) { return c.params.n; })
      .def_property_readonly("k", [](const DssConfig& c) { return c.params.k; })
      .def_property_readonly("d", [](const DssConfig& c) { return c.params.d; })
      .def_property_readonly("alpha", [](const DssConfig& c) { return c.alpha; })
      .def_property_readonly(
          "model", [](const DssConfig& c) { return model_name(c.bandwidth); })
      .def("__repr__", [](const DssConfig& c) {
        return "DssConfig(n=" + std::to_string(c.params.n) +
               ", k=" + std::to_string(c.params.k) +
               ", d=" + std::to_string(c.params.d) + ", model=" +
               model_name(c.bandwidth) + ")";
      });

  m.def("homogeneous_config", [](int n, int k, int d, std::vector<Rational> alpha,
                                 Rational gamma) {
    DssConfig c{{n, k, d}, std::move(alpha), Homogeneous{std::move(gamma)}};
    validate(c);
    return c;
  }, py::arg("n"), py::arg("k"), py::arg("d"), py::arg("alpha"), py::arg("gamma"));

  m.def("helper_only_config", [](int n, int k, int d, std::vector<Rational> alpha,
                                 std::vector<Rational> beta) {
    DssConfig c{{n, k, d}, std::move(alpha), HelperOnly{std::move(beta)}};
    validate(c);
    return c;
  }, py::arg("n"), py::arg("k"), py::arg("d"), py::arg("alpha"), py::arg("beta"));

  m.def("config_from_json", [](const std::string& text) {
    DssConfig c = config_from_json(nlohmann::json::parse(text, nullptr, true));
    validate(c);
    return c;
  }, py::arg("text"), "parse a system description from a JSON string");

  m.def("load_config", [](const std::string& path) {
    DssConfig c = load_config_file(path);
    validate(c);
    return c;
  }, py::arg("path"));
  m.def("config_to_json",
        [](const DssConfig& c) { return config_to_json(c).dump(2); });
  m.def("config_digest", &config_digest);
  m.def("validate", &validate, py::arg("config"),
        "raise ValueError on invalid systems; returns warnings");
  m.def("node_avg_repair_bw", [](const DssConfig& c, int j) {
    return node_avg_repair_bw(c, j - 1);
  }, py::arg("config"), py::arg("j"), "average repair download of node j (1-based)");
  m.def("system_averages", &system_averages);
  m.def("sorted_beta_multiset", &sorted_beta_multiset);
  m.def("expand_to_full", &expand_to_full);
  m.def("scale_config", &scale_config, py::arg("config"), py::arg("c"));

  m.def("homogeneous_capacity", &homogeneous_capacity, py::arg("alpha"),
        py::arg("gamma"), py::arg("k"), py::arg("d"));
  m.def("average_upper_bound", &average_upper_bound);
  m.def("general_bounds", &general_bounds);
  m.def("helper_only_bounds", &helper_only_bounds);

  py::class_<CapacityWitness>(m, "CapacityWitness")
      .def_property_readonly(
          "tuple", [](const CapacityWitness& w) { return to_one_based(w.tuple); })
      .def_property_readonly(
          "helper_sets",
          [](const CapacityWitness& w) { return to_one_based(w.helper_sets); })
      .def_readonly("terms", &CapacityWitness::terms)
      .def_readonly("value", &CapacityWitness::value);

  py::class_<ExactCapacity>(m, "ExactCapacity")
      .def_readonly("value", &ExactCapacity::value)
      .def_readonly("witness", &ExactCapacity::witness);

  m.def("exact_capacity", &exact_capacity, py::arg("config"),
        py::arg("limit") = std::nullopt);

  py::class_<BoundsReport>(m, "BoundsReport")
      .def_readonly("avg_upper", &BoundsReport::avg_upper)
      .def_readonly("c_min", &BoundsReport::c_min)
      .def_readonly("c_max", &BoundsReport::c_max)
      .def_readonly("cprime", &BoundsReport::cprime)
      .def_readonly("exact", &BoundsReport::exact);

  m.def("bounds_report", &bounds_report, py::arg("config"),
        py::arg("compute_exact") = false, py::arg("limit") = std::nullopt);

  m.def("homogeneous_secrecy_bound", &homogeneous_secrecy_bound, py::arg("alpha"),
        py::arg("gamma"), py::arg("k"), py::arg("d"), py::arg("ell"));
  m.def("secrecy_upper_bound", &secrecy_upper_bound, py::arg("config"),
        py::arg("ell"));

  m.def("permute_config", [](const DssConfig& c, const std::vector<int>& sigma) {
    return permute_config(c, to_zero_based(sigma, "permutation"));
  }, py::arg("config"), py::arg("sigma"), "sigma maps 1-based positions to 1-based nodes");
  m.def("combine_configs", &combine_configs, py::arg("configs"));

  py::class_<LiftReport>(m, "LiftReport")
      .def_readonly("alpha_b", &LiftReport::alpha_b)
      .def_readonly("beta_b", &LiftReport::beta_b)
      .def_readonly("capacity_b", &LiftReport::capacity_b)
      .def_readonly("implied_bound", &LiftReport::implied_bound);

  py::class_<LiftCheck>(m, "LiftCheck")
      .def_readonly("exact", &LiftCheck::exact)
      .def_readonly("lift", &LiftCheck::lift)
      .def_readonly("margin_big", &LiftCheck::margin_big)
      .def_readonly("margin_bound", &LiftCheck::margin_bound);

  m.def("permutation_lift", [](const DssConfig& c, bool explicit_sum) {
    return permutation_lift(c, explicit_sum ? LiftMode::Explicit : LiftMode::Formula);
  }, py::arg("config"), py::arg("explicit_sum") = false);
  m.def("lift_bound_check", &lift_bound_check, py::arg("config"),
        py::arg("limit") = std::nullopt);

  py::class_<RepairEvent>(m, "RepairEvent")
      .def(py::init([](int failed, const std::vector<int>& helpers) {
        if (failed < 1)
          throw DssError(ErrorCode::IndexOutOfRange, "node indices are 1-based");
        return RepairEvent{failed - 1, to_zero_based(helpers, "helper")};
      }), py::arg("failed"), py::arg("helpers"))
      .def_property_readonly("failed",
                             [](const RepairEvent& e) { return e.failed + 1; })
      .def_property_readonly(
          "helpers", [](const RepairEvent& e) { return to_one_based(e.helpers); });

  py::class_<RepairSchedule>(m, "RepairSchedule")
      .def(py::init([](std::vector<RepairEvent> events, const std::vector<int>& users) {
        return RepairSchedule{std::move(events), to_zero_based(users, "user")};
      }), py::arg("events"), py::arg("user_set"))
      .def_readonly("events", &RepairSchedule::events)
      .def_property_readonly("user_set", [](const RepairSchedule& s) {
        return to_one_based(s.user_set);
      });

  m.def("chain_schedule", [](const DssConfig& c, const std::vector<int>& tuple) {
    return chain_schedule(c, to_zero_based(tuple, "tuple"));
  }, py::arg("config"), py::arg("tuple"));

  m.def("min_cut", [](const DssConfig& c, const RepairSchedule& s) {
    return max_flow_min_cut(build_flow_graph(c, s));
  }, py::arg("config"), py::arg("schedule"),
        "min-cut between the source and the schedule's user");

  m.def("dump_flow_graph", [](const DssConfig& c, const RepairSchedule& s) {
    return dump_graph(build_flow_graph(c, s));
  }, py::arg("config"), py::arg("schedule"));

  m.def("oracle_capacity", [](const DssConfig& c, bool exhaustive,
                              std::optional<int> limit) {
    return oracle_capacity(
        c, exhaustive ? OracleMode::Exhaustive : OracleMode::Chains, limit);
  }, py::arg("config"), py::arg("exhaustive") = false,
        py::arg("limit") = std::nullopt);

  py::class_<TrialFailure>(m, "TrialFailure")
      .def_readonly("trial", &TrialFailure::trial)
      .def_property_readonly("user_set", [](const TrialFailure& f) {
        return to_one_based(f.user_set);
      })
      .def_readonly("rank", &TrialFailure::rank);

  py::class_<TrialReport>(m, "TrialReport")
      .def_property_readonly("p", [](const TrialReport& r) { return r.field.p; })
      .def_readonly("file_dim", &TrialReport::file_dim)
      .def_readonly("rounds", &TrialReport::rounds)
      .def_readonly("trials", &TrialReport::trials)
      .def_readonly("seed", &TrialReport::seed)
      .def_readonly("successes", &TrialReport::successes)
      .def_readonly("first_failure", &TrialReport::first_failure);

  m.def("run_random_trials", [](const DssConfig& c, int file_dim, int rounds,
                                int trials, std::uint64_t p, std::uint64_t seed) {
    return run_random_trials(c, file_dim, rounds, trials, FieldSpec{p}, seed);
  }, py::arg("config"), py::arg("file_dim"), py::arg("rounds") = 20,
        py::arg("trials") = 100, py::arg("p") = 65537, py::arg("seed") = 0);

  py::class_<AdversarialReport>(m, "AdversarialReport")
      .def_property_readonly("p",
                             [](const AdversarialReport& r) { return r.field.p; })
      .def_readonly("file_dim", &AdversarialReport::file_dim)
      .def_readonly("capacity", &AdversarialReport::capacity)
      .def_property_readonly("tuple", [](const AdversarialReport& r) {
        return to_one_based(r.tuple);
      })
      .def_readonly("rank", &AdversarialReport::rank)
      .def_readonly("certified", &AdversarialReport::certified)
      .def_readonly("seed", &AdversarialReport::seed);

  m.def("adversarial_witness_trial", [](const DssConfig& c, int file_dim,
                                        std::uint64_t p, std::uint64_t seed,
                                        std::optional<int> limit) {
    return adversarial_witness_trial(c, file_dim, FieldSpec{p}, seed, limit);
  }, py::arg("config"), py::arg("file_dim"), py::arg("p") = 65537,
        py::arg("seed") = 0, py::arg("limit") = std::nullopt);
}
