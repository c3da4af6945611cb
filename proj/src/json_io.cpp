#include "dsscap/json_io.hpp"

#include "dsscap/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace dsscap {

namespace {

int int_field(const nlohmann::json& doc, const char* name) {
  if (!doc.contains(name) || !doc[name].is_number_integer())
    throw DssError(ErrorCode::ParseError,
                   std::string("missing or non-integer field \"") + name + "\"");
  return doc[name].get<int>();
}

std::vector<Rational> rational_array(const nlohmann::json& value, const char* name) {
  if (!value.is_array())
    throw DssError(ErrorCode::ParseError,
                   std::string("field \"") + name + "\" must be an array");
  std::vector<Rational> out;
  out.reserve(value.size());
  for (const auto& v : value) out.push_back(rational_from_json(v));
  return out;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

}  // namespace

Rational rational_from_json(const nlohmann::json& value) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned())
      return Rational(BigInt(value.get<std::uint64_t>()));
    return Rational(BigInt(value.get<std::int64_t>()));
  }
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw DssError(ErrorCode::ParseError,
                 "numeric values must be JSON integers or \"p/q\" strings, got " +
                     value.dump());
}

nlohmann::ordered_json rational_to_json(const Rational& value) {
  static const BigInt json_safe = (BigInt(1) << 53);
  if (is_integer(value) && abs(rat_num(value)) < json_safe)
    return nlohmann::ordered_json(static_cast<std::int64_t>(rat_num(value)));
  return nlohmann::ordered_json(format_rational(value));
}

DssConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object())
    throw DssError(ErrorCode::ParseError, "config must be a JSON object");

  DssConfig config;
  config.params.n = int_field(doc, "n");
  config.params.k = int_field(doc, "k");
  config.params.d = int_field(doc, "d");
  if (!doc.contains("alpha"))
    throw DssError(ErrorCode::ParseError, "missing field \"alpha\"");
  config.alpha = rational_array(doc["alpha"], "alpha");

  if (!doc.contains("bandwidth") || !doc["bandwidth"].is_object())
    throw DssError(ErrorCode::ParseError, "missing object field \"bandwidth\"");
  const auto& bw = doc["bandwidth"];
  if (!bw.contains("type") || !bw["type"].is_string())
    throw DssError(ErrorCode::ParseError, "bandwidth needs a string \"type\"");
  const std::string type = bw["type"].get<std::string>();

  if (type == "homogeneous") {
    if (!bw.contains("gamma"))
      throw DssError(ErrorCode::ParseError, "homogeneous bandwidth needs \"gamma\"");
    config.bandwidth = Homogeneous{rational_from_json(bw["gamma"])};
  } else if (type == "helper_only") {
    if (!bw.contains("beta"))
      throw DssError(ErrorCode::ParseError, "helper_only bandwidth needs \"beta\"");
    config.bandwidth = HelperOnly{rational_array(bw["beta"], "beta")};
  } else if (type == "full") {
    if (!bw.contains("entries") || !bw["entries"].is_array())
      throw DssError(ErrorCode::ParseError, "full bandwidth needs an \"entries\" array");
    FullTable table;
    for (const auto& entry : bw["entries"]) {
      if (!entry.is_object() || !entry.contains("j") || !entry.contains("S") ||
          !entry.contains("beta"))
        throw DssError(ErrorCode::ParseError,
                       "each entry needs \"j\", \"S\" and \"beta\"");
      const int j = int_field(entry, "j") - 1;
      if (!entry["S"].is_array())
        throw DssError(ErrorCode::ParseError, "entry field \"S\" must be an array");
      std::vector<int> helpers;
      for (const auto& s : entry["S"]) {
        if (!s.is_number_integer())
          throw DssError(ErrorCode::ParseError, "helper indices must be integers");
        helpers.push_back(s.get<int>() - 1);
      }
      std::vector<Rational> values = rational_array(entry["beta"], "beta");
      if (values.size() != helpers.size())
        throw DssError(ErrorCode::ParseError,
                       "entry \"beta\" must align with \"S\"");
      // Canonical key order: sort S and carry the values along.
      std::vector<size_t> order(helpers.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](size_t a, size_t b) { return helpers[a] < helpers[b]; });
      std::vector<int> sorted_helpers;
      std::vector<Rational> sorted_values;
      for (size_t i : order) {
        sorted_helpers.push_back(helpers[i]);
        sorted_values.push_back(values[i]);
      }
      auto [it, inserted] =
          table.entries.emplace(FullTable::Key{j, std::move(sorted_helpers)},
                                std::move(sorted_values));
      if (!inserted)
        throw DssError(ErrorCode::ParseError,
                       "duplicate table entry for j=" + std::to_string(j + 1));
    }
    config.bandwidth = std::move(table);
  } else {
    throw DssError(ErrorCode::ParseError, "unknown bandwidth type \"" + type + "\"");
  }
  return config;
}

nlohmann::ordered_json config_to_json(const DssConfig& config) {
  nlohmann::ordered_json doc;
  doc["n"] = config.params.n;
  doc["k"] = config.params.k;
  doc["d"] = config.params.d;
  doc["alpha"] = nlohmann::ordered_json::array();
  for (const auto& a : config.alpha) doc["alpha"].push_back(rational_to_json(a));

  nlohmann::ordered_json bw;
  if (const auto* hom = std::get_if<Homogeneous>(&config.bandwidth)) {
    bw["type"] = "homogeneous";
    bw["gamma"] = rational_to_json(hom->gamma);
  } else if (const auto* ho = std::get_if<HelperOnly>(&config.bandwidth)) {
    bw["type"] = "helper_only";
    bw["beta"] = nlohmann::ordered_json::array();
    for (const auto& b : ho->beta) bw["beta"].push_back(rational_to_json(b));
  } else {
    bw["type"] = "full";
    bw["entries"] = nlohmann::ordered_json::array();
    for (const auto& [key, values] : std::get<FullTable>(config.bandwidth).entries) {
      nlohmann::ordered_json entry;
      entry["j"] = key.first + 1;
      entry["S"] = nlohmann::ordered_json::array();
      for (int h : key.second) entry["S"].push_back(h + 1);
      entry["beta"] = nlohmann::ordered_json::array();
      for (const auto& v : values) entry["beta"].push_back(rational_to_json(v));
      bw["entries"].push_back(std::move(entry));
    }
  }
  doc["bandwidth"] = std::move(bw);
  return doc;
}

DssConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw DssError(ErrorCode::ParseError, "cannot open config file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DssError(ErrorCode::ParseError,
                   "invalid JSON in " + path + ": " + e.what());
  }
  return config_from_json(doc);
}

std::string config_digest(const DssConfig& config) {
  // Digest the expanded table with every value in exact string form, so the
  // hash is independent of the input's model granularity and number style.
  DssConfig full = expand_to_full(config);
  std::ostringstream os;
  os << "n=" << full.params.n << ";k=" << full.params.k << ";d=" << full.params.d
     << ";alpha=";
  for (const auto& a : full.alpha) os << format_rational(a) << ",";
  os << ";table=";
  for (const auto& [key, values] : std::get<FullTable>(full.bandwidth).entries) {
    os << key.first << ":";
    for (int h : key.second) os << h << ",";
    os << ":";
    for (const auto& v : values) os << format_rational(v) << ",";
    os << ";";
  }
  std::ostringstream hex;
  hex << std::hex << fnv1a64(os.str());
  std::string h = hex.str();
  return "fnv1a64:" + std::string(16 - h.size(), '0') + h;
}

}  // namespace dsscap
