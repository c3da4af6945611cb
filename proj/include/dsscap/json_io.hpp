#pragma once

#include "dsscap/config.hpp"

#include <json.hpp>

#include <string>

namespace dsscap {

// Config files are JSON: {"n", "k", "d", "alpha": [...], "bandwidth":
// {"type": "homogeneous"|"helper_only"|"full", ...}}. Node indices in files
// are 1-based. Every numeric quantity is a JSON integer or a string "p/q";
// floats are rejected to keep the pipeline exact.

Rational rational_from_json(const nlohmann::json& value);

/// Integer values that fit a JSON number are emitted as numbers, everything
/// else as "p/q" strings.
nlohmann::ordered_json rational_to_json(const Rational& value);

DssConfig config_from_json(const nlohmann::json& doc);
nlohmann::ordered_json config_to_json(const DssConfig& config);

DssConfig load_config_file(const std::string& path);

/// Stable hash of the canonicalized (expanded to Full) system, so the three
/// model granularities of one system hash identically.
std::string config_digest(const DssConfig& config);

}  // namespace dsscap
