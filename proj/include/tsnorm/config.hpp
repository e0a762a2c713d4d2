#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsnorm/coeffs.hpp"
#include "tsnorm/space.hpp"

namespace tsnorm {

// Malformed configs, unknown suites, failed preconditions: everything the
// CLI maps to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct LoadedConfig {
  SpacePtr space;
  nlohmann::json checks;  // per-suite parameter objects, possibly empty
  std::string hash;       // content digest of the raw file bytes
};

LoadedConfig load_config(const std::string& path);

// Descriptor tree with kind tags lp / c0 / tsirelson / zv / dual. Rationals
// are "a/b" strings (or plain JSON integers); floats are rejected so that
// configs round-trip exactly.
SpacePtr parse_space(const nlohmann::json& j);
GroundSpace parse_ground(const nlohmann::json& j);
Rat parse_rational_field(const nlohmann::json& j, const std::string& what);

// Inverse of parse_space: parse(space_to_json(s)) describes the same space.
nlohmann::ordered_json space_to_json(const Space& space);
nlohmann::ordered_json ground_to_json(const GroundSpace& space);

// Space-separated "index:value" pairs, e.g. {"3:1", "4:1/2"}.
CoeffsQ parse_vector_literal(const std::vector<std::string>& tokens);

std::string fnv1a64_hex(std::string_view bytes);

}  // namespace tsnorm
