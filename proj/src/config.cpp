#include "tsnorm/config.hpp"

#include <fstream>
#include <sstream>

namespace tsnorm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

const json& field(const json& j, const std::string& key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) fail(ctx + ": missing field '" + key + "'");
  return *it;
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Rat parse_rational_field(const json& j, const std::string& what) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
  } catch (const std::invalid_argument& e) {
    fail(what + ": " + e.what());
  }
  fail(what + ": expected a rational string like \"3/2\" or an integer (floats do not round-trip)");
}

GroundSpace parse_ground(const json& j) {
  if (!j.is_object()) fail("ground space: expected an object");
  const std::string kind = field(j, "kind", "ground space").get<std::string>();
  if (kind == "c0") return GroundSpace::c0();
  if (kind == "lp") {
    const Rat p = parse_rational_field(field(j, "p", "lp space"), "lp space p");
    if (p < 1) fail("lp space: p must be >= 1 (use kind \"c0\" for the sup norm)");
    return GroundSpace::lp(p);
  }
  fail("ground space: kind must be \"lp\" or \"c0\", got \"" + kind + "\"");
}

SpacePtr parse_space(const json& j) {
  if (!j.is_object()) fail("space descriptor: expected an object");
  const std::string kind = field(j, "kind", "space").get<std::string>();

  try {
    if (kind == "lp" || kind == "c0") return Space::make_ground(parse_ground(j));

    if (kind == "tsirelson") {
      TsirelsonSpace t;
      t.ground = parse_ground(field(j, "ground", "tsirelson"));
      t.gamma = parse_rational_field(field(j, "gamma", "tsirelson"), "tsirelson gamma");
      if (!(t.gamma > 0 && t.gamma < 1)) fail("tsirelson: gamma must lie strictly in (0,1)");
      if (j.contains("convexify_p")) {
        const Rat p = parse_rational_field(j["convexify_p"], "tsirelson convexify_p");
        if (denominator(p) != 1 || p < 1)
          fail("tsirelson: convexify_p must be an integer >= 1, got " + rat_to_string(p));
        t.convexify_p = static_cast<int>(numerator(p).convert_to<long>());
      }
      return Space::make_tsirelson(t);
    }

    if (kind == "zv") {
      FddSpec spec;
      const json& blocks = field(j, "blocks", "zv");
      if (!blocks.is_array() || blocks.empty()) fail("zv: blocks must be a nonempty array");
      for (const auto& b : blocks) {
        if (!b.is_number_integer() || b.get<int>() < 1)
          fail("zv: block dimensions must be positive integers");
        spec.block_dims.push_back(b.get<int>());
      }
      spec.base = parse_space(field(j, "base", "zv"));
      spec.v = parse_space(field(j, "v", "zv"));
      return Space::make_zv(spec);
    }

    if (kind == "dual") {
      SearchConfig cfg;
      if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
      if (j.contains("polish_iters")) cfg.polish_iters = j["polish_iters"].get<int>();
      if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
      return Space::make_dual(parse_space(field(j, "inner", "dual")), cfg);
    }
  } catch (const std::invalid_argument& e) {
    fail(std::string("space descriptor: ") + e.what());
  }

  fail("space: unknown kind \"" + kind + "\"");
}

nlohmann::ordered_json ground_to_json(const GroundSpace& space) {
  nlohmann::ordered_json j;
  if (space.is_c0()) {
    j["kind"] = "c0";
  } else {
    j["kind"] = "lp";
    j["p"] = rat_to_string(space.p);
  }
  return j;
}

nlohmann::ordered_json space_to_json(const Space& space) {
  nlohmann::ordered_json j;
  switch (space.kind) {
    case SpaceKind::ground:
      return ground_to_json(space.ground);
    case SpaceKind::tsirelson:
      j["kind"] = "tsirelson";
      j["ground"] = ground_to_json(space.ts.ground);
      j["gamma"] = rat_to_string(space.ts.gamma);
      if (space.ts.convexify_p) j["convexify_p"] = *space.ts.convexify_p;
      return j;
    case SpaceKind::zv:
      j["kind"] = "zv";
      j["blocks"] = space.fdd.block_dims;
      j["base"] = space_to_json(*space.fdd.base);
      j["v"] = space_to_json(*space.fdd.v);
      return j;
    case SpaceKind::dual:
      j["kind"] = "dual";
      j["inner"] = space_to_json(*space.dual_inner);
      j["samples"] = space.dual_cfg.samples;
      j["polish_iters"] = space.dual_cfg.polish_iters;
      j["seed"] = space.dual_cfg.seed;
      return j;
  }
  throw std::logic_error("space_to_json: unhandled kind");
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    fail(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }

  if (!doc.is_object() || !doc.contains("space"))
    fail(path + ": top level must be an object with a \"space\" descriptor");

  LoadedConfig out;
  out.space = parse_space(doc["space"]);
  if (doc.contains("checks")) {
    if (!doc["checks"].is_object()) fail(path + ": \"checks\" must be an object");
    out.checks = doc["checks"];
  } else {
    out.checks = json::object();
  }
  out.hash = fnv1a64_hex(text);
  return out;
}

CoeffsQ parse_vector_literal(const std::vector<std::string>& tokens) {
  CoeffsQ x;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const std::string& tok = tokens[t];
    const auto colon = tok.find(':');
    const std::string where =
        "vector literal, token " + std::to_string(t + 1) + " ('" + tok + "')";
    if (colon == std::string::npos) fail(where + ": expected index:value");
    int index = 0;
    try {
      std::size_t used = 0;
      index = std::stoi(tok.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      fail(where + ", column 1: bad index");
    }
    if (index < 1) fail(where + ": indices start at 1");
    Rat value;
    try {
      value = parse_rational(tok.substr(colon + 1));
    } catch (const std::invalid_argument& e) {
      fail(where + ", column " + std::to_string(colon + 2) + ": " + e.what());
    }
    if (x.at(index) != 0) fail(where + ": duplicate index " + std::to_string(index));
    x.set(index, value);
  }
  return x;
}

}  // namespace tsnorm
