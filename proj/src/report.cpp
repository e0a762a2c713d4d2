#include "tsnorm/report.hpp"

#include <fstream>
#include <iostream>

#include "tsnorm/sampling.hpp"

namespace tsnorm {

using nlohmann::ordered_json;

ordered_json check_to_json(const CheckReport& check) {
  ordered_json j;
  j["name"] = check.name;
  j["verdict"] = check.pass ? "pass" : "fail";
  j["margin"] = check.margin;
  if (!check.margin_exact.empty()) j["margin_exact"] = check.margin_exact;
  if (!check.details.empty()) {
    ordered_json d = ordered_json::object();
    for (const auto& [key, value] : check.details) d[key] = value;
    j["details"] = d;
  }
  j["work"] = ordered_json{{"norm_evals", check.work}};
  return j;
}

ordered_json domination_to_json(const DominationReport& report) {
  ordered_json j;
  j["name"] = "domination";
  j["verdict"] = report.pass ? "pass" : "fail";
  j["constant_estimate"] = report.constant_estimate;
  if (report.bound) j["bound"] = *report.bound;
  j["witness"] = describe_vector(report.witness);
  j["samples_used"] = report.samples_used;
  j["seed"] = report.seed;
  j["work"] = ordered_json{{"norm_evals", report.work}};
  return j;
}

ordered_json build_report(const std::string& command, const std::string& suite,
                          const std::string& config_hash, std::uint64_t seed,
                          const std::string& mode,
                          const std::vector<ordered_json>& checks, bool all_pass) {
  ordered_json j;
  j["tool"] = kToolVersion;
  j["command"] = command;
  if (!suite.empty()) j["suite"] = suite;
  j["config_hash"] = config_hash;
  j["seed"] = seed;
  j["mode"] = mode;
  j["checks"] = checks;
  j["verdict"] = all_pass ? "pass" : "fail";
  return j;
}

std::string render_report(const ordered_json& report) { return report.dump(2) + "\n"; }

void emit_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write to '" + out_path + "'");
  out << text;
}

}  // namespace tsnorm
