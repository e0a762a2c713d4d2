#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsnorm/estimates.hpp"
#include "tsnorm/search.hpp"

namespace tsnorm {

inline constexpr const char* kToolVersion = "tsnorm 0.1.0";

// Stable field order throughout (ordered_json + fixed insertion order):
// rerunning with identical inputs must give byte-identical bytes. Work is
// reported in deterministic norm-evaluation counts, never wall-clock.
nlohmann::ordered_json check_to_json(const CheckReport& check);
nlohmann::ordered_json domination_to_json(const DominationReport& report);

nlohmann::ordered_json build_report(const std::string& command, const std::string& suite,
                                    const std::string& config_hash, std::uint64_t seed,
                                    const std::string& mode,
                                    const std::vector<nlohmann::ordered_json>& checks,
                                    bool all_pass);

std::string render_report(const nlohmann::ordered_json& report);

// Empty path writes to stdout.
void emit_text(const std::string& out_path, const std::string& text);

}  // namespace tsnorm
