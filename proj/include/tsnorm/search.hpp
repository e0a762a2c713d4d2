#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsnorm {

// Knobs for every sampling-based check. A (seed, config) pair fully
// determines the run; reports must be byte-identical across repeats.
struct SearchConfig {
  std::uint64_t seed = 0;
  int samples = 200;
  int grid_levels = 4;   // entries are drawn from the dyadic grid k / 2^grid_levels
  int polish_iters = 60;
  double tolerance = 1e-9;

  void validate() const {
    if (samples < 1) throw std::invalid_argument("SearchConfig: samples must be >= 1");
    if (tolerance <= 0) throw std::invalid_argument("SearchConfig: tolerance must be > 0");
    if (grid_levels < 0 || grid_levels > 30)
      throw std::invalid_argument("SearchConfig: grid_levels out of range");
    if (polish_iters < 0) throw std::invalid_argument("SearchConfig: polish_iters must be >= 0");
  }
};

// Outcome of one named check. `margin` is the worst observed slack of the
// asserted inequality (>= 0 means it held everywhere, up to tolerance).
// `margin_exact` carries the same quantity as a fraction when the check ran
// in exact arithmetic. `work` counts norm-oracle evaluations; it stands in
// for wall-clock timing so that reports stay deterministic.
struct CheckReport {
  std::string name;
  bool pass = true;
  double margin = 0.0;
  std::string margin_exact;
  std::vector<std::pair<std::string, std::string>> details;
  std::uint64_t work = 0;

  void note(std::string key, std::string value) {
    details.emplace_back(std::move(key), std::move(value));
  }
};

// Thread-local tally of norm evaluations, snapshotted around checks.
std::uint64_t& norm_eval_counter();

std::string format_double(double v);  // shortest round-trip formatting

}  // namespace tsnorm
