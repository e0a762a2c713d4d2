#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <sstream>

#include "tsnorm/config.hpp"
#include "tsnorm/estimates.hpp"
#include "tsnorm/report.hpp"
#include "tsnorm/sampling.hpp"

namespace {

using namespace tsnorm;
using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int samples = 200;
  double tolerance = 1e-9;
  bool force_float = false;
  bool force_rational = false;
  std::size_t cap = kBruteForceCap;

  std::string mode_name() const {
    if (force_float) return "float";
    if (force_rational) return "rational";
    return "auto";
  }
  SearchConfig search() const {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.tolerance = tolerance;
    cfg.validate();
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_config = true) {
  auto* opt = cmd->add_option("--config", flags.config_path, "space/check configuration file");
  if (needs_config) opt->required();
  cmd->add_option("--out", flags.out_path, "write output to this file instead of stdout");
  cmd->add_option("--seed", flags.seed, "seed for all sampling");
  cmd->add_option("--samples", flags.samples, "sample count for sampling-based checks");
  cmd->add_option("--tolerance", flags.tolerance, "float-mode assertion tolerance");
  cmd->add_option("--cap", flags.cap, "brute-force support cap");
  auto* ff = cmd->add_flag("--float", flags.force_float, "force float arithmetic");
  cmd->add_flag("--rational", flags.force_rational, "force exact rational arithmetic")
      ->excludes(ff);
}

bool use_rational(const CommonFlags& flags, const Space& space) {
  if (flags.force_rational) {
    if (!space.exact_capable())
      throw ConfigError("space " + space.to_string() +
                        " has no exact rational evaluation; drop --rational");
    return true;
  }
  if (flags.force_float) return false;
  return space.exact_capable();
}

// --- norm ------------------------------------------------------------------

template <class S>
void print_partition_tree(std::ostream& os, const PartitionNode<S>& node, int depth) {
  os << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "[" << node.lo << ".."
     << node.hi << "] = ";
  if constexpr (std::is_same_v<S, Rat>)
    os << rat_to_string(node.value);
  else {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", node.value);
    os << buf;
  }
  os << (node.pieces.empty() ? " (sup)" : "") << "\n";
  for (const auto& piece : node.pieces) print_partition_tree(os, piece, depth + 1);
}

template <class S>
void render_norm(std::ostream& os, const Space& space, const Coeffs<S>& x) {
  if (space.kind == SpaceKind::tsirelson && !space.ts.convexify_p && !x.empty()) {
    const auto eval = ts_norm_dp<S>(space.ts, x);
    if constexpr (std::is_same_v<S, Rat>)
      os << rat_to_string(eval.value) << "\n";
    else {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.12g", eval.value);
      os << buf << "\n";
    }
    os << "partition:\n";
    print_partition_tree(os, eval.witness, 1);
    return;
  }
  if (space.kind == SpaceKind::zv && !x.empty()) {
    const auto eval = zv_norm<S>(space.fdd, x);
    if constexpr (std::is_same_v<S, Rat>)
      os << rat_to_string(eval.value) << "\n";
    else {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.12g", eval.value);
      os << buf << "\n";
    }
    os << "cuts:";
    int prev = 0;
    for (int c : eval.cuts) {
      os << " (" << prev << "," << c << "]";
      prev = c;
    }
    os << "\n";
    return;
  }
  const S value = space_norm<S>(space, x);
  if constexpr (std::is_same_v<S, Rat>)
    os << rat_to_string(value) << "\n";
  else {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    os << buf << "\n";
  }
}

int cmd_norm(const CommonFlags& flags, const std::vector<std::string>& literal) {
  const LoadedConfig config = load_config(flags.config_path);
  const CoeffsQ x = parse_vector_literal(literal);
  std::ostringstream os;
  if (use_rational(flags, *config.space))
    render_norm<Rat>(os, *config.space, x);
  else
    render_norm<double>(os, *config.space, to_double(x));
  emit_text(flags.out_path, os.str());
  return kExitPass;
}

// --- oracle ----------------------------------------------------------------

int cmd_oracle(const CommonFlags& flags, const std::vector<std::string>& literal) {
  const LoadedConfig config = load_config(flags.config_path);
  if (config.space->kind != SpaceKind::tsirelson)
    throw ConfigError("oracle: config space must be a tsirelson space");
  const TsirelsonSpace& space = config.space->ts;
  if (space.convexify_p)
    throw ConfigError("oracle: convexified spaces are compared via the convexification identity");
  const CoeffsQ x = parse_vector_literal(literal);
  if (x.support_size() > flags.cap)
    throw ConfigError("oracle: support size " + std::to_string(x.support_size()) +
                      " exceeds cap " + std::to_string(flags.cap) + " (raise --cap)");

  std::ostringstream os;
  bool match = false;
  if (use_rational(flags, *config.space)) {
    const Rat brute = ts_norm_bruteforce<Rat>(space, x, flags.cap);
    const Rat dp = ts_norm_dp<Rat>(space, x).value;
    os << "bruteforce " << rat_to_string(brute) << "\n";
    os << "dp         " << rat_to_string(dp) << "\n";
    match = brute == dp;
  } else {
    const CoeffsD xd = to_double(x);
    const double brute = ts_norm_bruteforce<double>(space, xd, flags.cap);
    const double dp = ts_norm_dp<double>(space, xd).value;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", brute);
    os << "bruteforce " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.12g", dp);
    os << "dp         " << buf << "\n";
    match = std::fabs(brute - dp) <= flags.tolerance;
  }
  os << (match ? "MATCH" : "MISMATCH") << "\n";
  emit_text(flags.out_path, os.str());
  return match ? kExitPass : kExitViolation;
}

// --- check -----------------------------------------------------------------

const json& params_for(const LoadedConfig& config, const std::string& suite) {
  static const json empty = json::object();
  auto it = config.checks.find(suite);
  return it == config.checks.end() ? empty : *it;
}

const TsirelsonSpace& require_tsirelson(const LoadedConfig& config, const std::string& suite) {
  if (config.space->kind != SpaceKind::tsirelson)
    throw ConfigError(suite + ": config space must be a tsirelson space");
  return config.space->ts;
}

int get_int(const json& params, const std::string& key, int fallback) {
  if (!params.contains(key)) return fallback;
  if (!params[key].is_number_integer()) throw ConfigError("check parameter '" + key + "' must be an integer");
  return params[key].get<int>();
}

int require_int(const json& params, const std::string& suite, const std::string& key) {
  if (!params.contains(key))
    throw ConfigError(suite + ": missing integer parameter '" + key + "' under checks." + suite);
  return get_int(params, key, 0);
}

std::vector<CheckReport> run_suite(const std::string& suite, const LoadedConfig& config,
                                   const SearchConfig& cfg) {
  const json& params = params_for(config, suite);
  std::vector<CheckReport> out;

  if (suite == "srs") {
    out.push_back(check_srs(require_tsirelson(config, suite), cfg,
                            get_int(params, "support_range", 6), get_int(params, "max_shift", 4)));
  } else if (suite == "wls") {
    const Rat d = params.contains("d") ? parse_rational_field(params["d"], "wls d") : Rat(1, 2);
    out.push_back(check_wls(require_tsirelson(config, suite), d, get_int(params, "m", 1), cfg));
  } else if (suite == "shift-bound") {
    const TsirelsonSpace& space = require_tsirelson(config, suite);
    ShiftBoundCase scase;
    scase.gamma = space.gamma;
    scase.m = require_int(params, suite, "m");
    scase.n = require_int(params, suite, "n");
    out.push_back(check_shift_bound(space, scase, cfg));
  } else if (suite == "asym-lower" || suite == "asym-upper") {
    const bool lower = suite == "asym-lower";
    GroundSpace ref;
    if (params.contains(lower ? "v" : "u")) {
      ref = parse_ground(params[lower ? "v" : "u"]);
    } else if (lower && config.space->kind == SpaceKind::tsirelson) {
      ref = config.space->ts.ground;
    } else if (!lower) {
      ref = GroundSpace::lp(1);  // triangle inequality baseline
    } else {
      throw ConfigError(suite + ": missing reference space parameter");
    }
    double C;
    if (params.contains("C")) {
      C = to_double(parse_rational_field(params["C"], suite + " C"));
    } else if (lower && config.space->kind == SpaceKind::tsirelson) {
      C = 1.0 / to_double(config.space->ts.gamma);
    } else if (!lower) {
      C = 1.0;
    } else {
      throw ConfigError(suite + ": missing constant C");
    }
    const int max_len = get_int(params, "n", 5);
    out.push_back(lower ? check_asymptotic_lower(*config.space, ref, max_len, C, cfg)
                        : check_asymptotic_upper(*config.space, ref, max_len, C, cfg));
  } else if (suite == "prop43") {
    const TsirelsonSpace& target = require_tsirelson(config, suite);
    if (!params.contains("source")) throw ConfigError("prop43: missing 'source' space");
    const SpacePtr source = parse_space(params["source"]);
    const double C = params.contains("C")
                         ? to_double(parse_rational_field(params["C"], "prop43 C"))
                         : 1.0;
    const double K = params.contains("K")
                         ? to_double(parse_rational_field(params["K"], "prop43 K"))
                         : 1.0;
    out.push_back(check_prop43(target, *source, C, K, cfg));
  } else if (suite == "duality13") {
    if (config.space->kind != SpaceKind::zv)
      throw ConfigError("duality13: config space must be a zv space");
    const FddSpec& spec = config.space->fdd;
    GroundSpace v;
    if (params.contains("v"))
      v = parse_ground(params["v"]);
    else if (spec.v->kind == SpaceKind::ground)
      v = spec.v->ground;
    else
      throw ConfigError("duality13: composite outer space; give an explicit 'v' parameter");
    const double C =
        params.contains("C") ? to_double(parse_rational_field(params["C"], "duality13 C")) : 1.0;
    out.push_back(check_duality_prop13(spec, v, C, cfg));
  } else if (suite == "domination") {
    if (!params.contains("a") || !params.contains("b"))
      throw ConfigError("domination: needs spaces 'a' and 'b' under checks.domination");
    const SpacePtr a = parse_space(params["a"]);
    const SpacePtr b = parse_space(params["b"]);
    const int dim = require_int(params, suite, "dim");
    std::optional<double> assert_le;
    if (params.contains("assert_le"))
      assert_le = to_double(parse_rational_field(params["assert_le"], "domination assert_le"));
    const DominationReport dom = domination_constant(*a, *b, dim, cfg, assert_le);
    CheckReport report;
    report.name = "domination";
    report.pass = dom.pass;
    report.margin = dom.bound ? *dom.bound + cfg.tolerance - dom.constant_estimate : 0.0;
    report.note("constant_estimate", format_double(dom.constant_estimate));
    report.note("witness", describe_vector(dom.witness));
    report.note("samples_used", std::to_string(dom.samples_used));
    if (dom.bound) report.note("bound", format_double(*dom.bound));
    report.work = dom.work;
    out.push_back(report);
  } else if (suite == "subsymmetry") {
    if (config.space->kind != SpaceKind::ground)
      throw ConfigError("subsymmetry: config space must be a ground space");
    out.push_back(check_subsymmetry(config.space->ground, cfg));
  } else {
    throw ConfigError("unknown check suite '" + suite + "'");
  }
  return out;
}

int cmd_check(const CommonFlags& flags, const std::string& suite) {
  const LoadedConfig config = load_config(flags.config_path);
  const SearchConfig cfg = flags.search();

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckReport> checks;
  try {
    checks = run_suite(suite, config, cfg);
  } catch (const std::invalid_argument& e) {
    // failed preconditions are usage errors, not property violations
    throw ConfigError(suite + ": " + e.what());
  }
  const auto t1 = std::chrono::steady_clock::now();

  bool all_pass = true;
  std::vector<ordered_json> encoded;
  for (const auto& check : checks) {
    all_pass = all_pass && check.pass;
    encoded.push_back(check_to_json(check));
  }
  const ordered_json report = build_report("check " + suite, suite, config.hash, flags.seed,
                                           flags.mode_name(), encoded, all_pass);
  emit_text(flags.out_path, render_report(report));
  std::cerr << "# " << suite << " finished in "
            << std::chrono::duration<double>(t1 - t0).count() << "s\n";
  return all_pass ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tsirelson-type and composite FDD norm calculator"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::vector<std::string> literal;
  std::string suite;

  auto* norm = app.add_subcommand("norm", "evaluate a norm and print the witness partition");
  add_common(norm, flags);
  norm->add_option("vector", literal, "coefficients as index:value pairs, e.g. 3:1 4:1/2");

  auto* check = app.add_subcommand("check", "run a named verification suite");
  add_common(check, flags);
  check->add_option("suite", suite, "one of srs, wls, shift-bound, asym-lower, asym-upper, "
                                    "prop43, duality13, domination, subsymmetry")
      ->required();

  auto* oracle = app.add_subcommand("oracle", "brute force vs dynamic program, side by side");
  add_common(oracle, flags);
  oracle->add_option("vector", literal, "coefficients as index:value pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (norm->parsed()) return cmd_norm(flags, literal);
    if (check->parsed()) return cmd_check(flags, suite);
    if (oracle->parsed()) return cmd_oracle(flags, literal);
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ExactUnsupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  } catch (...) {
    std::cerr << "internal error\n";
    return kExitUsage;
  }
}
