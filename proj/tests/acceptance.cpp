// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "tsnorm/estimates.hpp"
#include "tsnorm/rng.hpp"
#include "tsnorm/sampling.hpp"

using namespace tsnorm;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %02d %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " — ", detail.c_str());
  if (!pass) ++failures;
}

TsirelsonSpace t1_gamma(const Rat& gamma) {
  return TsirelsonSpace::make(GroundSpace::lp(1), gamma);
}

// The shared vector suite: every +-1 vector with support of size <= 5 inside
// [1..8], plus 100 seeded random rational vectors with support size <= 8.
std::vector<CoeffsQ> shared_suite() {
  std::vector<CoeffsQ> suite;
  for_each_sign_vector(8, 5, [&](const CoeffsQ& x) { suite.push_back(x); });
  Rng rng(20240801);
  for (int i = 0; i < 100; ++i) suite.push_back(sample_vector(rng, 1, 12, 8, 4));
  return suite;
}

std::uint32_t sign_vector_mask8(const CoeffsQ& x) {
  std::uint32_t mask = 0;
  for (const auto& [i, v] : x.entries()) {
    if (i > 8 || (v != 1 && v != -1)) return 0;  // not a [1..8] +-1 vector
    mask |= 1u << (i - 1);
  }
  return mask;
}

// criterion 1 + 2 -------------------------------------------------------

void criterion_oracle_and_fixed_point(const std::vector<CoeffsQ>& suite) {
  const auto started = std::chrono::steady_clock::now();
  const TsirelsonSpace space = t1_gamma(Rat(1, 2));

  // The brute-force value depends only on the magnitudes (level zero does,
  // and the recursion only combines norms), so the +-1 portion collapses to
  // one evaluation per support set.
  std::map<std::uint32_t, Rat> sign_memo;
  auto brute_of = [&](const CoeffsQ& x) -> Rat {
    const std::uint32_t mask = sign_vector_mask8(x);
    if (mask != 0) {
      auto it = sign_memo.find(mask);
      if (it != sign_memo.end()) return it->second;
    }
    const Rat value = ts_norm_bruteforce<Rat>(space, x, 10);
    if (mask != 0) sign_memo.emplace(mask, value);
    return value;
  };

  std::size_t mismatches = 0, rhs_mismatches = 0;
  for (const CoeffsQ& x : suite) {
    const auto eval = ts_norm_dp<Rat>(space, x);
    if (eval.value != brute_of(x)) ++mismatches;
    if (ts_rhs_from_cache<Rat>(space, x, eval.cache) != eval.value) ++rhs_mismatches;
  }

  // float route of the fixed-point re-evaluation, on the random tail
  const TsirelsonSpace t32 = TsirelsonSpace::make(GroundSpace::lp(Rat(3, 2)), Rat(1, 2));
  double worst_float = 0;
  for (std::size_t k = suite.size() - 100; k < suite.size(); ++k) {
    const CoeffsD x = to_double(suite[k]);
    const auto eval = ts_norm_dp<double>(t32, x);
    worst_float = std::max(
        worst_float, std::fabs(ts_rhs_from_cache<double>(t32, x, eval.cache) - eval.value));
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  {
    std::ostringstream detail;
    detail << suite.size() << " vectors, exact, " << std::fixed;
    detail.precision(1);
    detail << elapsed << "s";
    verdict(1, "oracle equivalence (dp == brute force)",
            mismatches == 0 && elapsed < 60.0, detail.str());
  }
  {
    std::ostringstream detail;
    detail << "exact on suite; float deviation " << worst_float;
    verdict(2, "implicit fixed-point equation from cached interval norms",
            rhs_mismatches == 0 && worst_float <= 1e-9, detail.str());
  }
}

// criterion 3 ------------------------------------------------------------

void criterion_convexification() {
  const TsirelsonSpace t2 = TsirelsonSpace::make(GroundSpace::lp(2), Rat(1, 2));
  Rng rng(3141);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const CoeffsQ x = sample_vector(rng, 1, 14, 10, 4);
    const double direct = ts_norm<double>(t2, to_double(x));
    const double rooted = convexified_norm(2, Rat(1, 2), x);
    worst = std::max(worst, std::fabs(direct - rooted));
  }
  std::ostringstream detail;
  detail << "50 vectors, worst |T(l2,1/2) - sqrt(T(l1,1/4))| = " << worst;
  verdict(3, "p-convexification identity", worst <= 1e-9, detail.str());
}

// criterion 4 ------------------------------------------------------------

void criterion_basis_and_domination() {
  const TsirelsonSpace space = t1_gamma(Rat(1, 2));

  bool units_ok = true;
  for (int k = 1; k <= 20; ++k)
    units_ok = units_ok && ts_norm<Rat>(space, CoeffsQ::unit(k)) == 1;

  std::size_t violations = 0;
  for (int s = 0; s < 500; ++s) {
    Rng stream = derive_stream(41, static_cast<std::uint64_t>(s));
    const int len = stream.uniform_int(1, 5);
    const auto pieces = sample_block_sequence(stream, len, 1, 2, 1, 4);

    CoeffsQ combo, basis;
    for (int i = 0; i < len; ++i) {
      const Rat norm = ts_norm<Rat>(space, pieces[static_cast<std::size_t>(i)]);
      Rat a = 0;
      while (a == 0) a = sample_entry(stream, 4);
      combo = combo.plus(pieces[static_cast<std::size_t>(i)].scaled(a / norm));
      basis.set(i + 1, a);
    }
    if (ts_norm<Rat>(space, basis) > ts_norm<Rat>(space, combo)) ++violations;
  }

  std::ostringstream detail;
  detail << "units exact; " << violations << " violations in 500 block sequences";
  verdict(4, "normalized 1-unconditional basis, 1-dominated by block sequences",
          units_ok && violations == 0, detail.str());
}

// criterion 5 ------------------------------------------------------------

void criterion_shift_bound() {
  const TsirelsonSpace space = t1_gamma(Rat(1, 5));
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [m, n] : std::vector<std::pair<int, int>>{{1, 8}, {2, 12}}) {
    SearchConfig cfg;
    cfg.seed = 500 + static_cast<std::uint64_t>(m);
    cfg.samples = 200;
    const CheckReport report = check_shift_bound(space, ShiftBoundCase{Rat(1, 5), m, n}, cfg);
    pass = pass && report.pass && report.margin >= -1e-9;
    detail << "(m=" << m << ",n=" << n << ") margin " << report.margin << "  ";
  }
  verdict(5, "backward-shift lower bound, gamma=1/5", pass, detail.str());
}

// criterion 6 ------------------------------------------------------------

void criterion_srs() {
  SearchConfig cfg;
  cfg.seed = 6;
  const CheckReport report = check_srs(t1_gamma(Rat(1, 2)), cfg, 6, 4);
  verdict(6, "right shifts never lower the norm (exact, supp in [1..6], shifts <= 4)",
          report.pass && !report.margin_exact.empty(),
          "worst margin " + report.margin_exact);
}

// criterion 7 ------------------------------------------------------------

void criterion_zv(const std::vector<CoeffsQ>& suite) {
  FddSpec singletons;
  singletons.block_dims.assign(8, 1);
  singletons.base = Space::make_ground(GroundSpace::c0());
  singletons.v = Space::make_ground(GroundSpace::lp(1));

  std::size_t mismatches = 0;
  for (const CoeffsQ& x : suite) {
    if (x.empty() || x.max_support() > 8) continue;
    bool is_sign = true;
    Rat l1 = 0;
    for (const auto& [i, v] : x.entries()) {
      is_sign = is_sign && (v == 1 || v == -1);
      l1 += scalar_abs(v);
    }
    if (!is_sign) continue;
    if (zv_norm<Rat>(singletons, x).value != l1) ++mismatches;
  }

  SearchConfig cfg;
  cfg.seed = 70;
  cfg.samples = 45;
  cfg.polish_iters = 25;

  FddSpec lq_blocks;
  lq_blocks.block_dims = {1, 2, 1, 2};
  lq_blocks.base = Space::make_ground(GroundSpace::lp(2));
  lq_blocks.v = Space::make_ground(GroundSpace::lp(1));

  FddSpec lq_single;
  lq_single.block_dims.assign(6, 1);
  lq_single.base = Space::make_ground(GroundSpace::lp(Rat(3, 2)));
  lq_single.v = Space::make_ground(GroundSpace::lp(Rat(3, 2)));

  FddSpec composite;
  composite.block_dims = {1, 1, 2, 2};
  composite.base = Space::make_tsirelson(t1_gamma(Rat(1, 2)));
  composite.v = Space::make_ground(GroundSpace::lp(2));

  double worst_any = 0, worst_bimonotone = 0;
  for (const FddSpec& spec : {singletons, lq_blocks, lq_single, composite})
    worst_any = std::max(worst_any, projection_constant_estimate(spec, cfg).value);
  for (const FddSpec& spec : {lq_blocks, lq_single})
    worst_bimonotone = std::max(worst_bimonotone, projection_constant_estimate(spec, cfg).value);

  std::ostringstream detail;
  detail << mismatches << " l1 mismatches; projection estimates max " << worst_any
         << " (lq bases " << worst_bimonotone << ")";
  verdict(7, "composite norm sanity and projection-constant bounds",
          mismatches == 0 && worst_any <= 2.0 + 1e-6 && worst_bimonotone <= 1.0 + 1e-9,
          detail.str());
}

// criterion 8 ------------------------------------------------------------

void criterion_asymptotic_lower() {
  SearchConfig cfg;
  cfg.seed = 8;
  cfg.samples = 300;
  const auto space = Space::make_tsirelson(t1_gamma(Rat(1, 2)));
  const CheckReport report = check_asymptotic_lower(*space, GroundSpace::lp(1), 5, 2.0, cfg);
  std::ostringstream detail;
  detail << "300 block sequences, worst margin " << report.margin;
  verdict(8, "asymptotic gamma^{-1}-lower estimates", report.pass && report.margin >= -1e-9,
          detail.str());
}

// criterion 9 ------------------------------------------------------------

void criterion_gamma_domination(const std::vector<CoeffsQ>& suite) {
  const TsirelsonSpace half = t1_gamma(Rat(1, 2));
  const TsirelsonSpace quarter = t1_gamma(Rat(1, 4));
  std::size_t violations = 0, checked = 0;
  for (const CoeffsQ& x : suite) {
    bool is_sign = true;
    for (const auto& [i, v] : x.entries()) is_sign = is_sign && (v == 1 || v == -1);
    if (!is_sign || x.empty() || x.max_support() > 8) continue;
    ++checked;
    if (ts_norm<Rat>(half, x) < ts_norm<Rat>(quarter, x)) ++violations;
  }
  std::ostringstream detail;
  detail << checked << " sign vectors, exact";
  verdict(9, "T(l1,1/2) basis dominates T(l1,1/4)", violations == 0, detail.str());
}

// criterion 10 -----------------------------------------------------------

void criterion_determinism(const char* cli) {
  if (cli == nullptr) {
    verdict(10, "byte-identical reports", false, "CLI path not supplied");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "tsnorm_acceptance";
  fs::create_directories(dir);

  const fs::path cfg_ts = dir / "t1.json";
  {
    std::ofstream out(cfg_ts);
    out << R"({ "space": {"kind":"tsirelson","ground":{"kind":"lp","p":"1"},"gamma":"1/5"},
  "checks": { "shift-bound": {"m":1,"n":8} } })";
  }

  bool pass = true;
  std::string detail;
  for (const std::string suite : {"srs", "shift-bound", "asym-lower"}) {
    const fs::path out1 = dir / (suite + "_a.json");
    const fs::path out2 = dir / (suite + "_b.json");
    const std::string base = std::string(cli) + " check " + suite + " --config " +
                             cfg_ts.string() + " --seed 42 --samples 40 --out ";
    if (std::system((base + out1.string() + " 2>/dev/null").c_str()) != 0 ||
        std::system((base + out2.string() + " 2>/dev/null").c_str()) != 0) {
      pass = false;
      detail = suite + " did not run cleanly";
      break;
    }
    std::ifstream a(out1, std::ios::binary), b(out2, std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    if (sa.str().empty() || sa.str() != sb.str()) {
      pass = false;
      detail = suite + " reports differ across reruns";
      break;
    }
  }
  verdict(10, "byte-identical reports for a fixed seed", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  const auto suite = shared_suite();
  criterion_oracle_and_fixed_point(suite);
  criterion_convexification();
  criterion_basis_and_domination();
  criterion_shift_bound();
  criterion_srs();
  criterion_zv(suite);
  criterion_asymptotic_lower();
  criterion_gamma_domination(suite);
  criterion_determinism(argc > 1 ? argv[1] : nullptr);

  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return 1;
}
