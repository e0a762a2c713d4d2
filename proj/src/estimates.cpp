#include "tsnorm/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsnorm/rng.hpp"
#include "tsnorm/sampling.hpp"

namespace tsnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tracks the worst slack of an asserted inequality plus the witness that
// produced it.
struct MarginTracker {
  double worst = kInf;
  bool have_exact = true;
  Rat worst_exact;
  bool first = true;
  std::string witness;

  void feed(double slack, const std::string& who) {
    if (slack < worst || first) {
      worst = slack;
      witness = who;
    }
    first = false;
    have_exact = false;
  }
  void feed_exact(const Rat& slack, const std::string& who) {
    if (first || slack < worst_exact) {
      worst_exact = slack;
      worst = to_double(slack);
      witness = who;
    }
    first = false;
  }

  void finish(CheckReport& report, double tolerance) const {
    if (first) {
      report.margin = 0.0;
      return;
    }
    report.margin = worst;
    if (have_exact) {
      report.margin_exact = rat_to_string(worst_exact);
      report.pass = worst_exact >= 0;
    } else {
      report.pass = worst >= -tolerance;
    }
    if (!report.pass) report.note("witness", witness);
  }
};

Rat one_minus_four_gamma(const Rat& gamma) {
  if (!(gamma > 0 && gamma < Rat(1, 4)))
    throw std::invalid_argument("shift bounds require 0 < gamma < 1/4");
  return 1 - 4 * gamma;
}

}  // namespace

template <class S>
Coeffs<S> shift(const Coeffs<S>& x, int m) {
  if (m < 1) throw std::invalid_argument("shift: m must be >= 1");
  return x.shifted_back(m);
}

template Coeffs<Rat> shift<Rat>(const Coeffs<Rat>&, int);
template Coeffs<double> shift<double>(const Coeffs<double>&, int);

// ---------------------------------------------------------------------------
// Backward-shift lower bound
// ---------------------------------------------------------------------------

Rat ShiftBoundCase::delta() const {
  return Rat(m) / Rat(n - m) / one_minus_four_gamma(gamma);
}

void ShiftBoundCase::validate() const {
  if (m < 1) throw std::invalid_argument("shift bound: m must be >= 1");
  if (n <= m) throw std::invalid_argument("shift bound: n must exceed m");
  one_minus_four_gamma(gamma);
  if (delta() > 1)
    throw std::invalid_argument("shift bound: (m/(n-m))/(1-4*gamma) exceeds 1; bound is empty");
}

CheckReport check_shift_bound(const TsirelsonSpace& space, const ShiftBoundCase& scase,
                              const SearchConfig& cfg) {
  scase.validate();
  cfg.validate();
  space.validate();
  if (space.gamma != scase.gamma)
    throw std::invalid_argument("check_shift_bound: case gamma differs from the space");
  if (space.convexify_p) throw std::invalid_argument("check_shift_bound: plain space required");

  CheckReport report;
  report.name = "shift-bound";
  const std::uint64_t work0 = norm_eval_counter();
  const Rat bound = 1 - scase.delta();  // closed-form limit, never a partial sum
  report.note("m", std::to_string(scase.m));
  report.note("n", std::to_string(scase.n));
  report.note("bound", rat_to_string(bound));

  const bool exact = space.exact_capable();
  MarginTracker tracker;
  double min_ratio = kInf;

  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(s));
    const CoeffsQ x = sample_interval_vector(rng, scase.n, 6, cfg.grid_levels);
    const CoeffsQ shifted = shift(x, scase.m);
    const std::string who = describe_vector(x);
    if (exact) {
      const Rat nx = ts_norm<Rat>(space, x);
      const Rat ns = ts_norm<Rat>(space, shifted);
      tracker.feed_exact(ns - bound * nx, who);
      if (nx > 0) min_ratio = std::min(min_ratio, to_double(ns / nx));
    } else {
      const double nx = ts_norm<double>(space, to_double(x));
      const double ns = ts_norm<double>(space, to_double(shifted));
      tracker.feed(ns - to_double(bound) * nx, who);
      if (nx > 0) min_ratio = std::min(min_ratio, ns / nx);
    }
  }

  tracker.finish(report, cfg.tolerance);
  report.note("min_ratio", format_double(min_ratio));
  report.work = norm_eval_counter() - work0;
  return report;
}

// ---------------------------------------------------------------------------
// Domination constants
// ---------------------------------------------------------------------------

namespace {

double domination_ratio(const Space& a, const Space& b, const CoeffsD& coeffs) {
  const double nb = space_norm<double>(b, coeffs);
  if (nb <= 0) return 0.0;
  return space_norm<double>(a, coeffs) / nb;
}

// Multiplicative coordinate ascent on an arbitrary ratio objective. The step
// halves whenever a full sweep yields no improvement, so the search refines
// down to the precision the sweep budget allows.
void polish_coordinates(const std::function<double(const CoeffsD&)>& objective, CoeffsD& x,
                        double& value, int dim, int iters) {
  double step = 0.5;
  const int max_sweeps = std::max(iters * 4, 40);
  for (int sweep = 0; sweep < max_sweeps && step > 1e-11; ++sweep) {
    bool improved = false;
    for (int c = 1; c <= dim; ++c) {
      const double old = x.at(c);
      const double seed = old == 0.0 ? step : 0.0;
      for (double cand_value : {old * (1.0 + step), old * (1.0 - step), -old, seed, -seed}) {
        if (cand_value == old) continue;
        CoeffsD cand = x;
        cand.set(c, cand_value);
        if (cand.empty()) continue;
        const double v = objective(cand);
        if (v > value) {
          value = v;
          x = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
}

}  // namespace

DominationReport domination_constant(const Space& norm_a, const Space& norm_b, int dim,
                                     const SearchConfig& cfg,
                                     std::optional<double> assert_at_most) {
  if (dim < 1) throw std::invalid_argument("domination_constant: dim must be >= 1");
  cfg.validate();
  norm_a.validate();
  norm_b.validate();

  DominationReport report;
  report.seed = cfg.seed;
  const std::uint64_t work0 = norm_eval_counter();
  auto objective = [&](const CoeffsD& x) { return domination_ratio(norm_a, norm_b, x); };

  double best = 0.0;
  CoeffsD witness;
  int used = 0;
  auto consider = [&](const CoeffsD& x) {
    if (x.empty()) return;
    ++used;
    const double r = objective(x);
    if (r > best) {
      best = r;
      witness = x;
    }
  };

  // sign patterns are extremal for unconditional norms; exhaust them when
  // feasible
  if (dim <= 9) {
    for_each_sign_vector(dim, 0, [&](const CoeffsQ& x) { consider(to_double(x)); });
  } else {
    for (int i = 1; i <= dim; ++i) consider(CoeffsD::unit(i));
  }

  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(s));
    consider(to_double(sample_vector(rng, 1, dim, dim, cfg.grid_levels)));
  }

  polish_coordinates(objective, witness, best, dim, cfg.polish_iters);

  report.constant_estimate = best;
  report.witness = witness;
  report.samples_used = used;
  report.bound = assert_at_most;
  report.pass = !assert_at_most || best <= *assert_at_most + cfg.tolerance;
  report.work = norm_eval_counter() - work0;
  return report;
}

// ---------------------------------------------------------------------------
// Asymptotic lower / upper estimates
// ---------------------------------------------------------------------------

namespace {

CheckReport check_asymptotic(const Space& space, const GroundSpace& reference, int max_len,
                             double C, const SearchConfig& cfg, bool lower) {
  if (max_len < 1) throw std::invalid_argument("asymptotic check: max_len must be >= 1");
  if (C < 1) throw std::invalid_argument("asymptotic check: C must be >= 1");
  cfg.validate();
  space.validate();

  CheckReport report;
  report.name = lower ? "asym-lower" : "asym-upper";
  report.note("space", space.to_string());
  report.note(lower ? "v" : "u", reference.to_string());
  report.note("C", format_double(C));
  const std::uint64_t work0 = norm_eval_counter();
  const bool exact = space.exact_capable();
  MarginTracker tracker;

  // a finite composite only has so many coordinates to put blocks on
  int max_coord = 0;
  int effective_len = max_len;
  if (space.kind == SpaceKind::zv) {
    max_coord = space.fdd.dim();
    effective_len = std::min(max_len, (max_coord + 1) / 2);
    if (effective_len < 1)
      throw std::invalid_argument("asymptotic check: space too small for any block sequence");
  }

  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(s));
    const int len = rng.uniform_int(1, effective_len);
    // block sequence of length `len` living on coordinates >= len
    auto pieces = sample_block_sequence(rng, len, len, 3, 2, cfg.grid_levels);
    if (max_coord > 0 && pieces.back().max_support() > max_coord) {
      // tight fit: consecutive singletons starting at coordinate len
      pieces.clear();
      for (int j = 0; j < len; ++j) {
        CoeffsQ piece;
        piece.set(len + j, sample_entry(rng, cfg.grid_levels));
        pieces.push_back(piece);
      }
    }

    double lhs;
    std::string who;
    if (exact) {
      CoeffsQ sum;
      for (auto& piece : pieces) {
        const Rat norm = space_norm<Rat>(space, piece);
        sum = sum.plus(piece.scaled(1 / norm));  // normalized: piece norms are 1
      }
      lhs = to_double(space_norm<Rat>(space, sum));
      who = describe_vector(sum);
    } else {
      CoeffsD sum;
      for (auto& piece : pieces) {
        CoeffsD pd = to_double(piece);
        const double norm = space_norm<double>(space, pd);
        sum = sum.plus(pd.scaled(1.0 / norm));
      }
      lhs = space_norm<double>(space, sum);
      who = describe_vector(sum);
    }

    // || sum_i ||x_i|| v_i || with every ||x_i|| = 1
    std::vector<double> ones(static_cast<std::size_t>(len), 1.0);
    const double ref = ground_combine<double>(reference, std::span<const double>(ones));
    const double slack = lower ? lhs - ref / C : C * ref - lhs;
    tracker.feed(slack, who + " (len " + std::to_string(len) + ")");
  }

  tracker.finish(report, cfg.tolerance);
  report.work = norm_eval_counter() - work0;
  return report;
}

}  // namespace

CheckReport check_asymptotic_lower(const Space& space, const GroundSpace& v, int max_len,
                                   double C, const SearchConfig& cfg) {
  return check_asymptotic(space, v, max_len, C, cfg, true);
}

CheckReport check_asymptotic_upper(const Space& space, const GroundSpace& u, int max_len,
                                   double C, const SearchConfig& cfg) {
  return check_asymptotic(space, u, max_len, C, cfg, false);
}

// ---------------------------------------------------------------------------
// Shift properties
// ---------------------------------------------------------------------------

CheckReport check_srs(const TsirelsonSpace& space, const SearchConfig& cfg, int support_range,
                      int max_shift) {
  cfg.validate();
  space.validate();
  if (space.convexify_p) throw std::invalid_argument("check_srs: plain space required");
  if (support_range < 1 || max_shift < 0) throw std::invalid_argument("check_srs: bad ranges");

  CheckReport report;
  report.name = "srs";
  report.note("support_range", std::to_string(support_range));
  report.note("max_shift", std::to_string(max_shift));
  const std::uint64_t work0 = norm_eval_counter();
  const bool exact = space.exact_capable();
  MarginTracker tracker;

  for_each_sign_vector(support_range, 0, [&](const CoeffsQ& x) {
    if (exact) {
      const Rat base = ts_norm<Rat>(space, x);
      for (int n = 1; n <= max_shift; ++n) {
        const Rat shifted = ts_norm<Rat>(space, x.shifted_forward(n));
        tracker.feed_exact(shifted - base,
                           describe_vector(x) + " shift " + std::to_string(n));
      }
    } else {
      const CoeffsD xd = to_double(x);
      const double base = ts_norm<double>(space, xd);
      for (int n = 1; n <= max_shift; ++n) {
        const double shifted = ts_norm<double>(space, xd.shifted_forward(n));
        tracker.feed(shifted - base, describe_vector(x) + " shift " + std::to_string(n));
      }
    }
  });

  tracker.finish(report, cfg.tolerance);
  report.work = norm_eval_counter() - work0;
  return report;
}

long wls_threshold(const Rat& gamma, const Rat& d, int m) {
  if (m < 1) throw std::invalid_argument("wls: m must be >= 1");
  if (!(d > 0 && d < 1)) throw std::invalid_argument("wls: d must lie in (0,1)");
  const Rat denom = (1 - d) * one_minus_four_gamma(gamma);
  // smallest L >= m with m / (L + 1 - m) <= (1-d)(1-4 gamma)
  const Rat lower = Rat(m) - 1 + Rat(m) / denom;
  const BigInt ceiling = rat_ceil(lower);
  const long l = ceiling.convert_to<long>();
  return std::max<long>(m, l);
}

CheckReport check_wls(const TsirelsonSpace& space, const Rat& d, int m, const SearchConfig& cfg) {
  cfg.validate();
  space.validate();
  if (space.convexify_p) throw std::invalid_argument("check_wls: plain space required");

  const long L = wls_threshold(space.gamma, d, m);
  CheckReport report;
  report.name = "wls";
  report.note("d", rat_to_string(d));
  report.note("m", std::to_string(m));
  report.note("L", std::to_string(L));
  const std::uint64_t work0 = norm_eval_counter();
  const bool exact = space.exact_capable();
  MarginTracker tracker;

  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(s));
    const CoeffsQ x = sample_interval_vector(rng, static_cast<int>(L) + 1, 6, cfg.grid_levels);
    if (exact) {
      const Rat base = ts_norm<Rat>(space, x);
      for (int k = 1; k <= m; ++k)
        tracker.feed_exact(ts_norm<Rat>(space, shift(x, k)) - d * base,
                           describe_vector(x) + " backshift " + std::to_string(k));
    } else {
      const CoeffsD xd = to_double(x);
      const double base = ts_norm<double>(space, xd);
      for (int k = 1; k <= m; ++k)
        tracker.feed(ts_norm<double>(space, shift(xd, k)) - to_double(d) * base,
                     describe_vector(x) + " backshift " + std::to_string(k));
    }
  }

  tracker.finish(report, cfg.tolerance);
  report.work = norm_eval_counter() - work0;
  return report;
}

// ---------------------------------------------------------------------------
// Basis domination against T(V, gamma')
// ---------------------------------------------------------------------------

CheckReport check_prop43(const TsirelsonSpace& target, const Space& source, double C, double K,
                         const SearchConfig& cfg) {
  cfg.validate();
  target.validate();
  source.validate();
  if (target.convexify_p) throw std::invalid_argument("check_prop43: plain target required");
  if (C < 1 || K < 1) throw std::invalid_argument("check_prop43: constants must be >= 1");
  if (to_double(target.gamma) > 1.0 / (K * C) + 1e-15)
    throw std::invalid_argument("check_prop43: needs gamma' <= 1/(K*C)");

  CheckReport report;
  report.name = "prop43";
  report.note("target", target.to_string());
  report.note("source", source.to_string());
  report.note("C", format_double(C));
  report.note("K", format_double(K));
  const std::uint64_t work0 = norm_eval_counter();
  const bool exact = K == 1.0 && target.exact_capable() && source.exact_capable();
  MarginTracker tracker;

  auto check_one = [&](const CoeffsQ& a) {
    if (exact) {
      tracker.feed_exact(space_norm<Rat>(source, a) - ts_norm<Rat>(target, a),
                         describe_vector(a));
    } else {
      const CoeffsD ad = to_double(a);
      tracker.feed(K * space_norm<double>(source, ad) - ts_norm<double>(target, ad),
                   describe_vector(a));
    }
  };

  // exhaustive signs on a short range, then random rational vectors
  for_each_sign_vector(std::min(6, 8), 4, check_one);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(s));
    check_one(sample_vector(rng, 1, 10, 6, cfg.grid_levels));
  }

  tracker.finish(report, cfg.tolerance);
  report.work = norm_eval_counter() - work0;
  return report;
}

// ---------------------------------------------------------------------------
// Dual norms and the duality direction check
// ---------------------------------------------------------------------------

double dual_norm_estimate(const Space& space, const CoeffsD& functional, int dim,
                          const SearchConfig& cfg) {
  cfg.validate();
  space.validate();
  if (functional.empty()) return 0.0;
  if (functional.max_support() > dim)
    throw std::invalid_argument("dual_norm_estimate: functional extends past dim");

  // closed form for ground spaces
  if (space.kind == SpaceKind::ground)
    return eval_ground_norm(dual_ground(space.ground), functional);

  // By unconditionality the supremum is attained in the orthant where the
  // signs of x align with the functional; equivalently, maximize the ratio
  // <|f|, x> / ||x|| over x >= 0.
  const CoeffsD g = functional.abs();
  auto objective = [&](const CoeffsD& x) {
    double inner = 0;
    for (const auto& [i, v] : x.entries()) inner += g.at(i) * std::fabs(v);
    const double norm = space_norm<double>(space, x);
    return norm > 0 ? inner / norm : 0.0;
  };

  double best = 0.0;
  CoeffsD champion;
  auto consider = [&](const CoeffsD& x) {
    if (x.empty()) return;
    const double r = objective(x);
    if (r > best) {
      best = r;
      champion = x;
    }
  };

  consider(g);  // aligned magnitudes
  CoeffsD indicator;
  for (const auto& [i, v] : g.entries()) indicator.set(i, 1.0);
  consider(indicator);
  for (const auto& [i, v] : g.entries()) consider(CoeffsD::unit(i));
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(s));
    CoeffsD x;
    for (const auto& [i, v] : g.entries())
      if (rng.uniform() < 0.75) x.set(i, std::fabs(to_double(sample_entry(rng, cfg.grid_levels))));
    consider(x);
  }

  polish_coordinates(objective, champion, best, dim, cfg.polish_iters);
  return best;
}

CheckReport check_duality_prop13(const FddSpec& spec, const GroundSpace& v, double C,
                                 const SearchConfig& cfg) {
  cfg.validate();
  spec.validate();
  if (C < 1) throw std::invalid_argument("check_duality_prop13: C must be >= 1");

  CheckReport report;
  report.name = "duality13";
  report.note("spec", spec.to_string());
  report.note("v", v.to_string());
  report.note("C", format_double(C));
  const std::uint64_t work0 = norm_eval_counter();

  const SpacePtr zv = Space::make_zv(spec);
  const GroundSpace v_dual = dual_ground(v);
  const int blocks = spec.blocks();
  const int dim = spec.dim();
  const double slack_factor = 1.10;  // dual norms below are themselves estimates

  SearchConfig inner = cfg;
  inner.samples = std::max(8, cfg.samples / 8);
  inner.polish_iters = std::max(8, cfg.polish_iters / 2);

  // primal side: sampled lower-estimate constant of the block FDD against V
  double c_primal = 0.0;
  std::string primal_witness;
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(s));
    const int len = rng.uniform_int(1, std::min(blocks, 4));
    // successive block intervals carrying the pieces
    std::vector<std::pair<int, int>> intervals;
    int next = 1;
    for (int j = 0; j < len && next <= blocks; ++j) {
      const int hi = std::min(blocks, next + rng.uniform_int(0, 1));
      intervals.emplace_back(next, hi);
      next = hi + 1 + rng.uniform_int(0, 1);
    }

    CoeffsD sum;
    std::vector<double> coeff_norms;
    for (auto [man, n] : intervals) {
      const auto [lo, hi] = spec.coord_range(man, n);
      CoeffsD piece = to_double(sample_vector(rng, lo, hi, hi - lo + 1, cfg.grid_levels));
      const double norm = zv_norm<double>(spec, piece).value;
      if (norm <= 0) continue;
      const double a = to_double(sample_entry(rng, cfg.grid_levels));
      sum = sum.plus(piece.scaled(a / norm));
      coeff_norms.push_back(std::fabs(a));
    }
    if (sum.empty() || coeff_norms.empty()) continue;
    const double rhs = ground_combine<double>(v, std::span<const double>(coeff_norms));
    const double lhs = zv_norm<double>(spec, sum).value;
    if (lhs > 0 && rhs / lhs > c_primal) {
      c_primal = rhs / lhs;
      primal_witness = describe_vector(sum);
    }
  }
  report.note("primal_constant", format_double(c_primal));

  if (c_primal > C * slack_factor + cfg.tolerance) {
    report.pass = false;
    report.margin = C * slack_factor - c_primal;
    report.note("violation", "primal lower-estimate hypothesis failed at sampled constant");
    report.note("witness", primal_witness);
    report.work = norm_eval_counter() - work0;
    return report;
  }

  // dual side: block sequences of functionals, norms estimated by search
  double c_dual = 0.0;
  std::string dual_witness;
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = derive_stream(cfg.seed ^ 0x517cc1b727220a95ULL, static_cast<std::uint64_t>(s));
    const int len = rng.uniform_int(1, std::min(blocks, 3));
    std::vector<std::pair<int, int>> intervals;
    int next = 1;
    for (int j = 0; j < len && next <= blocks; ++j) {
      const int hi = std::min(blocks, next + rng.uniform_int(0, 1));
      intervals.emplace_back(next, hi);
      next = hi + 1 + rng.uniform_int(0, 1);
    }

    CoeffsD combo;
    std::vector<double> coeff_norms;
    for (auto [man, n] : intervals) {
      const auto [lo, hi] = spec.coord_range(man, n);
      CoeffsD f = to_double(sample_vector(rng, lo, hi, hi - lo + 1, cfg.grid_levels));
      const double fnorm = dual_norm_estimate(*zv, f, dim, inner);
      if (fnorm <= 0) continue;
      const double b = to_double(sample_entry(rng, cfg.grid_levels));
      combo = combo.plus(f.scaled(b / fnorm));
      coeff_norms.push_back(std::fabs(b));
    }
    if (combo.empty() || coeff_norms.empty()) continue;
    const double lhs = dual_norm_estimate(*zv, combo, dim, inner);
    const double rhs = ground_combine<double>(v_dual, std::span<const double>(coeff_norms));
    if (rhs > 0 && lhs / rhs > c_dual) {
      c_dual = lhs / rhs;
      dual_witness = describe_vector(combo);
    }
  }
  report.note("dual_constant", format_double(c_dual));

  report.margin = C * slack_factor - c_dual;
  report.pass = report.margin >= -cfg.tolerance;
  if (!report.pass) {
    report.note("violation", "dual upper estimate exceeded C with 10% slack");
    report.note("witness", dual_witness);
  }
  report.work = norm_eval_counter() - work0;
  return report;
}

}  // namespace tsnorm
