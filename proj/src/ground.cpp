#include "tsnorm/ground.hpp"

#include <cmath>
#include <cstdio>

#include "tsnorm/rng.hpp"
#include "tsnorm/sampling.hpp"

namespace tsnorm {

std::uint64_t& norm_eval_counter() {
  thread_local std::uint64_t counter = 0;
  return counter;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

GroundSpace GroundSpace::lp(Rat p_value) {
  GroundSpace g;
  g.kind = Kind::lp;
  g.p = std::move(p_value);
  g.validate();
  return g;
}

GroundSpace GroundSpace::c0() {
  GroundSpace g;
  g.kind = Kind::c0;
  g.p = 0;
  return g;
}

void GroundSpace::validate() const {
  if (kind == Kind::lp && p < 1) throw std::invalid_argument("lp space requires p >= 1");
}

std::string GroundSpace::to_string() const {
  if (is_c0()) return "c0";
  return "lp(" + rat_to_string(p) + ")";
}

namespace {

template <class S>
S combine_lp(const Rat& p, std::span<const S> values);

template <>
double combine_lp<double>(const Rat& p, std::span<const double> values) {
  const double pd = to_double(p);
  if (pd == 1.0) {
    double sum = 0;
    for (double v : values) sum += v;
    return sum;
  }
  double sum = 0;
  for (double v : values) sum += std::pow(v, pd);
  return std::pow(sum, 1.0 / pd);
}

template <>
Rat combine_lp<Rat>(const Rat& p, std::span<const Rat> values) {
  if (p != 1)
    throw ExactUnsupported("lp(" + rat_to_string(p) + ") norm is not rational-valued; use float mode");
  Rat sum = 0;
  for (const Rat& v : values) sum += v;
  return sum;
}

}  // namespace

template <class S>
S ground_combine(const GroundSpace& space, std::span<const S> values) {
  if (values.empty()) return S(0);
  if (space.is_c0()) {
    S best = values[0];
    for (const S& v : values.subspan(1))
      if (best < v) best = v;
    return best;
  }
  return combine_lp<S>(space.p, values);
}

template <class S>
S eval_ground_norm(const GroundSpace& space, const Coeffs<S>& x) {
  ++norm_eval_counter();
  std::vector<S> mags;
  mags.reserve(x.support_size());
  for (const auto& [i, v] : x.entries()) mags.push_back(scalar_abs(v));
  return ground_combine<S>(space, mags);
}

GroundSpace dual_ground(const GroundSpace& space) {
  if (space.is_c0()) return GroundSpace::lp(1);
  if (space.p == 1) return GroundSpace::c0();
  // 1/p + 1/p' = 1  =>  p' = p / (p - 1)
  return GroundSpace::lp(space.p / (space.p - 1));
}

CheckReport check_subsymmetry(const GroundSpace& space, const SearchConfig& cfg) {
  cfg.validate();
  CheckReport report;
  report.name = "subsymmetry:" + space.to_string();
  const bool exact = space.exact_capable();
  double worst = std::numeric_limits<double>::infinity();
  const std::uint64_t work0 = norm_eval_counter();

  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(s));
    CoeffsQ x = sample_vector(rng, 1, 12, 6, cfg.grid_levels);

    // random sign flips
    CoeffsQ flipped;
    for (const auto& [i, v] : x.entries()) flipped.set(i, rng.coin() ? v : -v);

    // random strictly increasing reindexing
    std::vector<int> targets;
    int pos = 0;
    for (std::size_t k = 0; k < x.support_size(); ++k) {
      pos += rng.uniform_int(1, 4);
      targets.push_back(std::max(pos, k == 0 ? 1 : targets.back() + 1));
      pos = targets.back();
    }
    CoeffsQ spread = x.spread(targets);

    auto record = [&](double diff, const char* what, const CoeffsQ& witness) {
      worst = std::min(worst, -std::fabs(diff));
      if (std::fabs(diff) > cfg.tolerance && report.pass) {
        report.pass = false;
        report.note("violation", what);
        report.note("witness", describe_vector(witness));
        report.note("sample", std::to_string(s));
      }
    };

    if (exact) {
      Rat base = eval_ground_norm(space, x);
      if (eval_ground_norm(space, flipped) != base)
        record(1.0, "sign flip changed the norm", x);
      if (eval_ground_norm(space, spread) != base)
        record(1.0, "spreading changed the norm", x);
    } else {
      CoeffsD xd = to_double(x);
      double base = eval_ground_norm(space, xd);
      double f = eval_ground_norm(space, to_double(flipped));
      double sp = eval_ground_norm(space, to_double(spread));
      if (std::fabs(f - base) > cfg.tolerance) record(f - base, "sign flip changed the norm", x);
      if (std::fabs(sp - base) > cfg.tolerance) record(sp - base, "spreading changed the norm", x);
      worst = std::min(worst, -std::max(std::fabs(f - base), std::fabs(sp - base)));
    }
  }

  // normalized coordinate vectors, checked exactly in both modes
  for (int i = 1; i <= 8 && report.pass; ++i) {
    if (exact) {
      if (eval_ground_norm(space, CoeffsQ::unit(i)) != 1) {
        report.pass = false;
        report.note("violation", "coordinate vector not normalized");
        report.note("index", std::to_string(i));
      }
    } else if (std::fabs(eval_ground_norm(space, CoeffsD::unit(i)) - 1.0) > cfg.tolerance) {
      report.pass = false;
      report.note("violation", "coordinate vector not normalized");
      report.note("index", std::to_string(i));
    }
  }

  report.margin = report.pass ? 0.0 : worst;
  if (exact && report.pass) report.margin_exact = "0";
  report.work = norm_eval_counter() - work0;
  return report;
}

template Rat ground_combine<Rat>(const GroundSpace&, std::span<const Rat>);
template double ground_combine<double>(const GroundSpace&, std::span<const double>);
template Rat eval_ground_norm<Rat>(const GroundSpace&, const Coeffs<Rat>&);
template double eval_ground_norm<double>(const GroundSpace&, const Coeffs<double>&);

}  // namespace tsnorm
