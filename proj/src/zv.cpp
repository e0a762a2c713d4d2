#include "tsnorm/zv.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "tsnorm/rng.hpp"
#include "tsnorm/sampling.hpp"
#include "tsnorm/space.hpp"

namespace tsnorm {

int FddSpec::dim() const {
  return std::accumulate(block_dims.begin(), block_dims.end(), 0);
}

std::pair<int, int> FddSpec::coord_range(int m, int n) const {
  int first = 1;
  for (int b = 1; b < m; ++b) first += block_dims[static_cast<std::size_t>(b - 1)];
  int last = first - 1;
  for (int b = m; b <= n; ++b) last += block_dims[static_cast<std::size_t>(b - 1)];
  return {first, last};
}

void FddSpec::validate() const {
  if (block_dims.empty()) throw std::invalid_argument("fdd: needs at least one block");
  for (int d : block_dims)
    if (d < 1) throw std::invalid_argument("fdd: block dimensions must be positive");
  if (!base || !v) throw std::invalid_argument("fdd: base and v spaces are required");
  base->validate();
  v->validate();
}

std::string FddSpec::to_string() const {
  std::string dims;
  for (int d : block_dims) {
    if (!dims.empty()) dims += ',';
    dims += std::to_string(d);
  }
  return "Zv(blocks=[" + dims + "], base=" + base->to_string() + ", v=" + v->to_string() + ")";
}

template <class S>
Coeffs<S> block_projection(const FddSpec& spec, const Coeffs<S>& z, int m, int n) {
  if (m < 1 || n > spec.blocks() || m > n)
    throw std::invalid_argument("block_projection: interval out of range");
  const auto [lo, hi] = spec.coord_range(m, n);
  return z.restricted(lo, hi);
}

namespace {

template <class S>
void require_in_range(const FddSpec& spec, const Coeffs<S>& z) {
  if (!z.empty() && z.max_support() > spec.dim())
    throw std::invalid_argument("zv_norm: vector extends past the declared blocks");
}

// Z-norms of block intervals (a, b], memoized for one vector.
template <class S>
class BlockNormTable {
 public:
  BlockNormTable(const FddSpec& spec, const Coeffs<S>& z) : spec_(spec), z_(z) {
    const std::size_t b = static_cast<std::size_t>(spec.blocks());
    values_.assign((b + 1) * (b + 1), S(0));
    have_.assign((b + 1) * (b + 1), false);
  }

  const S& at(int a, int b) {
    const std::size_t key =
        static_cast<std::size_t>(a) * static_cast<std::size_t>(spec_.blocks() + 1) +
        static_cast<std::size_t>(b);
    if (!have_[key]) {
      values_[key] = space_norm<S>(*spec_.base, block_projection(spec_, z_, a + 1, b));
      have_[key] = true;
    }
    return values_[key];
  }

 private:
  const FddSpec& spec_;
  const Coeffs<S>& z_;
  std::vector<S> values_;
  std::vector<bool> have_;
};

// Outer value || sum_j c_j v_j ||_V with a ground-space fast path.
template <class S>
S outer_value(const Space& v, const std::vector<S>& coeffs) {
  if (v.kind == SpaceKind::ground) return ground_combine<S>(v.ground, std::span<const S>(coeffs));
  Coeffs<S> vec;
  for (std::size_t j = 0; j < coeffs.size(); ++j) vec.set(static_cast<int>(j) + 1, coeffs[j]);
  return space_norm<S>(v, vec);
}

template <class S>
ZvEvaluation<S> zv_enumerate(const FddSpec& spec, const Coeffs<S>& z) {
  const int blocks = spec.blocks();
  BlockNormTable<S> table(spec, z);
  ZvEvaluation<S> best;
  std::vector<int> cuts;
  std::vector<S> coeffs;
  bool first = true;

  const std::uint32_t masks = blocks >= 1 ? (1u << (blocks - 1)) : 1;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    cuts.clear();
    coeffs.clear();
    int prev = 0;
    for (int b = 1; b < blocks; ++b) {
      if (mask & (1u << (b - 1))) {
        cuts.push_back(b);
        coeffs.push_back(table.at(prev, b));
        prev = b;
      }
    }
    cuts.push_back(blocks);
    coeffs.push_back(table.at(prev, blocks));
    const S value = outer_value(*spec.v, coeffs);
    if (first || best.value < value || (value == best.value && cuts < best.cuts)) {
      best.value = value;
      best.cuts = cuts;
      first = false;
    }
  }
  return best;
}

template <class S>
S lp_power(const S& v, const Rat& p);

template <>
double lp_power<double>(const double& v, const Rat& p) {
  return std::pow(v, to_double(p));
}
template <>
Rat lp_power<Rat>(const Rat& v, const Rat& p) {
  if (p != 1) throw ExactUnsupported("zv segment DP: lp(p != 1) outer norm needs float mode");
  return v;
}

// Maximize sum_j ||segment_j||_Z^p over segmentations; valid because the lp
// outer norm is a monotone function of that sum.
template <class S>
ZvEvaluation<S> zv_segment_dp(const FddSpec& spec, const Coeffs<S>& z) {
  const GroundSpace& vg = spec.v->ground;
  const int blocks = spec.blocks();
  BlockNormTable<S> table(spec, z);

  std::vector<S> best(static_cast<std::size_t>(blocks) + 1, S(0));
  std::vector<int> back(static_cast<std::size_t>(blocks) + 1, 0);
  for (int i = 1; i <= blocks; ++i) {
    bool first = true;
    for (int j = 0; j < i; ++j) {
      const S cand = best[static_cast<std::size_t>(j)] + lp_power<S>(table.at(j, i), vg.p);
      if (first || best[static_cast<std::size_t>(i)] < cand) {
        best[static_cast<std::size_t>(i)] = cand;
        back[static_cast<std::size_t>(i)] = j;
        first = false;
      }
    }
  }

  ZvEvaluation<S> out;
  if constexpr (std::is_same_v<S, Rat>)
    out.value = best[static_cast<std::size_t>(blocks)];
  else
    out.value = std::pow(best[static_cast<std::size_t>(blocks)], 1.0 / to_double(vg.p));
  for (int i = blocks; i > 0; i = back[static_cast<std::size_t>(i)]) out.cuts.push_back(i);
  std::reverse(out.cuts.begin(), out.cuts.end());
  return out;
}

}  // namespace

template <class S>
S zv_partition_value(const FddSpec& spec, const Coeffs<S>& z, const std::vector<int>& cuts) {
  spec.validate();
  require_in_range(spec, z);
  if (cuts.empty()) throw std::invalid_argument("zv_partition_value: needs at least one cut");
  int prev = 0;
  std::vector<S> coeffs;
  for (int c : cuts) {
    if (c <= prev || c > spec.blocks())
      throw std::invalid_argument("zv_partition_value: cuts must be strictly increasing block indices");
    coeffs.push_back(space_norm<S>(*spec.base, block_projection(spec, z, prev + 1, c)));
    prev = c;
  }
  return outer_value<S>(*spec.v, coeffs);
}

template <class S>
ZvEvaluation<S> zv_norm(const FddSpec& spec, const Coeffs<S>& z, int enum_cap) {
  spec.validate();
  require_in_range(spec, z);
  ++norm_eval_counter();
  if (spec.blocks() <= enum_cap) return zv_enumerate(spec, z);
  if (spec.v->kind == SpaceKind::ground && !spec.v->ground.is_c0())
    return zv_segment_dp(spec, z);
  throw std::invalid_argument(
      "zv_norm: " + std::to_string(spec.blocks()) +
      " blocks exceeds the enumeration cap and the outer space admits no segment DP");
}

ProjectionEstimate projection_constant_estimate(const FddSpec& spec, const SearchConfig& cfg) {
  spec.validate();
  cfg.validate();
  const int blocks = spec.blocks();
  const int dim = spec.dim();
  const std::uint64_t work0 = norm_eval_counter();

  ProjectionEstimate best;
  best.value = 0.0;

  auto consider = [&](const CoeffsD& z) {
    if (z.empty()) return;
    const double denom = zv_norm<double>(spec, z).value;
    if (denom <= 0) return;
    for (int m = 1; m <= blocks; ++m) {
      for (int n = m; n <= blocks; ++n) {
        const CoeffsD proj = block_projection(spec, z, m, n);
        if (proj.empty()) continue;
        const double ratio = zv_norm<double>(spec, proj).value / denom;
        if (ratio > best.value) {
          best.value = ratio;
          best.witness = z;
          best.best_m = m;
          best.best_n = n;
        }
      }
    }
  };

  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(s));
    // stratified sparsity: dense, medium, sparse in rotation
    const int stratum = s % 3;
    const int max_support = stratum == 0 ? dim : (stratum == 1 ? std::max(1, dim / 2) : 2);
    consider(to_double(sample_vector(rng, 1, dim, max_support, cfg.grid_levels)));
  }

  // coordinate-ascent polish of the best sample
  if (!best.witness.empty()) {
    CoeffsD z = best.witness;
    const int m = best.best_m, n = best.best_n;
    auto ratio_of = [&](const CoeffsD& cand) -> double {
      const double denom = zv_norm<double>(spec, cand).value;
      if (denom <= 0) return 0.0;
      const CoeffsD proj = block_projection(spec, cand, m, n);
      if (proj.empty()) return 0.0;
      return zv_norm<double>(spec, proj).value / denom;
    };
    double current = ratio_of(z);
    for (int it = 0; it < cfg.polish_iters; ++it) {
      const double step = 0.5 * std::pow(0.85, it);
      bool improved = false;
      for (int c = 1; c <= dim; ++c) {
        const double old = z.at(c);
        for (double factord : {1.0 + step, 1.0 - step, -1.0}) {
          CoeffsD cand = z;
          cand.set(c, old == 0.0 ? factord * step : old * factord);
          const double r = ratio_of(cand);
          if (r > current) {
            current = r;
            z = cand;
            improved = true;
          }
        }
      }
      if (!improved && it > 4) break;
    }
    if (current > best.value) {
      best.value = current;
      best.witness = z;
    }
  }

  best.work = norm_eval_counter() - work0;
  return best;
}

template Coeffs<Rat> block_projection<Rat>(const FddSpec&, const Coeffs<Rat>&, int, int);
template Coeffs<double> block_projection<double>(const FddSpec&, const Coeffs<double>&, int, int);
template ZvEvaluation<Rat> zv_norm<Rat>(const FddSpec&, const Coeffs<Rat>&, int);
template ZvEvaluation<double> zv_norm<double>(const FddSpec&, const Coeffs<double>&, int);
template Rat zv_partition_value<Rat>(const FddSpec&, const Coeffs<Rat>&, const std::vector<int>&);
template double zv_partition_value<double>(const FddSpec&, const Coeffs<double>&,
                                           const std::vector<int>&);

}  // namespace tsnorm
