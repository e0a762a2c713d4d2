#include "tsnorm/tsirelson.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "tsnorm/search.hpp"

namespace tsnorm {

namespace {

constexpr std::size_t kDpSupportLimit = 24;  // exhaustive split enumeration beyond this is hopeless

template <class S>
struct SupportView {
  std::vector<int> index;  // ascending coordinate indices
  std::vector<S> mag;      // matching magnitudes, all > 0
  std::size_t size() const { return index.size(); }
};

template <class S>
SupportView<S> make_support(const Coeffs<S>& x) {
  SupportView<S> sv;
  sv.index.reserve(x.support_size());
  sv.mag.reserve(x.support_size());
  for (const auto& [i, v] : x.entries()) {
    sv.index.push_back(i);
    sv.mag.push_back(scalar_abs(v));
  }
  return sv;
}

void require_plain(const TsirelsonSpace& space, const char* who) {
  space.validate();
  if (space.convexify_p)
    throw std::invalid_argument(std::string(who) +
                                ": convexified space; evaluate through convexified_norm");
}

}  // namespace

TsirelsonSpace TsirelsonSpace::make(GroundSpace g, Rat gamma_value, std::optional<int> convexify) {
  TsirelsonSpace t{std::move(g), std::move(gamma_value), convexify};
  t.validate();
  return t;
}

void TsirelsonSpace::validate() const {
  ground.validate();
  if (!(gamma > 0 && gamma < 1)) throw std::invalid_argument("tsirelson: gamma must be in (0,1)");
  if (convexify_p) {
    if (*convexify_p < 1) throw std::invalid_argument("tsirelson: convexify_p must be >= 1");
    if (!ground.is_lp(1))
      throw std::invalid_argument("tsirelson: convexified space must have ground lp(1)");
  }
}

bool TsirelsonSpace::exact_capable() const {
  if (convexify_p && *convexify_p > 1) return false;  // final root is irrational
  return ground.exact_capable();
}

std::string TsirelsonSpace::to_string() const {
  if (convexify_p)
    return "T_conv(p=" + std::to_string(*convexify_p) + ", gamma=" + rat_to_string(gamma) + ")";
  return "T(" + ground.to_string() + ", " + rat_to_string(gamma) + ")";
}

// ---------------------------------------------------------------------------
// Interval dynamic program
// ---------------------------------------------------------------------------

namespace {

template <class S>
struct DpCell {
  S value{};
  std::vector<std::pair<int, int>> pieces;  // support-position ranges; empty = sup-norm leaf
};

template <class S>
std::vector<int> partition_key(const std::vector<std::pair<int, int>>& pieces,
                               const SupportView<S>& sv) {
  std::vector<int> key;
  key.reserve(pieces.size() * 2);
  for (auto [p, q] : pieces) {
    key.push_back(sv.index[p]);
    key.push_back(sv.index[q]);
  }
  return key;
}

template <class S>
PartitionNode<S> build_witness(const std::vector<DpCell<S>>& cells, const SupportView<S>& sv,
                               std::size_t u, std::size_t v) {
  const DpCell<S>& c = cells[u * sv.size() + v];
  PartitionNode<S> node{sv.index[u], sv.index[v], c.value, {}};
  node.pieces.reserve(c.pieces.size());
  for (auto [p, q] : c.pieces)
    node.pieces.push_back(build_witness(cells, sv, static_cast<std::size_t>(p),
                                        static_cast<std::size_t>(q)));
  return node;
}

}  // namespace

template <class S>
TsEvaluation<S> ts_norm_dp(const TsirelsonSpace& space, const Coeffs<S>& x0) {
  require_plain(space, "ts_norm_dp");
  ++norm_eval_counter();

  const Coeffs<S> x = x0.abs();  // every level of the recursion sees magnitudes only
  const SupportView<S> sv = make_support(x);
  const std::size_t s = sv.size();

  TsEvaluation<S> out;
  if (s == 0) {
    out.value = S(0);
    out.witness = PartitionNode<S>{0, 0, S(0), {}};
    return out;
  }
  if (s > kDpSupportLimit)
    throw std::invalid_argument("ts_norm_dp: support too large for partition enumeration");

  const S gamma = from_rat<S>(space.gamma);
  std::vector<DpCell<S>> cells(s * s);
  std::vector<S> maxabs(s * s, S(0));  // sup norm of the restriction to [u..v]
  std::vector<S> piece_norms;
  std::vector<std::pair<int, int>> pieces;

  for (std::size_t len = 1; len <= s; ++len) {
    for (std::size_t u = 0; u + len <= s; ++u) {
      const std::size_t v = u + len - 1;
      DpCell<S>& cell = cells[u * s + v];

      maxabs[u * s + v] = u < v ? scalar_max(sv.mag[u], maxabs[(u + 1) * s + v]) : sv.mag[u];

      // Sup-norm leaf. Its key is the empty sequence, hence lexicographically
      // smallest: ties go to the leaf.
      cell.value = maxabs[u * s + v];
      cell.pieces.clear();
      std::vector<int> best_key;

      auto consider = [&](const S& value, const std::vector<std::pair<int, int>>& cand) {
        if (cell.value < value) {
          cell.value = value;
          cell.pieces = cand;
          best_key = partition_key(cand, sv);
        } else if (value == cell.value && !cand.empty()) {
          std::vector<int> key = partition_key(cand, sv);
          if (!cell.pieces.empty() && key < best_key) {
            cell.pieces = cand;
            best_key = std::move(key);
          }
        }
      };

      // Partitions that keep a strictly later first support point are exactly
      // the candidates of the subinterval starting one point further right.
      if (u < v) {
        const DpCell<S>& tail = cells[(u + 1) * s + v];
        consider(tail.value, tail.pieces);
      }

      // Splits whose first piece starts at u: tile positions u..v with
      // n >= 2 consecutive runs, admissible when n <= t_u.
      const int run = static_cast<int>(len);
      if (run >= 2 && sv.index[u] >= 2) {
        const int slots = run - 1;
        for (std::uint32_t cuts = 1; cuts < (1u << slots); ++cuts) {
          const int n = std::popcount(cuts) + 1;
          if (n > sv.index[u]) continue;
          pieces.clear();
          piece_norms.clear();
          std::size_t start = u;
          for (int g = 0; g < run; ++g) {
            if (g == slots || (cuts & (1u << g))) {
              const std::size_t end = u + static_cast<std::size_t>(g);
              pieces.emplace_back(static_cast<int>(start), static_cast<int>(end));
              piece_norms.push_back(cells[start * s + end].value);
              start = end + 1;
            }
          }
          const S combined =
              gamma * ground_combine<S>(space.ground, std::span<const S>(piece_norms));
          consider(combined, pieces);
        }
      }
    }
  }

  out.value = cells[0 * s + (s - 1)].value;
  out.witness = build_witness(cells, sv, 0, s - 1);
  out.cache.support = sv.index;
  out.cache.table.assign(s * s, S(0));
  for (std::size_t u = 0; u < s; ++u)
    for (std::size_t v = u; v < s; ++v) out.cache.table[u * s + v] = cells[u * s + v].value;
  return out;
}

template <class S>
S ts_rhs_from_cache(const TsirelsonSpace& space, const Coeffs<S>& x0,
                    const IntervalNormCache<S>& cache) {
  require_plain(space, "ts_rhs_from_cache");
  const Coeffs<S> x = x0.abs();
  const SupportView<S> sv = make_support(x);
  const std::size_t s = sv.size();
  if (s == 0) return S(0);
  if (sv.index != cache.support)
    throw std::invalid_argument("ts_rhs_from_cache: cache was built for a different vector");

  const S gamma = from_rat<S>(space.gamma);
  S best = sv.mag[0];
  for (std::size_t i = 1; i < s; ++i) best = scalar_max(best, sv.mag[i]);

  std::vector<S> piece_norms;
  for (std::size_t j = 0; j + 2 <= s; ++j) {
    if (sv.index[j] < 2) continue;
    const int run = static_cast<int>(s - j);
    const int slots = run - 1;
    for (std::uint32_t cuts = 1; cuts < (1u << slots); ++cuts) {
      const int n = std::popcount(cuts) + 1;
      if (n > sv.index[j]) continue;
      piece_norms.clear();
      std::size_t start = j;
      for (int g = 0; g < run; ++g) {
        if (g == slots || (cuts & (1u << g))) {
          const std::size_t end = j + static_cast<std::size_t>(g);
          piece_norms.push_back(cache.norm_at(start, end));
          start = end + 1;
        }
      }
      const S cand = gamma * ground_combine<S>(space.ground, std::span<const S>(piece_norms));
      best = scalar_max(best, cand);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Reference oracle over arbitrary successive sets
// ---------------------------------------------------------------------------

namespace {

// One level update: cur[mask] = max(prev[mask], best admissible partition of
// any subset of mask into successive pieces, valued at level prev).
template <class S>
bool brute_level_update(const SupportView<S>& sv, const S& gamma, const GroundSpace& ground,
                        const std::vector<S>& prev, std::vector<S>& cur) {
  const std::size_t s = sv.size();
  const std::uint32_t full = (1u << s) - 1;
  bool changed = false;
  std::vector<int> bits;
  std::vector<S> piece_norms;

  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    S best = prev[mask];
    for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
      const int r = std::popcount(sub);
      if (r >= 2) {
        const int min_index = sv.index[std::countr_zero(sub)];
        if (min_index >= 2) {
          bits.clear();
          for (std::uint32_t rest = sub; rest; rest &= rest - 1)
            bits.push_back(std::countr_zero(rest));
          const int slots = r - 1;
          for (std::uint32_t cuts = 1; cuts < (1u << slots); ++cuts) {
            const int n = std::popcount(cuts) + 1;
            if (n > min_index) continue;
            piece_norms.clear();
            std::uint32_t piece = 0;
            for (int g = 0; g < r; ++g) {
              piece |= 1u << bits[g];
              if (g == slots || (cuts & (1u << g))) {
                piece_norms.push_back(prev[piece]);
                piece = 0;
              }
            }
            const S cand = gamma * ground_combine<S>(ground, std::span<const S>(piece_norms));
            if (best < cand) best = cand;
          }
        }
      }
      if (sub == 0) break;
    }
    cur[mask] = best;
    if (!(cur[mask] == prev[mask])) changed = true;
  }
  return changed;
}

template <class S>
std::vector<S> brute_level0(const SupportView<S>& sv) {
  const std::size_t s = sv.size();
  std::vector<S> table(std::size_t(1) << s, S(0));
  for (std::uint32_t mask = 1; mask < table.size(); ++mask)
    table[mask] = scalar_max(table[mask & (mask - 1)],
                             sv.mag[static_cast<std::size_t>(std::countr_zero(mask))]);
  return table;
}

template <class S>
SupportView<S> brute_support(const TsirelsonSpace& space, const Coeffs<S>& x0, std::size_t cap,
                             const char* who) {
  require_plain(space, who);
  if (cap > 20) throw std::invalid_argument(std::string(who) + ": cap above hard limit 20");
  const Coeffs<S> x = x0.abs();
  if (x.support_size() > cap)
    throw std::invalid_argument(std::string(who) + ": support size " +
                                std::to_string(x.support_size()) + " exceeds cap " +
                                std::to_string(cap));
  return make_support(x);
}

}  // namespace

template <class S>
S ts_norm_bruteforce(const TsirelsonSpace& space, const Coeffs<S>& x0, std::size_t cap) {
  const SupportView<S> sv = brute_support(space, x0, cap, "ts_norm_bruteforce");
  ++norm_eval_counter();
  const std::size_t s = sv.size();
  if (s == 0) return S(0);

  const S gamma = from_rat<S>(space.gamma);
  std::vector<S> prev = brute_level0(sv);
  std::vector<S> cur(prev.size(), S(0));

  // Pieces of any admissible partition are proper subsets, so the table
  // stabilizes after at most s+1 levels; the guard only catches bugs.
  std::size_t guard = 0;
  while (brute_level_update(sv, gamma, space.ground, prev, cur)) {
    prev.swap(cur);
    if (++guard > s + 2) throw std::logic_error("ts_norm_bruteforce: no stabilization");
  }
  return prev[(std::size_t(1) << s) - 1];
}

template <class S>
S ts_norm_level(const TsirelsonSpace& space, const Coeffs<S>& x0, int level, std::size_t cap) {
  if (level < 0) throw std::invalid_argument("ts_norm_level: level must be >= 0");
  const SupportView<S> sv = brute_support(space, x0, cap, "ts_norm_level");
  ++norm_eval_counter();
  const std::size_t s = sv.size();
  if (s == 0) return S(0);

  const S gamma = from_rat<S>(space.gamma);
  std::vector<S> prev = brute_level0(sv);
  std::vector<S> cur(prev.size(), S(0));
  for (int l = 0; l < level; ++l) {
    brute_level_update(sv, gamma, space.ground, prev, cur);
    prev.swap(cur);
  }
  return prev[(std::size_t(1) << s) - 1];
}

// ---------------------------------------------------------------------------
// Norm front end and convexification
// ---------------------------------------------------------------------------

template <class S>
S convexified_inner(int p, const Rat& gamma, const Coeffs<S>& x) {
  if (p < 1) throw std::invalid_argument("convexified_inner: p must be a positive integer");
  const TsirelsonSpace inner{GroundSpace::lp(1), rat_pow(gamma, p), std::nullopt};
  Coeffs<S> powered;
  for (const auto& [i, v] : x.entries()) {
    S mag = scalar_abs(v);
    if constexpr (std::is_same_v<S, Rat>)
      powered.set(i, rat_pow(mag, p));
    else
      powered.set(i, std::pow(mag, static_cast<double>(p)));
  }
  return ts_norm_dp(inner, powered).value;
}

double convexified_norm(int p, const Rat& gamma, const CoeffsQ& x) {
  const Rat inner = convexified_inner<Rat>(p, gamma, x);
  if (p == 1) return to_double(inner);
  return std::pow(to_double(inner), 1.0 / p);
}

double convexified_norm(int p, const Rat& gamma, const CoeffsD& x) {
  const double inner = convexified_inner<double>(p, gamma, x);
  if (p == 1) return inner;
  return std::pow(inner, 1.0 / p);
}

template <class S>
S ts_norm(const TsirelsonSpace& space, const Coeffs<S>& x) {
  space.validate();
  if (space.convexify_p) {
    const int p = *space.convexify_p;
    if (p == 1) {
      const TsirelsonSpace plain{space.ground, space.gamma, std::nullopt};
      return ts_norm_dp(plain, x).value;
    }
    if constexpr (std::is_same_v<S, Rat>)
      throw ExactUnsupported("p-convexified norm takes a p-th root; use float mode");
    else
      return convexified_norm(p, space.gamma, x);
  }
  return ts_norm_dp(space, x).value;
}

template TsEvaluation<Rat> ts_norm_dp<Rat>(const TsirelsonSpace&, const Coeffs<Rat>&);
template TsEvaluation<double> ts_norm_dp<double>(const TsirelsonSpace&, const Coeffs<double>&);
template Rat ts_rhs_from_cache<Rat>(const TsirelsonSpace&, const Coeffs<Rat>&,
                                    const IntervalNormCache<Rat>&);
template double ts_rhs_from_cache<double>(const TsirelsonSpace&, const Coeffs<double>&,
                                          const IntervalNormCache<double>&);
template Rat ts_norm_bruteforce<Rat>(const TsirelsonSpace&, const Coeffs<Rat>&, std::size_t);
template double ts_norm_bruteforce<double>(const TsirelsonSpace&, const Coeffs<double>&,
                                           std::size_t);
template Rat ts_norm_level<Rat>(const TsirelsonSpace&, const Coeffs<Rat>&, int, std::size_t);
template double ts_norm_level<double>(const TsirelsonSpace&, const Coeffs<double>&, int,
                                      std::size_t);
template Rat ts_norm<Rat>(const TsirelsonSpace&, const Coeffs<Rat>&);
template double ts_norm<double>(const TsirelsonSpace&, const Coeffs<double>&);
template Rat convexified_inner<Rat>(int, const Rat&, const Coeffs<Rat>&);
template double convexified_inner<double>(int, const Rat&, const Coeffs<double>&);

}  // namespace tsnorm
