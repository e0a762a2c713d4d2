#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsnorm/coeffs.hpp"
#include "tsnorm/ground.hpp"
#include "tsnorm/rational.hpp"

namespace tsnorm {

inline constexpr std::size_t kBruteForceCap = 10;

// T(V, gamma): the completion of c00 under the fixed point of
//   ||x|| = ||x||_inf  v  sup          gamma * || sum_i ||P_{A_i} x|| v_i ||_V
//                         n>=2, n<=A_1<...<A_n
// over successive finite sets A_i with n <= min A_1. When
// convexify_p = p is set the space is the p-convexification of
// T(l1, gamma^p): the ground must be lp(1) and the norm is
// ( || (|x_i|^p) ||_{T(l1, gamma^p)} )^{1/p}.
struct TsirelsonSpace {
  GroundSpace ground;
  Rat gamma;
  std::optional<int> convexify_p;

  static TsirelsonSpace make(GroundSpace g, Rat gamma_value,
                             std::optional<int> convexify = std::nullopt);

  bool exact_capable() const;
  void validate() const;
  std::string to_string() const;
};

// One node of a witness partition tree: the coordinate interval it covers,
// the norm of the restriction, and the chosen pieces (empty = the sup-norm
// term of the fixed-point equation was maximal).
template <class S>
struct PartitionNode {
  int lo = 0;
  int hi = 0;
  S value{};
  std::vector<PartitionNode<S>> pieces;
};

// Per-vector memo of interval norms: norm_at(u, v) is the T(V,gamma)-norm of
// x restricted to [support[u], support[v]]. Valid only for the vector it was
// built from.
template <class S>
struct IntervalNormCache {
  std::vector<int> support;
  std::vector<S> table;  // packed u * support.size() + v, u <= v

  const S& norm_at(std::size_t u, std::size_t v) const { return table[u * support.size() + v]; }
};

template <class S>
struct TsEvaluation {
  S value{};
  PartitionNode<S> witness;
  IntervalNormCache<S> cache;
};

// Memoized interval dynamic program solving the fixed-point equation.
// The witness is the lexicographically smallest maximizing partition
// (pieces compared by their coordinate boundary sequence; the sup-norm leaf
// counts as smallest). Requires convexify_p unset.
template <class S>
TsEvaluation<S> ts_norm_dp(const TsirelsonSpace& space, const Coeffs<S>& x);

// The norm. Dispatches to the interval DP, or through the exact
// convexification route when convexify_p is set.
template <class S>
S ts_norm(const TsirelsonSpace& space, const Coeffs<S>& x);

// Literal level recursion: level 0 is the sup norm, level l+1 maximizes over
// admissible partitions with level-l piece norms. Secondary oracle; subject
// to the brute-force support cap. Requires convexify_p unset, level >= 0.
template <class S>
S ts_norm_level(const TsirelsonSpace& space, const Coeffs<S>& x, int level,
                std::size_t cap = kBruteForceCap);

// Reference oracle: exhausts admissible partitions into arbitrary successive
// finite sets (not just intervals) and iterates levels to the fixed point.
template <class S>
S ts_norm_bruteforce(const TsirelsonSpace& space, const Coeffs<S>& x,
                     std::size_t cap = kBruteForceCap);

// Right-hand side of the fixed-point equation re-evaluated from cached
// interval norms; must reproduce the computed norm.
template <class S>
S ts_rhs_from_cache(const TsirelsonSpace& space, const Coeffs<S>& x,
                    const IntervalNormCache<S>& cache);

// || (|x_i|^p) ||_{T(l1, gamma^p)} — the exact inner value of the
// p-convexification, before the final root.
template <class S>
S convexified_inner(int p, const Rat& gamma, const Coeffs<S>& x);

// ( inner )^{1/p}; the root is taken in floating point at the last step.
double convexified_norm(int p, const Rat& gamma, const CoeffsQ& x);
double convexified_norm(int p, const Rat& gamma, const CoeffsD& x);

}  // namespace tsnorm
