#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tsnorm/coeffs.hpp"
#include "tsnorm/search.hpp"

namespace tsnorm {

struct Space;
using SpacePtr = std::shared_ptr<const Space>;

inline constexpr int kZvEnumCap = 16;  // 2^15 interval blockings

// A finite FDD specification: consecutive scalar coordinates grouped into
// blocks E_1..E_k of the given dimensions, a base norm (the Z), and an outer
// space (the V). The Z_V norm of z maximizes
//   || sum_j ||P_{(n_{j-1}, n_j]} z||_Z * v_j ||_V
// over cut sequences 0 = n_0 < n_1 < ... < n_k of the blocks.
struct FddSpec {
  std::vector<int> block_dims;
  SpacePtr base;
  SpacePtr v;

  int blocks() const { return static_cast<int>(block_dims.size()); }
  int dim() const;
  // 1-based inclusive coordinate range of blocks m..n.
  std::pair<int, int> coord_range(int m, int n) const;

  void validate() const;
  std::string to_string() const;
};

// Zeroes all coordinates outside blocks m..n.
template <class S>
Coeffs<S> block_projection(const FddSpec& spec, const Coeffs<S>& z, int m, int n);

template <class S>
struct ZvEvaluation {
  S value{};
  std::vector<int> cuts;  // n_1 < ... < n_k (n_0 = 0 implicit)
};

// Exhaustive enumeration of the cut sequences up to enum_cap blocks, with the
// lexicographically smallest maximizing cut sequence as witness; beyond the
// cap a segment DP handles V = lp (p-th powers add across the outer sum).
template <class S>
ZvEvaluation<S> zv_norm(const FddSpec& spec, const Coeffs<S>& z, int enum_cap = kZvEnumCap);

// Value of one explicit cut sequence 0 = n_0 < cuts[0] < ... < cuts[k-1];
// the norm is the max of this over all cut sequences.
template <class S>
S zv_partition_value(const FddSpec& spec, const Coeffs<S>& z, const std::vector<int>& cuts);

// Sampled lower estimate of sup_{m<=n} ||P_{[m,n]}|| in the Z_V norm:
// stratified random vectors plus coordinate-ascent polishing. A certified
// lower bound on the projection constant, never an upper bound.
struct ProjectionEstimate {
  double value = 0.0;
  CoeffsD witness;
  int best_m = 0, best_n = 0;
  std::uint64_t work = 0;
};
ProjectionEstimate projection_constant_estimate(const FddSpec& spec, const SearchConfig& cfg);

}  // namespace tsnorm
