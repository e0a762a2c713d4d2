#pragma once

#include <span>
#include <string>

#include "tsnorm/coeffs.hpp"
#include "tsnorm/rational.hpp"
#include "tsnorm/search.hpp"

namespace tsnorm {

// A 1-subsymmetric ground space: lp with 1 <= p < infinity, or c0 (the sup
// norm; p = infinity is always expressed through the c0 tag, never as a
// number).
struct GroundSpace {
  enum class Kind { lp, c0 };

  Kind kind = Kind::lp;
  Rat p = 1;  // meaningful for lp only

  static GroundSpace lp(Rat p_value);
  static GroundSpace c0();

  bool is_c0() const { return kind == Kind::c0; }
  bool is_lp(const Rat& p_value) const { return kind == Kind::lp && p == p_value; }

  // Exact evaluation stays inside the rationals only for lp(1) and c0.
  bool exact_capable() const { return is_c0() || p == 1; }

  void validate() const;
  std::string to_string() const;

  bool operator==(const GroundSpace&) const = default;
};

// || sum_i values[i] * e_i || for nonnegative values; the workhorse for the
// outer norms in the Tsirelson and Z_V recursions.
template <class S>
S ground_combine(const GroundSpace& space, std::span<const S> values);

template <class S>
S eval_ground_norm(const GroundSpace& space, const Coeffs<S>& x);

// lp(p) -> lp(p') with 1/p + 1/p' = 1; lp(1) -> c0; c0 -> lp(1).
GroundSpace dual_ground(const GroundSpace& space);

// Property check for the standing assumptions: norm invariance under sign
// flips and under spreading to strictly higher indices, plus normalized
// coordinate vectors. Exact for lp(1)/c0, within tolerance otherwise.
CheckReport check_subsymmetry(const GroundSpace& space, const SearchConfig& cfg);

}  // namespace tsnorm
