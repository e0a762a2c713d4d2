#pragma once

#include <memory>
#include <string>

#include "tsnorm/coeffs.hpp"
#include "tsnorm/ground.hpp"
#include "tsnorm/search.hpp"
#include "tsnorm/tsirelson.hpp"
#include "tsnorm/zv.hpp"

namespace tsnorm {

enum class SpaceKind { ground, tsirelson, zv, dual };

// Declarative norm oracle: a composable space descriptor. Norm evaluation is
// pure; descriptors are immutable and freely shared.
struct Space {
  SpaceKind kind = SpaceKind::ground;

  GroundSpace ground;    // kind == ground
  TsirelsonSpace ts;     // kind == tsirelson
  FddSpec fdd;           // kind == zv
  SpacePtr dual_inner;   // kind == dual
  SearchConfig dual_cfg; // search knobs for estimated dual norms

  static SpacePtr make_ground(GroundSpace g);
  static SpacePtr make_tsirelson(TsirelsonSpace t);
  static SpacePtr make_zv(FddSpec spec);
  static SpacePtr make_dual(SpacePtr inner, SearchConfig cfg = {});

  void validate() const;
  std::string to_string() const;

  // True when the norm is rational-valued and computed exactly on rational
  // input (lp(1), c0, Tsirelson over those, Z_V compositions of those, and
  // closed-form duals).
  bool exact_capable() const;
};

template <class S>
S space_norm(const Space& space, const Coeffs<S>& x);

template <class S>
S space_norm(const SpacePtr& space, const Coeffs<S>& x);

}  // namespace tsnorm
