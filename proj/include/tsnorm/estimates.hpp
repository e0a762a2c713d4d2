#pragma once

#include <optional>

#include "tsnorm/coeffs.hpp"
#include "tsnorm/ground.hpp"
#include "tsnorm/search.hpp"
#include "tsnorm/space.hpp"
#include "tsnorm/tsirelson.hpp"
#include "tsnorm/zv.hpp"

namespace tsnorm {

// Backward shift by m coordinates: output entry at i is the input entry at
// i + m; entries at indices <= m are discarded. Requires m >= 1.
template <class S>
Coeffs<S> shift(const Coeffs<S>& x, int m);

// One shift-bound configuration: for gamma < 1/4 and m < n,
//   ||S^m x|| >= (1 - delta) ||x||   whenever n <= min supp(x),
// where delta = (m / (n - m)) * 1 / (1 - 4 gamma) is the closed-form limit of
// the geometric series (never a truncated partial sum). delta = 1 is allowed
// and makes the bound vacuous.
struct ShiftBoundCase {
  Rat gamma;
  int m = 1;
  int n = 2;

  Rat delta() const;
  void validate() const;
};

CheckReport check_shift_bound(const TsirelsonSpace& space, const ShiftBoundCase& scase,
                              const SearchConfig& cfg);

// Search-certified lower bound on the smallest C with
// ||sum a_i e_i||_A <= C ||sum a_i f_i||_B; sign-pattern enumeration for
// small dimension, stratified sampling plus coordinate ascent above that.
struct DominationReport {
  double constant_estimate = 0.0;
  CoeffsD witness;
  int samples_used = 0;
  bool pass = true;
  std::optional<double> bound;  // the asserted "at most" bound, if any
  std::uint64_t seed = 0;
  std::uint64_t work = 0;
};

DominationReport domination_constant(const Space& norm_a, const Space& norm_b, int dim,
                                     const SearchConfig& cfg,
                                     std::optional<double> assert_at_most = std::nullopt);

// Asymptotic estimates: block sequences (x_1..x_k), k <= max_len, with
// min supp(x_1) >= k, normalized in the space norm. Lower asserts
// ||sum x_i|| >= C^{-1} || sum ||x_i|| v_i ||_V; upper is the mirror with <=.
CheckReport check_asymptotic_lower(const Space& space, const GroundSpace& v, int max_len,
                                   double C, const SearchConfig& cfg);
CheckReport check_asymptotic_upper(const Space& space, const GroundSpace& u, int max_len,
                                   double C, const SearchConfig& cfg);

// (SRS) with c = 1: right shifts never lower the norm. Exhaustive over all
// +-1 vectors with support inside [1..support_range] and shifts <= max_shift;
// exact when the space is.
CheckReport check_srs(const TsirelsonSpace& space, const SearchConfig& cfg,
                      int support_range = 6, int max_shift = 4);

// (WLS): computes the constructive threshold L(m) — the smallest L >= m with
// (m / (L + 1 - m)) / (1 - 4 gamma) <= 1 - d — then samples vectors supported
// above L and asserts ||backshift by k|| >= d ||x|| for every k <= m.
CheckReport check_wls(const TsirelsonSpace& space, const Rat& d, int m, const SearchConfig& cfg);
long wls_threshold(const Rat& gamma, const Rat& d, int m);

// K-domination of the T(V, gamma') basis by a source basis satisfying
// asymptotic C-V-lower estimates: K ||a||_source >= ||a||_target whenever
// gamma' <= 1/(KC).
CheckReport check_prop43(const TsirelsonSpace& target, const Space& source, double C, double K,
                         const SearchConfig& cfg);

// sup{ <f, x> : ||x|| <= 1, supp x within [1..dim] }, search-estimated from
// the aligned-sign orthant; closed form for ground spaces. Certified lower
// bound in the search case.
double dual_norm_estimate(const Space& space, const CoeffsD& functional, int dim,
                          const SearchConfig& cfg);

// Finite-scale duality smoke test: if sampled primal block sequences of the
// composite satisfy the C-lower estimate against V, sampled dual-functional
// block sequences must satisfy the C-upper estimate against the dual of V,
// within a 10% slack (dual norms are themselves estimates).
CheckReport check_duality_prop13(const FddSpec& spec, const GroundSpace& v, double C,
                                 const SearchConfig& cfg);

}  // namespace tsnorm
