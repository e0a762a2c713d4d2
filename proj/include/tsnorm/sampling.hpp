#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tsnorm/coeffs.hpp"
#include "tsnorm/rng.hpp"

namespace tsnorm {

// Entry distribution used everywhere: fair coin between a unit sign (signs
// are extremal for unconditional norms) and a nonzero dyadic k / 2^grid.
Rat sample_entry(Rng& rng, int grid_levels);

// Random vector with 1..max_support support points inside [lo, hi].
CoeffsQ sample_vector(Rng& rng, int lo, int hi, int max_support, int grid_levels);

// Random vector whose support sits in one interval of width <= max_width
// starting at >= min_start.
CoeffsQ sample_interval_vector(Rng& rng, int min_start, int max_width, int grid_levels);

// Successive-support family: count vectors, first support point >= min_start,
// pieces at most max_piece_width wide with gaps up to max_gap in between.
std::vector<CoeffsQ> sample_block_sequence(Rng& rng, int count, int min_start,
                                           int max_piece_width, int max_gap, int grid_levels);

// "i:v" pairs, for witnesses in reports.
std::string describe_vector(const CoeffsQ& x);
std::string describe_vector(const CoeffsD& x);

// Visits every +-1 vector with nonempty support inside [1..range] and
// support size <= max_size (bounded enumeration: 3^range cases at most).
void for_each_sign_vector(int range, int max_size, const std::function<void(const CoeffsQ&)>& fn);

}  // namespace tsnorm
