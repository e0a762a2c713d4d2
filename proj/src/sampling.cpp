#include "tsnorm/sampling.hpp"

#include <algorithm>
#include <bit>

#include "tsnorm/search.hpp"

namespace tsnorm {

Rat sample_entry(Rng& rng, int grid_levels) {
  if (rng.coin()) return rng.coin() ? Rat(1) : Rat(-1);
  const long den = 1L << grid_levels;
  long num = 0;
  while (num == 0) num = rng.uniform_int(static_cast<int>(-den), static_cast<int>(den));
  return Rat(num, den);
}

CoeffsQ sample_vector(Rng& rng, int lo, int hi, int max_support, int grid_levels) {
  const int span = hi - lo + 1;
  const int size = rng.uniform_int(1, std::min(max_support, span));
  std::vector<int> positions;
  while (static_cast<int>(positions.size()) < size) {
    int i = rng.uniform_int(lo, hi);
    if (std::find(positions.begin(), positions.end(), i) == positions.end())
      positions.push_back(i);
  }
  std::sort(positions.begin(), positions.end());
  CoeffsQ x;
  for (int i : positions) x.set(i, sample_entry(rng, grid_levels));
  return x;
}

CoeffsQ sample_interval_vector(Rng& rng, int min_start, int max_width, int grid_levels) {
  const int width = rng.uniform_int(1, max_width);
  const int start = min_start + rng.uniform_int(0, 3);
  CoeffsQ x;
  bool nonzero = false;
  for (int i = start; i < start + width; ++i) {
    if (width > 1 && rng.uniform() < 0.2) continue;  // occasional hole
    x.set(i, sample_entry(rng, grid_levels));
    nonzero = true;
  }
  if (!nonzero) x.set(start, sample_entry(rng, grid_levels));
  return x;
}

std::vector<CoeffsQ> sample_block_sequence(Rng& rng, int count, int min_start,
                                           int max_piece_width, int max_gap, int grid_levels) {
  std::vector<CoeffsQ> pieces;
  int next_start = min_start;
  for (int j = 0; j < count; ++j) {
    const int width = rng.uniform_int(1, max_piece_width);
    CoeffsQ piece;
    bool nonzero = false;
    for (int i = next_start; i < next_start + width; ++i) {
      if (width > 1 && rng.uniform() < 0.2) continue;
      piece.set(i, sample_entry(rng, grid_levels));
      nonzero = true;
    }
    if (!nonzero) piece.set(next_start, sample_entry(rng, grid_levels));
    pieces.push_back(piece);
    next_start = piece.max_support() + 1 + rng.uniform_int(0, max_gap);
  }
  return pieces;
}

namespace {
template <class S>
std::string describe_impl(const Coeffs<S>& x, std::string (*fmt)(const S&)) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [i, v] : x.entries()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i) + ':' + fmt(v);
  }
  return out;
}
}  // namespace

std::string describe_vector(const CoeffsQ& x) {
  return describe_impl<Rat>(x, +[](const Rat& v) { return rat_to_string(v); });
}

std::string describe_vector(const CoeffsD& x) {
  return describe_impl<double>(x, +[](const double& v) { return format_double(v); });
}

void for_each_sign_vector(int range, int max_size, const std::function<void(const CoeffsQ&)>& fn) {
  if (range < 1 || range > 20) throw std::invalid_argument("for_each_sign_vector: bad range");
  const std::uint32_t full = (1u << range) - 1;
  std::vector<int> positions;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int size = std::popcount(mask);
    if (max_size > 0 && size > max_size) continue;
    positions.clear();
    for (std::uint32_t rest = mask; rest; rest &= rest - 1)
      positions.push_back(std::countr_zero(rest) + 1);
    for (std::uint32_t signs = 0; signs < (1u << size); ++signs) {
      CoeffsQ x;
      for (int k = 0; k < size; ++k)
        x.set(positions[static_cast<std::size_t>(k)], (signs >> k) & 1 ? Rat(-1) : Rat(1));
      fn(x);
    }
  }
}

}  // namespace tsnorm
