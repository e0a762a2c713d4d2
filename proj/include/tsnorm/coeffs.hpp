#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tsnorm/rational.hpp"

namespace tsnorm {

// A finitely supported scalar sequence indexed from 1. Canonical form:
// entries sorted by index, no stored zeros.
template <class S>
class Coeffs {
 public:
  using Entry = std::pair<int, S>;

  Coeffs() = default;

  static Coeffs unit(int index) {
    Coeffs c;
    c.set(index, S(1));
    return c;
  }

  void set(int index, const S& value) {
    if (index < 1) throw std::invalid_argument("coefficient index must be >= 1");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, int i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) {
      if (value == S(0))
        entries_.erase(it);
      else
        it->second = value;
    } else if (value != S(0)) {
      entries_.insert(it, {index, value});
    }
  }

  S at(int index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, int i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) return it->second;
    return S(0);
  }

  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  int min_support() const {
    require_nonempty();
    return entries_.front().first;
  }
  int max_support() const {
    require_nonempty();
    return entries_.back().first;
  }

  const std::vector<Entry>& entries() const { return entries_; }

  // Restriction to the inclusive index interval [lo, hi].
  Coeffs restricted(int lo, int hi) const {
    Coeffs out;
    for (const auto& [i, v] : entries_)
      if (lo <= i && i <= hi) out.entries_.push_back({i, v});
    return out;
  }

  Coeffs abs() const {
    Coeffs out = *this;
    for (auto& [i, v] : out.entries_)
      if (v < S(0)) v = -v;
    return out;
  }

  Coeffs scaled(const S& factor) const {
    Coeffs out;
    if (factor == S(0)) return out;
    out.entries_ = entries_;
    for (auto& [i, v] : out.entries_) v = v * factor;
    return out;
  }

  // Backward shift by m: output entry at i is the input entry at i + m;
  // input entries at indices <= m fall off.
  Coeffs shifted_back(int m) const {
    if (m < 0) throw std::invalid_argument("shift amount must be >= 0");
    Coeffs out;
    for (const auto& [i, v] : entries_)
      if (i - m >= 1) out.entries_.push_back({i - m, v});
    return out;
  }

  Coeffs shifted_forward(int m) const {
    if (m < 0) throw std::invalid_argument("shift amount must be >= 0");
    Coeffs out;
    for (const auto& [i, v] : entries_) out.entries_.push_back({i + m, v});
    return out;
  }

  // Moves the k-th support point onto targets[k]; targets must be strictly
  // increasing with the same length as the support.
  Coeffs spread(std::span<const int> targets) const {
    if (targets.size() != entries_.size())
      throw std::invalid_argument("spread: target count != support size");
    Coeffs out;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (targets[k] < 1 || (k > 0 && targets[k] <= targets[k - 1]))
        throw std::invalid_argument("spread: targets must be strictly increasing, >= 1");
      out.entries_.push_back({targets[k], entries_[k].second});
    }
    return out;
  }

  Coeffs plus(const Coeffs& other) const {
    Coeffs out;
    std::size_t a = 0, b = 0;
    while (a < entries_.size() || b < other.entries_.size()) {
      if (b == other.entries_.size() ||
          (a < entries_.size() && entries_[a].first < other.entries_[b].first)) {
        out.entries_.push_back(entries_[a++]);
      } else if (a == entries_.size() || other.entries_[b].first < entries_[a].first) {
        out.entries_.push_back(other.entries_[b++]);
      } else {
        S sum = entries_[a].second + other.entries_[b].second;
        if (sum != S(0)) out.entries_.push_back({entries_[a].first, sum});
        ++a, ++b;
      }
    }
    return out;
  }

  bool operator==(const Coeffs& other) const { return entries_ == other.entries_; }

 private:
  void require_nonempty() const {
    if (entries_.empty()) throw std::logic_error("empty coefficient vector has no support");
  }

  std::vector<Entry> entries_;
};

using CoeffsQ = Coeffs<Rat>;
using CoeffsD = Coeffs<double>;

inline CoeffsD to_double(const CoeffsQ& x) {
  CoeffsD out;
  for (const auto& [i, v] : x.entries()) out.set(i, to_double(v));
  return out;
}

template <class S>
inline Coeffs<S> coeffs_from_rat(const CoeffsQ& x) {
  Coeffs<S> out;
  for (const auto& [i, v] : x.entries()) out.set(i, from_rat<S>(v));
  return out;
}

}  // namespace tsnorm
