#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace tsnorm {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Thrown when a value is requested in exact arithmetic but the computation
// leaves the rationals (roots, non-integer powers, search-based duals).
struct ExactUnsupported : std::runtime_error {
  explicit ExactUnsupported(const std::string& what) : std::runtime_error(what) {}
};

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

std::string rat_to_string(const Rat& r);

// Accepts "a/b", plain integers and decimal literals ("-3/4", "2", "0.25").
Rat parse_rational(const std::string& text);

// Smallest integer >= r.
BigInt rat_ceil(const Rat& r);

Rat rat_pow(const Rat& base, int exponent);

// --- scalar helpers shared by the Rat / double instantiations ---

template <class S>
inline S scalar_abs(const S& v) {
  return v < S(0) ? S(-v) : v;
}

template <class S>
inline const S& scalar_max(const S& a, const S& b) {
  return a < b ? b : a;
}

inline double scalar_from_rat(const Rat& r, double) { return to_double(r); }
inline const Rat& scalar_from_rat(const Rat& r, const Rat&) { return r; }

// Converts a rational constant to the scalar type in use.
template <class S>
inline S from_rat(const Rat& r) {
  return S(scalar_from_rat(r, S()));
}

inline double scalar_to_double(double v) { return v; }
inline double scalar_to_double(const Rat& v) { return to_double(v); }

}  // namespace tsnorm
