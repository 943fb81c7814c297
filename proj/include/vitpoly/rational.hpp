#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vitpoly {

// All probability and weight arithmetic in this library is exact. Logs are
// never taken numerically; the linear (weight) model is a first-class
// representation rather than a float transform of the probabilistic one.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

using RVec = std::vector<Rational>;
using RMat = std::vector<std::vector<Rational>>;

// Parses "p/q" or "p" (optionally signed). Throws on malformed input or q = 0.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&] { throw std::invalid_argument("bad rational: '" + text + "'"); };
  if (text.empty()) bad();
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rational(0);  // unreachable
}

// Canonical "p/q" form; plain "p" when the denominator is 1.
inline std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q = n / d;
  if ((n % d) != 0 && ((n < 0) != (d < 0))) --q;
  return q;
}

inline BigInt rational_floor(const Rational& r) {
  return floor_div(numerator(r), denominator(r));
}

// Nearest grid point m/denominator (half-up). Used to keep witness-search
// iterates on a bounded-denominator grid before exact verification.
inline Rational snap_to_grid(const Rational& x, long long denominator = 1000000) {
  Rational scaled = x * denominator;
  BigInt m = rational_floor(scaled + Rational(1, 2));
  return Rational(m, BigInt(denominator));
}

// FNV-1a over a list of integers; seeds the per-entry search RNG so parallel
// and serial classification runs agree.
inline std::uint64_t fnv1a(const std::vector<long long>& xs) {
  std::uint64_t h = 1469598103934665603ull;
  for (long long v : xs) {
    auto u = static_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace vitpoly
