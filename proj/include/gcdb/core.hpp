#pragma once

// gcd_b and the b-visibility predicate on the positive lattice.
//
// gcd_b(r,s) = max{ k : k | r and k^b | s }.  Every admissible k divides
// gcd(r,s), so we factor that gcd and take min(v_q(r), v_q(s)/b) per prime
// q; nothing here ever enumerates candidates up to r.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "gcdb/factor.hpp"

namespace gcdb {

struct LatticePoint {
  int64_t r = 0;
  int64_t s = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

// base^exp, or nullopt as soon as the product exceeds cap.
inline std::optional<int64_t> checked_pow(int64_t base, int exp, int64_t cap) {
  if (base < 0 || exp < 0) throw std::invalid_argument("checked_pow: nonnegative inputs");
  int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return std::nullopt;
    out *= base;
    if (out > cap) return std::nullopt;
  }
  return out;
}

namespace detail {

inline void check_gcd_b_args(int64_t r, int64_t s, int b) {
  if (r < 1 || s < 1)
    throw std::domain_error("gcd_b: coordinates must be positive");
  if (b < 1) throw std::domain_error("gcd_b: exponent must be >= 1");
}

template <class FactorFn>
int64_t gcd_b_from_factors(int64_t r, int64_t s, int b, FactorFn&& primes_of_gcd) {
  const int64_t g = std::gcd(r, s);
  if (g == 1 || b == 1) return g;
  int64_t out = 1;
  primes_of_gcd(g, [&](int64_t q) {
    int vr = 0;
    for (int64_t t = r; t % q == 0; t /= q) ++vr;
    int vs = 0;
    for (int64_t t = s; t % q == 0; t /= q) ++vs;
    const int e = std::min(vr, vs / b);
    for (int i = 0; i < e; ++i) out *= q;
  });
  return out;
}

}  // namespace detail

inline int64_t gcd_b(int64_t r, int64_t s, int b) {
  detail::check_gcd_b_args(r, s, b);
  return detail::gcd_b_from_factors(r, s, b, [](int64_t g, auto&& fn) {
    for (auto [q, e] : factorize_u64(static_cast<uint64_t>(g))) fn(static_cast<int64_t>(q));
  });
}

// Same computation with the gcd factored through a precomputed SPF table;
// requires gcd(r,s) <= spf.size().  This is the inner loop of window scans.
inline int64_t gcd_b_with_spf(int64_t r, int64_t s, int b, const SpfTable& spf) {
  detail::check_gcd_b_args(r, s, b);
  return detail::gcd_b_from_factors(r, s, b, [&spf](int64_t g, auto&& fn) {
    while (g > 1) {
      const int64_t q = spf.spf(g);
      fn(q);
      while (g % q == 0) g /= q;
    }
  });
}

inline int64_t gcd_b(const LatticePoint& p, int b) { return gcd_b(p.r, p.s, b); }

inline bool is_b_visible(int64_t r, int64_t s, int b) { return gcd_b(r, s, b) == 1; }

inline bool is_b_visible(const LatticePoint& p, int b) { return is_b_visible(p.r, p.s, b); }

}  // namespace gcdb
