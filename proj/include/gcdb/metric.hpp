#pragma once

// The gcd_b norm on the lattice extended by the origin, b-curves of vision,
// the d_b metric, and averages of bounded point functions over the spheres
// S_k^b = { A : ||A||_b = k }.

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "gcdb/lattice_stats.hpp"

namespace gcdb {

struct ExtendedPoint {
  int64_t r = 0;
  int64_t s = 0;
  bool is_origin() const { return r == 0 && s == 0; }
  friend bool operator==(const ExtendedPoint&, const ExtendedPoint&) = default;
};

namespace detail {
inline void check_extended(const ExtendedPoint& a) {
  if (!a.is_origin() && (a.r < 1 || a.s < 1))
    throw std::domain_error("ExtendedPoint: origin or positive coordinates");
}
}  // namespace detail

inline int64_t norm_b(const ExtendedPoint& a, int b) {
  detail::check_extended(a);
  return a.is_origin() ? 0 : gcd_b(a.r, a.s, b);
}

// Exact rational comparison of the normalized base points (r/k, s/k^b),
// done by cross-multiplication in 128-bit.
inline bool same_b_curve(const LatticePoint& a, const LatticePoint& c, int b) {
  const int64_t na = gcd_b(a.r, a.s, b);
  const int64_t nc = gcd_b(c.r, c.s, b);
  const auto pna = checked_pow(na, b, a.s);  // k^b divides s, so it fits
  const auto pnc = checked_pow(nc, b, c.s);
  using I128 = __int128;
  return static_cast<I128>(a.r) * nc == static_cast<I128>(c.r) * na &&
         static_cast<I128>(a.s) * *pnc == static_cast<I128>(c.s) * *pna;
}

inline int64_t d_b(const ExtendedPoint& a, const ExtendedPoint& c, int b) {
  detail::check_extended(a);
  detail::check_extended(c);
  if (a == c) return 0;
  const int64_t na = norm_b(a, b);
  const int64_t nc = norm_b(c, b);
  if (!a.is_origin() && !c.is_origin() && same_b_curve({a.r, a.s}, {c.r, c.s}, b))
    return na > nc ? na - nc : nc - na;
  return na + nc;
}

// Enumerates T_{N,b,k} as (k*a, k^b*c) over the quotient rectangle with
// gcd_b(a,c) = 1; visits points in row-major (a, then c) order.
template <class Fn>
void for_each_sphere_point(int b, int64_t k, int64_t n, const SpfTable& spf, Fn&& fn) {
  if (k < 1) throw std::invalid_argument("for_each_sphere_point: k >= 1 required");
  const auto kb = checked_pow(k, b, n);
  if (!kb) return;
  const int64_t a_max = n / k;
  const int64_t c_max = n / *kb;
  for (int64_t a = 1; a <= a_max; ++a)
    for (int64_t c = 1; c <= c_max; ++c)
      if (gcd_b_with_spf(a, c, b, spf) == 1) fn(LatticePoint{k * a, *kb * c});
}

struct SphereAverage {
  int64_t k = 0;
  int64_t sample_size = 0;
  std::optional<double> mean;  // empty when the window sample is too small
};

inline constexpr int64_t kMinSphereSample = 30;

namespace detail {
inline void check_sphere_args(int b, int64_t n) {
  if (b < 1 || n < 1) throw std::invalid_argument("sphere scan: b, N >= 1 required");
}
}  // namespace detail

// Average of a bounded point function over the sphere gcd_b = k inside T_N.
// Below kMinSphereSample lattice points the result is an explicit
// insufficient-sample report, not a number.
template <class Lambda>
SphereAverage sphere_average(Lambda&& fn, int b, int64_t k, int64_t n) {
  detail::check_sphere_args(b, n);
  const SpfTable spf(std::max<int64_t>(n, 1));
  CompensatedSum acc;
  int64_t count = 0;
  for_each_sphere_point(b, k, n, spf, [&](LatticePoint p) {
    acc.add(static_cast<double>(fn(p)));
    ++count;
  });
  SphereAverage out;
  out.k = k;
  out.sample_size = count;
  if (count >= kMinSphereSample) out.mean = acc.value() / static_cast<double>(count);
  return out;
}

struct ZetaLambdaEstimate {
  double value = 0;          // sum of sphere means / k^(b+1), k <= K, usable spheres
  double tail_bound = 0;     // C * integral tail of zeta(b+1) beyond K
  double dropped_bound = 0;  // C/k^(b+1) added for each insufficient sphere
  double direct_check = 0;   // zeta(b+1) * window mean of Lambda
  int64_t spheres_used = 0;
};

// Truncated sphere-decomposition of the window mean of a bounded Lambda.
// Spheres with too few window points are dropped and widen the error bound
// by C/k^(b+1) each; the direct window mean times zeta(b+1) rides along as a
// consistency check.
template <class Lambda>
ZetaLambdaEstimate zeta_lambda_estimate(Lambda&& fn, int b, int64_t n, int64_t trunc_k,
                                        double bound_c, int workers = 1) {
  detail::check_sphere_args(b, n);
  if (trunc_k < 1) throw std::invalid_argument("zeta_lambda_estimate: K >= 1 required");
  const SpfTable spf(n);
  ZetaLambdaEstimate out;
  CompensatedSum acc, dropped;
  for (int64_t k = 1; k <= trunc_k; ++k) {
    CompensatedSum sphere;
    int64_t count = 0;
    for_each_sphere_point(b, k, n, spf, [&](LatticePoint p) {
      sphere.add(static_cast<double>(fn(p)));
      ++count;
    });
    const double weight = std::pow(static_cast<double>(k), -(static_cast<double>(b) + 1.0));
    if (count >= kMinSphereSample) {
      acc.add(weight * (sphere.value() / static_cast<double>(count)));
      ++out.spheres_used;
    } else {
      dropped.add(bound_c * weight);
    }
  }
  out.value = acc.value();
  out.dropped_bound = dropped.value();
  out.tail_bound = bound_c *
                   std::pow(static_cast<double>(trunc_k), -static_cast<double>(b)) /
                   static_cast<double>(b);

  const double window_sum = parallel_block_reduce<double>(
      1, n + 1, detail::kRowBlock, workers, 0.0,
      [&](int64_t lo, int64_t hi) {
        CompensatedSum block;
        for (int64_t r = lo; r < hi; ++r)
          for (int64_t s = 1; s <= n; ++s) block.add(static_cast<double>(fn(LatticePoint{r, s})));
        return block.value();
      },
      [](double a, double p) { return a + p; });
  out.direct_check = zeta(static_cast<double>(b) + 1.0).value * window_sum /
                     (static_cast<double>(n) * static_cast<double>(n));
  return out;
}

}  // namespace gcdb
