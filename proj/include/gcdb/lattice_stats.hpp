#pragma once

// Statistics over the square window T_N = {(r,s) : 0 < r,s <= N}: sums of
// f(gcd_b) by direct scan and by the g = f*mu divisor-count identity,
// gcd_b value counts, and density estimates against their zeta-ratio targets.
//
// Scans are data-parallel over fixed row blocks with per-block accumulators
// merged in row order, so results are independent of the worker count.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gcdb/arith_table.hpp"
#include "gcdb/parallel.hpp"
#include "gcdb/zeta.hpp"

namespace gcdb {

struct WindowStats {
  std::string op;
  int b = 0;
  int64_t n = 0;
  int64_t k = 0;  // 0 when not applicable
  long long raw_sum = 0;
  double estimate = 0;
  double target = 0;
  double abs_error = 0;
  bool flagged = false;
  std::string note;
};

inline WindowStats make_window_stats(std::string op, int b, int64_t n, int64_t k,
                                     long long raw_sum, double estimate, double target) {
  WindowStats w;
  w.op = std::move(op);
  w.b = b;
  w.n = n;
  w.k = k;
  w.raw_sum = raw_sum;
  w.estimate = estimate;
  w.target = target;
  w.abs_error = std::abs(estimate - target);
  return w;
}

namespace detail {

inline void check_window(int b, int64_t n) {
  if (b < 1) throw std::invalid_argument("window scan: b >= 1 required");
  if (n < 1) throw std::invalid_argument("window scan: N >= 1 required");
}

constexpr int64_t kRowBlock = 64;  // fixed block size keeps reductions deterministic

}  // namespace detail

// Direct scan of sum over T_N of f(gcd_b(r,s)); the oracle path.
inline long long lambda_f_sum_naive(const ArithTable& f, int b, int64_t n, int workers = 1) {
  detail::check_window(b, n);
  if (f.n_max < n) throw std::invalid_argument("lambda_f_sum_naive: table shorter than N");
  const SpfTable spf(n);
  return parallel_block_reduce<long long>(
      1, n + 1, detail::kRowBlock, workers, 0,
      [&](int64_t lo, int64_t hi) {
        long long acc = 0;
        for (int64_t r = lo; r < hi; ++r)
          for (int64_t s = 1; s <= n; ++s) acc += f.at(gcd_b_with_spf(r, s, b, spf));
        return acc;
      },
      [](long long a, long long p) { return a + p; });
}

// sum_{k<=N} g(k) floor(N/k) floor(N/k^b) for a precomputed g = f*mu.
inline long long lambda_g_weighted_sum(const ArithTable& g, int b, int64_t n) {
  detail::check_window(b, n);
  if (g.n_max < n) throw std::invalid_argument("lambda_g_weighted_sum: table shorter than N");
  long long acc = 0;
  for (int64_t k = 1; k <= n; ++k) {
    const auto kb = checked_pow(k, b, n);
    if (!kb) break;  // k^b > N zeroes every later term
    acc += g.at(k) * (n / k) * (n / *kb);
  }
  return acc;
}

// Same window sum through the divisor-count identity; exact, O(N) after the
// convolution, and equal to the naive scan on every integer table.
inline long long lambda_f_sum_fast(const ArithTable& f, int b, int64_t n) {
  detail::check_window(b, n);
  ArithTable prefix(n);
  for (int64_t i = 1; i <= n; ++i) prefix.ref(i) = f.at(i);
  const ArithTable g = dirichlet_convolve(prefix, mobius_sieve(n));
  return lambda_g_weighted_sum(g, b, n);
}

// Window mean of f(gcd_b) against the Dirichlet-series ratio target.
// Flags (never fails) when the |f*mu|/k decay diagnostic is not trending
// down, or when the absolute series has not plateaued at s = b+1.
inline WindowStats mean_value_estimate(const ArithTable& f, const std::string& f_name, int b,
                                       int64_t n, int workers = 1) {
  detail::check_window(b, n);
  (void)workers;  // identity path is already O(N) table work
  const long long q = lambda_f_sum_fast(f, b, n);
  const double estimate = static_cast<double>(q) / (static_cast<double>(n) * static_cast<double>(n));
  const ZetaFResult zf = zeta_f(f, static_cast<double>(b) + 1.0);
  const double target = zf.value / zeta(static_cast<double>(b) + 1.0).value;
  WindowStats w = make_window_stats("mean_value[" + f_name + "]", b, n, 0, q, estimate, target);
  const auto diag = mean_value_condition_diagnostic(f);
  if (!condition_trending_down(diag)) {
    w.flagged = true;
    w.note = "mean-value condition diagnostic not decreasing";
  }
  if (!zf.plateau) {
    w.flagged = true;
    w.note += (w.note.empty() ? "" : "; ");
    w.note += "dirichlet series not plateaued at s=b+1";
  }
  return w;
}

// Histogram of gcd_b over T_N, indices 0..N (index 0 unused).  One scan
// serves every k at once; the entries partition N^2 exactly.
inline std::vector<long long> gcd_b_histogram(int b, int64_t n, int workers = 1) {
  detail::check_window(b, n);
  const SpfTable spf(n);
  using Hist = std::vector<long long>;
  return parallel_block_reduce<Hist>(
      1, n + 1, detail::kRowBlock, workers, Hist(static_cast<size_t>(n) + 1, 0),
      [&](int64_t lo, int64_t hi) {
        Hist h(static_cast<size_t>(n) + 1, 0);
        for (int64_t r = lo; r < hi; ++r)
          for (int64_t s = 1; s <= n; ++s) ++h[static_cast<size_t>(gcd_b_with_spf(r, s, b, spf))];
        return h;
      },
      [](Hist a, Hist p) {
        for (size_t i = 0; i < a.size(); ++i) a[i] += p[i];
        return a;
      });
}

inline long long gcd_b_count(int b, int64_t k, int64_t n, int workers = 1) {
  detail::check_window(b, n);
  if (k < 1) throw std::invalid_argument("gcd_b_count: k >= 1 required");
  if (k > n) return 0;  // k | r forces k <= N
  const SpfTable spf(n);
  return parallel_block_reduce<long long>(
      1, n + 1, detail::kRowBlock, workers, 0,
      [&](int64_t lo, int64_t hi) {
        long long acc = 0;
        for (int64_t r = lo; r < hi; ++r)
          for (int64_t s = 1; s <= n; ++s)
            if (gcd_b_with_spf(r, s, b, spf) == k) ++acc;
        return acc;
      },
      [](long long a, long long p) { return a + p; });
}

// Mobius-inverted count over the quotient rectangle; independent route used
// to cross-check the scan.
inline long long gcd_b_count_fast(int b, int64_t k, int64_t n) {
  detail::check_window(b, n);
  if (k < 1) throw std::invalid_argument("gcd_b_count_fast: k >= 1 required");
  const auto kb = checked_pow(k, b, n);
  if (!kb) return 0;
  const int64_t a_max = n / k;
  const int64_t c_max = n / *kb;
  if (a_max < 1 || c_max < 1) return 0;
  const ArithTable mu = mobius_sieve(a_max);
  long long acc = 0;
  for (int64_t d = 1; d <= a_max; ++d) {
    const auto db = checked_pow(d, b, c_max);
    if (!db) break;
    acc += mu.at(d) * (a_max / d) * (c_max / *db);
  }
  return acc;
}

inline WindowStats density_estimate(int b, int64_t k, int64_t n, int workers = 1) {
  const long long count = gcd_b_count(b, k, n, workers);
  const double estimate = static_cast<double>(count) / (static_cast<double>(n) * static_cast<double>(n));
  const double target =
      1.0 / (std::pow(static_cast<double>(k), static_cast<double>(b) + 1.0) *
             zeta(static_cast<double>(b) + 1.0).value);
  return make_window_stats("density", b, n, k, count, estimate, target);
}

struct SetDensityResult {
  WindowStats stats;
  double target_tail_bound = 0;  // truncation of zeta_S(b+1), divided by zeta(b+1)
};

// Density of {gcd_b in S} for S given as a membership predicate.  The target
// series zeta_S(b+1) is truncated at trunc_k with the integral tail recorded.
inline SetDensityResult set_density_estimate(int b, const std::function<bool(int64_t)>& in_set,
                                             int64_t trunc_k, int64_t n, int workers = 1) {
  detail::check_window(b, n);
  if (trunc_k < 1) throw std::invalid_argument("set_density_estimate: trunc_k >= 1 required");
  const auto hist = gcd_b_histogram(b, n, workers);
  long long count = 0;
  for (int64_t k = 1; k <= n; ++k)
    if (in_set(k)) count += hist[static_cast<size_t>(k)];
  CompensatedSum series;
  for (int64_t k = 1; k <= trunc_k; ++k)
    if (in_set(k)) series.add(std::pow(static_cast<double>(k), -(static_cast<double>(b) + 1.0)));
  const double z = zeta(static_cast<double>(b) + 1.0).value;
  const double tail =
      std::pow(static_cast<double>(trunc_k), -static_cast<double>(b)) / static_cast<double>(b);
  SetDensityResult out;
  out.stats = make_window_stats(
      "set_density", b, n, 0, count,
      static_cast<double>(count) / (static_cast<double>(n) * static_cast<double>(n)),
      series.value() / z);
  out.target_tail_bound = tail / z;
  return out;
}

}  // namespace gcdb
