#pragma once

// Integer-valued arithmetic functions tabulated on 1..N, the standard
// sieves, and Dirichlet convolution.  Tables are immutable once built and
// safe to share across threads.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gcdb/core.hpp"

namespace gcdb {

struct ArithTable {
  int64_t n_max = 0;
  std::vector<int64_t> values;  // 1-indexed; values[0] unused

  ArithTable() = default;
  explicit ArithTable(int64_t n) : n_max(n), values(static_cast<size_t>(n) + 1, 0) {
    if (n < 1) throw std::invalid_argument("ArithTable: N >= 1 required");
  }

  int64_t at(int64_t n) const {
    if (n < 1 || n > n_max) throw std::out_of_range("ArithTable::at: index outside 1..N");
    return values[static_cast<size_t>(n)];
  }

  int64_t& ref(int64_t n) { return values[static_cast<size_t>(n)]; }
};

inline ArithTable mobius_sieve(int64_t n) {
  ArithTable t(n);
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  std::vector<int64_t> primes;
  t.ref(1) = 1;
  for (int64_t i = 2; i <= n; ++i) {
    if (!comp[static_cast<size_t>(i)]) {
      primes.push_back(i);
      t.ref(i) = -1;
    }
    for (int64_t p : primes) {
      if (i * p > n) break;
      comp[static_cast<size_t>(i * p)] = true;
      if (i % p == 0) {
        t.ref(i * p) = 0;
        break;
      }
      t.ref(i * p) = -t.at(i);
    }
  }
  return t;
}

inline ArithTable phi_sieve(int64_t n) {
  ArithTable t(n);
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  std::vector<int64_t> primes;
  t.ref(1) = 1;
  for (int64_t i = 2; i <= n; ++i) {
    if (!comp[static_cast<size_t>(i)]) {
      primes.push_back(i);
      t.ref(i) = i - 1;
    }
    for (int64_t p : primes) {
      if (i * p > n) break;
      comp[static_cast<size_t>(i * p)] = true;
      if (i % p == 0) {
        t.ref(i * p) = t.at(i) * p;
        break;
      }
      t.ref(i * p) = t.at(i) * (p - 1);
    }
  }
  // self-check against sum_{d|m} phi(d) = m on the small prefix
  const int64_t check_to = std::min<int64_t>(n, 1000);
  for (int64_t m = 1; m <= check_to; ++m) {
    int64_t acc = 0;
    for (int64_t d = 1; d * d <= m; ++d) {
      if (m % d != 0) continue;
      acc += t.at(d);
      if (d != m / d) acc += t.at(m / d);
    }
    if (acc != m) throw std::logic_error("phi_sieve: divisor-sum identity failed");
  }
  return t;
}

inline ArithTable unit_table(int64_t n) {
  ArithTable t(n);
  for (int64_t i = 1; i <= n; ++i) t.ref(i) = 1;
  return t;
}

// e(1) = 1, e(n) = 0 otherwise: the Dirichlet identity.
inline ArithTable delta_table(int64_t n) {
  ArithTable t(n);
  t.ref(1) = 1;
  return t;
}

// n -> floor(1/n).  Coincides with delta_table; kept as its own builder
// because it is the selector that turns mean values into visibility density.
inline ArithTable floor_inverse_table(int64_t n) { return delta_table(n); }

inline ArithTable identity_table(int64_t n) {
  ArithTable t(n);
  for (int64_t i = 1; i <= n; ++i) t.ref(i) = i;
  return t;
}

// k at n = k, zero elsewhere; the weight that isolates the sphere gcd_b = k.
inline ArithTable scaled_indicator_table(int64_t n, int64_t k) {
  if (k < 1) throw std::invalid_argument("scaled_indicator_table: k >= 1 required");
  ArithTable t(n);
  if (k <= n) t.ref(k) = k;
  return t;
}

inline ArithTable dirichlet_convolve(const ArithTable& f, const ArithTable& g) {
  if (f.n_max != g.n_max)
    throw std::invalid_argument("dirichlet_convolve: tables must share the same bound");
  const int64_t n = f.n_max;
  ArithTable out(n);
  for (int64_t a = 1; a <= n; ++a) {
    const int64_t fa = f.at(a);
    if (fa == 0) continue;
    for (int64_t b = 1; a * b <= n; ++b) {
      const int64_t gb = g.at(b);
      if (gb != 0) out.ref(a * b) += fa * gb;
    }
  }
  return out;
}

}  // namespace gcdb
