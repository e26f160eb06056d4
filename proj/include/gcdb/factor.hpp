#pragma once

// Prime sieves, deterministic 64-bit primality, Pollard-Brent factorization,
// and bounded trial division over arbitrary-precision integers.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gcdb {

using BigInt = boost::multiprecision::cpp_int;

inline std::vector<int64_t> primes_up_to(int64_t n) {
  std::vector<int64_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  for (int64_t i = 2; i <= n; ++i) {
    if (comp[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (int64_t j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
  }
  return out;
}

// Smallest-prime-factor table for 1..n; spf(1) = 1.
class SpfTable {
 public:
  explicit SpfTable(int64_t n) : n_(n), spf_(static_cast<size_t>(n) + 1, 0) {
    if (n < 1) throw std::invalid_argument("SpfTable: n >= 1 required");
    spf_[1] = 1;
    std::vector<int32_t> primes;
    for (int64_t i = 2; i <= n; ++i) {
      if (spf_[static_cast<size_t>(i)] == 0) {
        spf_[static_cast<size_t>(i)] = static_cast<int32_t>(i);
        primes.push_back(static_cast<int32_t>(i));
      }
      for (int32_t p : primes) {
        if (p > spf_[static_cast<size_t>(i)] || i * p > n) break;
        spf_[static_cast<size_t>(i * p)] = p;
      }
    }
  }

  int64_t size() const { return n_; }

  int64_t spf(int64_t n) const { return spf_[static_cast<size_t>(n)]; }

  void distinct_primes(int64_t n, std::vector<int64_t>& out) const {
    while (n > 1) {
      const int64_t p = spf_[static_cast<size_t>(n)];
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }

 private:
  int64_t n_;
  std::vector<int32_t> spf_;
};

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = m > 1 ? 1 : 0;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for the full 64-bit range.
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent's cycle variant of Pollard rho; n must be composite and odd.
inline uint64_t pollard_brent_u64(uint64_t n) {
  if (n % 2 == 0) return 2;
  for (uint64_t c = 1;; ++c) {
    uint64_t x = 2, y = 2, d = 1;
    uint64_t q = 1;
    int lam = 1;
    while (d == 1) {
      x = y;
      for (int i = 0; i < lam; ++i) y = (mulmod_u64(y, y, n) + c) % n;
      int k = 0;
      while (k < lam && d == 1) {
        const int lim = std::min(lam - k, 128);
        uint64_t ys = y;
        for (int i = 0; i < lim; ++i) {
          y = (mulmod_u64(y, y, n) + c) % n;
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        d = gcd_u64(q, n);
        if (d == n) {
          // backtrack one step at a time
          d = 1;
          y = ys;
          do {
            y = (mulmod_u64(y, y, n) + c) % n;
            d = gcd_u64(x > y ? x - y : y - x, n);
          } while (d == 1);
          break;
        }
        k += lim;
      }
      lam *= 2;
    }
    if (d != n) return d;
  }
}

inline void factorize_u64(uint64_t n, std::map<uint64_t, int>& out) {
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  const uint64_t d = pollard_brent_u64(n);
  factorize_u64(d, out);
  factorize_u64(n / d, out);
}

inline std::vector<std::pair<uint64_t, int>> factorize_u64(uint64_t n) {
  std::map<uint64_t, int> m;
  if (n > 1) factorize_u64(n, m);
  return {m.begin(), m.end()};
}

// ---- arbitrary-precision side ------------------------------------------

// Probable-prime test: exact for inputs that fit 64 bits, Miller-Rabin with
// a fixed small-prime base set beyond that.
inline bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<uint64_t>::max())
    return is_prime_u64(static_cast<uint64_t>(n));
  static const int kBases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                               41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  for (int b : kBases)
    if (n % b == 0) return false;
  BigInt d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (int b : kBases) {
    BigInt x = boost::multiprecision::powm(BigInt(b), d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

struct TrialDivisionResult {
  std::map<BigInt, int> factors;
  BigInt cofactor;  // 1 when fully factored; otherwise has no prime <= limit
};

// Primes below the default verification trial limit, built once and shared;
// construction is guarded by the magic-static rule, so concurrent first use
// is fine.
inline constexpr uint64_t kSmallPrimeCacheLimit = 10'000'000;

inline const std::vector<int64_t>& small_prime_cache() {
  static const std::vector<int64_t> primes = primes_up_to(kSmallPrimeCacheLimit);
  return primes;
}

inline TrialDivisionResult trial_division(BigInt n, uint64_t limit) {
  TrialDivisionResult res;
  if (n < 1) throw std::invalid_argument("trial_division: positive input required");
  const auto& cache = small_prime_cache();
  for (int64_t p : cache) {
    if (static_cast<uint64_t>(p) > limit || BigInt(p) * p > n) break;
    while (n % p == 0) {
      ++res.factors[BigInt(p)];
      n /= p;
    }
  }
  if (limit > kSmallPrimeCacheLimit) {
    for (uint64_t p = kSmallPrimeCacheLimit + 1; p <= limit && BigInt(p) * p <= n; p += 2) {
      while (n % p == 0) {
        ++res.factors[BigInt(p)];
        n /= p;
      }
    }
  }
  if (n > 1 && n <= limit) {
    ++res.factors[n];
    n = 1;
  }
  // the loops stop at sqrt(n); a survivor below limit^2 is prime
  if (n > 1 && n <= BigInt(limit) * limit) {
    ++res.factors[n];
    n = 1;
  }
  res.cofactor = n;
  return res;
}

// Pollard-Brent on big integers with an iteration cap. Returns a nontrivial
// factor of composite odd n, or nullopt once the budget is exhausted.
inline std::optional<BigInt> pollard_brent_big(const BigInt& n, uint64_t max_iters) {
  if (n % 2 == 0) return BigInt(2);
  uint64_t spent = 0;
  for (uint64_t c = 1; spent < max_iters; ++c) {
    BigInt x = 2, y = 2, d = 1, q = 1;
    uint64_t lam = 1;
    while (d == 1 && spent < max_iters) {
      x = y;
      for (uint64_t i = 0; i < lam; ++i) y = (y * y + c) % n;
      uint64_t k = 0;
      while (k < lam && d == 1 && spent < max_iters) {
        const uint64_t lim = std::min<uint64_t>(lam - k, 128);
        BigInt ys = y;
        for (uint64_t i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * (x > y ? x - y : y - x) % n;
        }
        spent += lim;
        d = boost::multiprecision::gcd(q, n);
        if (d == n) {
          d = 1;
          y = ys;
          do {
            y = (y * y + c) % n;
            d = boost::multiprecision::gcd(x > y ? x - y : y - x, n);
            ++spent;
          } while (d == 1 && spent < max_iters);
          break;
        }
        k += lim;
      }
      lam *= 2;
    }
    if (d != 1 && d != n) return d;
  }
  return std::nullopt;
}

// Full factorization: trial division to trial_limit, then recursive rho with
// a shared iteration budget. nullopt when the budget runs out first.
inline std::optional<std::map<BigInt, int>> factorize_with_budget(const BigInt& n,
                                                                  uint64_t trial_limit,
                                                                  uint64_t rho_budget) {
  std::map<BigInt, int> out;
  if (n < 1) throw std::invalid_argument("factorize_with_budget: positive input required");
  if (n <= std::numeric_limits<uint64_t>::max()) {
    for (auto [p, e] : factorize_u64(static_cast<uint64_t>(n))) out[BigInt(p)] = e;
    return out;
  }
  auto td = trial_division(n, trial_limit);
  out = std::move(td.factors);
  std::vector<BigInt> stack;
  if (td.cofactor > 1) stack.push_back(td.cofactor);
  while (!stack.empty()) {
    BigInt m = stack.back();
    stack.pop_back();
    if (m <= std::numeric_limits<uint64_t>::max()) {
      for (auto [p, e] : factorize_u64(static_cast<uint64_t>(m))) out[BigInt(p)] += e;
      continue;
    }
    if (is_probable_prime(m)) {
      ++out[m];
      continue;
    }
    auto d = pollard_brent_big(m, rho_budget);
    if (!d) return std::nullopt;
    stack.push_back(*d);
    stack.push_back(m / *d);
  }
  return out;
}

}  // namespace gcdb
