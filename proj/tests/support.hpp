#pragma once

// Generators and independent oracles shared by the unit tests and the
// acceptance runner. Nothing here calls into the series code under test.

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "rcolor/series.hpp"

namespace rcolor::testing {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline long long uniform_signed(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

/// Residues in [0, m); each coefficient is zero with probability 1 - density.
inline ModSeries random_mod_series(Rng& rng, std::size_t trunc, std::uint64_t m, double density = 1.0,
                                   std::int64_t offset24 = 0) {
  std::bernoulli_distribution keep(density);
  std::vector<std::uint64_t> v(trunc + 1, 0);
  for (auto& x : v) x = keep(rng) ? uniform(rng, 0, m - 1) : 0;
  return ModSeries(std::move(v), m, offset24);
}

inline ExactSeries random_exact_series(Rng& rng, std::size_t trunc, long long bound, double density = 1.0,
                                       std::int64_t offset24 = 0) {
  std::bernoulli_distribution keep(density);
  std::vector<BigInt> v(trunc + 1);
  for (auto& x : v) x = keep(rng) ? BigInt(static_cast<long>(uniform_signed(rng, -bound, bound))) : BigInt(0);
  return ExactSeries(std::move(v), 0, offset24);
}

/// Schoolbook product truncated at n.
inline std::vector<BigInt> naive_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::size_t n) {
  std::vector<BigInt> out(n + 1, BigInt(0));
  for (std::size_t i = 0; i <= n && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= n && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline std::vector<std::uint64_t> naive_mul_mod(const std::vector<std::uint64_t>& a,
                                                const std::vector<std::uint64_t>& b, std::size_t n,
                                                std::uint64_t m) {
  std::vector<std::uint64_t> out(n + 1, 0);
  for (std::size_t i = 0; i <= n && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= n && j < b.size(); ++j) {
      out[i + j] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a[i]) * b[j] + out[i + j]) % m);
    }
  }
  return out;
}

/// prod_{k >= 1} (1 - q^{delta k})^e for e >= 0, by repeated multiplication
/// with the binomial 1 - q^{delta k}.
inline std::vector<BigInt> naive_euler_power(std::uint64_t delta, unsigned e, std::size_t n) {
  std::vector<BigInt> v(n + 1, BigInt(0));
  v[0] = 1;
  for (std::uint64_t step = delta; step <= n; step += delta) {
    for (unsigned t = 0; t < e; ++t) {
      for (std::size_t i = n; i >= step; --i) v[i] -= v[i - step];
    }
  }
  return v;
}

/// prod_{k >= 1} (1 - q^{delta k})^{-e}, one geometric series at a time.
inline std::vector<BigInt> naive_euler_inverse_power(std::uint64_t delta, unsigned e, std::size_t n) {
  std::vector<BigInt> v(n + 1, BigInt(0));
  v[0] = 1;
  for (std::uint64_t step = delta; step <= n; step += delta) {
    for (unsigned t = 0; t < e; ++t) {
      for (std::size_t i = step; i <= n; ++i) v[i] += v[i - step];
    }
  }
  return v;
}

/// a_r(0..n) from prod over odd k of (1-q^k)^{-r} and over even k of (1-q^k)^{-1}.
inline std::vector<BigInt> ar_oracle(unsigned r, std::size_t n) {
  std::vector<BigInt> v(n + 1, BigInt(0));
  v[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const unsigned e = k % 2 == 1 ? r : 1;
    for (unsigned t = 0; t < e; ++t) {
      for (std::size_t i = k; i <= n; ++i) v[i] += v[i - k];
    }
  }
  return v;
}

/// c(0..n), coefficients of prod (1 - q^k)(1 - q^{2k})^2.
inline std::vector<BigInt> c_oracle(std::size_t n) {
  auto v = naive_euler_power(1, 1, n);
  const auto f2sq = naive_euler_power(2, 2, n);
  return naive_mul(v, f2sq, n);
}

/// Legendre symbol from a table of squares; p an odd prime.
inline int legendre_oracle(long long a, long long p) {
  const long long r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (long long x = 1; x < p; ++x) {
    if ((x * x) % p == r) return 1;
  }
  return -1;
}

/// Kronecker symbol from its multiplicative definition over the
/// factorization of n, using the table-based Legendre symbol for odd primes.
inline int kronecker_oracle(long long a, long long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    const long long r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  for (long long t = 3; t * t <= n; t += 2) {
    while (n % t == 0) {
      n /= t;
      result *= legendre_oracle(a, t);
    }
  }
  if (n > 1) result *= legendre_oracle(a, n);
  return result;
}

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace rcolor::testing
