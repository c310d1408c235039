#include "rcolor/arith.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace rcolor {

Symbol symbol_from_int(int v) {
  switch (v) {
    case -1: return Symbol::minus_one;
    case 0: return Symbol::zero;
    case 1: return Symbol::plus_one;
    default: throw std::invalid_argument("symbol value out of range: " + std::to_string(v));
  }
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) noexcept {
  if (v >= 0) return static_cast<std::uint64_t>(v) % m;
  // -(v + 1) avoids overflow on INT64_MIN.
  const std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
  const std::uint64_t r = mag % m;
  return r == 0 ? 0 : m - r;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  __int128 old_r = static_cast<__int128>(a % m), r = static_cast<__int128>(m);
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    const __int128 tr = old_r - q * r;
    old_r = r;
    r = tr;
    const __int128 ts = old_s - q * s;
    old_s = s;
    s = ts;
  }
  if (old_r != 1) {
    throw std::domain_error(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) noexcept {
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto w : kWitnesses) {
    if (n == w) return true;
    if (n % w == 0) return false;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (auto w : kWitnesses) {
    if (miller_rabin_witness(n, w, d, s)) return false;
  }
  return true;
}

Symbol legendre(std::int64_t n, std::uint64_t p) {
  if (p == 2 || !is_prime(p)) {
    throw std::invalid_argument("legendre: " + std::to_string(p) + " is not an odd prime");
  }
  const std::uint64_t a = reduce_signed(n, p);
  if (a == 0) return Symbol::zero;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? Symbol::plus_one : Symbol::minus_one;
}

namespace {

// (2/b) for odd b, indexed by b mod 8.
constexpr std::array<int, 8> kTwoTable{0, 1, 0, -1, 0, -1, 0, 1};

}  // namespace

Symbol kronecker(std::int64_t a_in, std::int64_t n_in) noexcept {
  __int128 a = a_in;
  __int128 b = n_in;
  if (b == 0) return (a == 1 || a == -1) ? Symbol::plus_one : Symbol::zero;
  if ((a & 1) == 0 && (b & 1) == 0) return Symbol::zero;

  int k = 1;
  int v = 0;
  while ((b & 1) == 0) {
    ++v;
    b /= 2;
  }
  if (v & 1) k = kTwoTable[static_cast<unsigned>(a & 7)];
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  // b is odd and positive from here on.
  while (true) {
    if (a == 0) return b > 1 ? Symbol::zero : symbol_from_int(k);
    v = 0;
    while ((a & 1) == 0) {
      ++v;
      a /= 2;
    }
    if (v & 1) k *= kTwoTable[static_cast<unsigned>(b & 7)];
    if (a & b & 2) k = -k;
    const __int128 r = a < 0 ? -a : a;
    a = b % r;
    b = r;
  }
}

Symbol kronecker(const mpz_class& a, std::int64_t n) {
  if (n == 0) return (abs(a) == 1) ? Symbol::plus_one : Symbol::zero;
  int sign = 1;
  if (n < 0) {
    if (sgn(a) < 0) sign = -1;
    n = -n;
  }
  // For n > 0, (a/n) depends only on a mod 4n.
  const mpz_class period = mpz_class(4) * mpz_class(static_cast<long>(n));
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), period.get_mpz_t());
  const Symbol base = kronecker(static_cast<std::int64_t>(r.get_si()), n);
  return symbol_from_int(sign * to_int(base));
}

}  // namespace rcolor
