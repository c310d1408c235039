#pragma once

// Elementary number theory used throughout: residue symbols, primality and
// 64-bit modular helpers.

#include <cstdint>

#include <gmpxx.h>

namespace rcolor {

/// Value of a Legendre/Kronecker symbol.
enum class Symbol : int { minus_one = -1, zero = 0, plus_one = 1 };

constexpr int to_int(Symbol s) noexcept { return static_cast<int>(s); }
Symbol symbol_from_int(int v);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// Canonical residue of a signed value in [0, m).
std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) noexcept;

/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);

/// Deterministic for all 64-bit inputs (Miller-Rabin with a fixed witness set).
bool is_prime(std::uint64_t n) noexcept;

/// Legendre symbol via Euler's criterion. Throws std::invalid_argument unless
/// p is an odd prime.
Symbol legendre(std::int64_t n, std::uint64_t p);

/// Kronecker symbol (a/n) for arbitrary integers.
Symbol kronecker(std::int64_t a, std::int64_t n) noexcept;

/// Kronecker symbol with an arbitrary-precision top argument.
Symbol kronecker(const mpz_class& a, std::int64_t n);

}  // namespace rcolor
