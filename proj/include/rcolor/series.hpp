#pragma once

// Truncated power series in q, exact (arbitrary-precision integers) or over
// Z/mZ (canonical 64-bit residues).
//
// A series stores coefficients of q^0 .. q^trunc and carries a leading
// exponent offset in units of 1/24, so that eta products keep their
// q^(1/24) prefactors as integer bookkeeping:
//
//     value = q^(offset24 / 24) * sum_{n=0}^{trunc} coeffs[n] q^n
//
// Values are immutable; every operation returns a new series. Truncation is
// never extended silently: results are valid exactly to the smaller operand
// truncation.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rcolor {

using BigInt = mpz_class;

template <typename Coeff>
class Series {
 public:
  using coeff_type = Coeff;

  /// Builds a series from stored coefficients. In modular mode (modulus > 0)
  /// every coefficient must already be a canonical residue; exact mode
  /// requires modulus == 0. The vector must be non-empty.
  Series(std::vector<Coeff> coeffs, std::uint64_t modulus, std::int64_t offset24 = 0);

  static Series zero(std::size_t trunc, std::uint64_t modulus, std::int64_t offset24 = 0);
  static Series one(std::size_t trunc, std::uint64_t modulus);
  /// Coefficients given as signed machine integers, reduced if modular.
  static Series from_integers(std::span<const long long> values, std::uint64_t modulus,
                              std::int64_t offset24 = 0);

  std::size_t trunc() const noexcept { return coeffs_.size() - 1; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::int64_t offset24() const noexcept { return offset24_; }
  bool exact() const noexcept { return modulus_ == 0; }

  const Coeff& operator[](std::size_t n) const noexcept { return coeffs_[n]; }
  /// Bounds-checked access; throws TruncationError past trunc().
  const Coeff& coeff(std::size_t n) const;
  std::span<const Coeff> coeffs() const noexcept { return coeffs_; }

  std::size_t nonzero_count() const noexcept;
  bool is_zero() const noexcept;

  /// Same series with fewer stored coefficients (new_trunc <= trunc()).
  Series truncated(std::size_t new_trunc) const;

  bool operator==(const Series& other) const = default;

 private:
  std::vector<Coeff> coeffs_;
  std::uint64_t modulus_;
  std::int64_t offset24_;
};

using ExactSeries = Series<BigInt>;
using ModSeries = Series<std::uint64_t>;

/// How pow() is allowed to evaluate a^e.
enum class PowStrategy {
  automatic,  // Frobenius splitting for prime moduli, cost-based otherwise
  naive,      // plain binary exponentiation, the reference path
};

template <typename C> Series<C> add(const Series<C>& a, const Series<C>& b);
template <typename C> Series<C> sub(const Series<C>& a, const Series<C>& b);
template <typename C> Series<C> negate(const Series<C>& a);
template <typename C> Series<C> scale(const Series<C>& a, long long factor);

/// Cauchy product to min(a.trunc, b.trunc). Cost is
/// (nonzeros of the sparser operand) x (length).
template <typename C> Series<C> mul(const Series<C>& a, const Series<C>& b);

template <typename C>
Series<C> pow(const Series<C>& a, std::uint64_t e, PowStrategy strategy = PowStrategy::automatic);

/// num / den to min(num.trunc, den.trunc) by the triangular recurrence.
/// The constant term of den must be a unit (+-1 in exact mode).
template <typename C> Series<C> divide(const Series<C>& num, const Series<C>& den);
template <typename C> Series<C> invert(const Series<C>& a);

/// Adds delta24 to the 1/24-unit offset without touching coefficients.
template <typename C> Series<C> shift_offset(const Series<C>& a, std::int64_t delta24);

/// Moves an integral, non-negative offset into the coefficient array:
/// q^k * sum c_n q^n becomes sum c_{n-k} q^n with trunc + k.
template <typename C> Series<C> materialize(const Series<C>& a);

/// a(q^factor) to the given truncation; offset scales by factor.
template <typename C> Series<C> dilate(const Series<C>& a, std::size_t factor, std::size_t trunc);

/// sum_n a(step*n + start) q^n for every index inside a's truncation.
template <typename C>
Series<C> extract_progression(const Series<C>& a, std::size_t step, std::size_t start);

/// (q^delta; q^delta)_inf^r to order trunc, offset 0. r = +-1 use the
/// pentagonal number theorem directly.
template <typename C>
Series<C> euler_factor(std::uint64_t delta, long long r, std::size_t trunc, std::uint64_t modulus);

/// Exact series reduced coefficient-wise modulo m.
ModSeries reduce(const ExactSeries& a, std::uint64_t m);

std::string to_string(const BigInt& v);
inline std::string to_string(std::uint64_t v) { return std::to_string(v); }

}  // namespace rcolor
