#pragma once

// Newman's recurrence for c(n) (coefficients of f1 f2^2) and the congruence
// families modulo 5 for a_3 built from it.
//
// For a prime p >= 5 write t = 5(p^2 - 1)/24. Then for n >= 0
//
//   c(p^2 n + t) = (xi(p) - ((2t - 2n)/p)) c(n) - p c((n - t)/p^2),
//   xi(p)        = c(t) + (2t/p),
//
// with the last term zero unless p^2 divides n - t. Since
// a_3(5n + 1) == 3 c(n) (mod 5), every progression 5(An + B) + 1 of a_3 can
// be read off c(An + B) modulo 5.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcolor/series.hpp"

namespace rcolor {

/// 5(p^2 - 1)/24.
std::uint64_t newman_shift(std::uint64_t p);

/// Exact xi(p). Throws TruncationError if c is too short and SeriesError for
/// p < 5 or composite p.
BigInt xi(std::uint64_t p, const ExactSeries& c);

/// Exponent period for the given residues: xi_mod5 as a symmetric residue
/// in {-2,...,2}, p_mod5 in {1,2,3,4}. Throws std::invalid_argument when
/// p_mod5 is 0.
int omega(int xi_mod5, int p_mod5);

struct NewmanProfile {
  std::uint64_t p = 0;
  BigInt xi;
  int xi_mod5 = 0;            // symmetric residue
  int p_mod5 = 0;
  std::optional<int> omega;   // absent for p = 5
};

NewmanProfile newman_profile(std::uint64_t p, const ExactSeries& c);

/// Symmetric residue of v modulo 5, in {-2,...,2}.
int symmetric_mod5(const BigInt& v);

struct RecurrenceReport {
  std::uint64_t p = 0;
  std::size_t n_max = 0;
  bool pass = true;
  std::optional<std::size_t> first_failure;  // smallest failing n
  BigInt lhs, rhs;                           // at first_failure
};

/// Minimum c truncation for verify_recurrence(p, n_max, ...).
std::size_t recurrence_trunc(std::uint64_t p, std::size_t n_max);

/// Checks the recurrence as an exact integer identity for 0 <= n <= n_max.
RecurrenceReport verify_recurrence(std::uint64_t p, std::size_t n_max, const ExactSeries& c);

struct ResidueFilter {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> residues;  // allowed n mod p, ascending

  bool admits(std::uint64_t n) const;
};

enum class FamilySeries { a_r, c };

/// sum(n) := series(A n + B) == 0 (mod modulus) for admissible n.
struct CongruenceFamily {
  FamilySeries series = FamilySeries::a_r;
  unsigned r = 3;
  std::uint64_t A = 1;
  std::uint64_t B = 0;
  std::uint64_t modulus = 5;
  std::optional<ResidueFilter> filter;
  std::string label;

  bool vacuous() const { return filter.has_value() && filter->residues.empty(); }
  bool admits(std::uint64_t n) const { return !filter || filter->admits(n); }
  /// A n + B, throwing TruncationError on 64-bit overflow.
  std::uint64_t index(std::uint64_t n) const;
};

struct FamilyLimits {
  std::uint64_t ceiling = 10'000'000;  // generated B must stay below this
};

/// a_3(5 p^{w(k+1)-1} n + (25 p^{w(k+1)} - 1)/24) == 0 (mod 5) for p not
/// dividing n, w = omega(p). Requires p >= 7.
CongruenceFamily nondivisible_family(std::uint64_t p, unsigned k, const NewmanProfile& profile,
                                FamilyLimits limits = {});

/// a_3(5 p^{wk+2} n + (25 p^{wk+2} - 1)/24) == 0 (mod 5) for n whose
/// residue class satisfies xi(p) == ((2t - 2n)/p) (mod 5). With xi == +-2
/// no class qualifies and the family is returned with an empty filter.
/// Throws SeriesError when xi == 0 (mod 5).
CongruenceFamily legendre_family(std::uint64_t p, unsigned k, const NewmanProfile& profile,
                                FamilyLimits limits = {});

/// The same two families stated for c(n) directly (indices (index - 1)/5),
/// checkable against c_series without the a_3 repackaging. Not applicable
/// for p = 5.
std::vector<CongruenceFamily> derived_c_families(std::uint64_t p, unsigned k, const NewmanProfile& profile,
                                                 FamilyLimits limits = {});

/// a_3(i) mod 5 for i <= max_index. Indices congruent to 1 mod 5 are answered
/// from c(n) mod 5 (a_3(5n+1) == 3c(n)); others from an a_3 series, which is
/// only built when requested.
class A3Mod5Provider {
 public:
  enum class Route { via_c, direct };

  A3Mod5Provider(std::uint64_t max_index, Route route);

  std::uint64_t at(std::uint64_t index) const;
  std::uint64_t max_index() const noexcept { return max_index_; }

 private:
  std::uint64_t max_index_;
  std::optional<ModSeries> c_mod5_;
  std::optional<ModSeries> a3_mod5_;
};

struct ProportionalityReport {
  std::size_t n_max = 0;
  bool pass = true;
  std::optional<std::size_t> first_failure;
  std::uint64_t lhs_index = 0, rhs_index = 0;
  std::uint64_t lhs = 0, rhs = 0;  // residues at first_failure
};

struct ProportionalityIndices {
  std::uint64_t A, B, factor;  // lhs A n + B, factor 2^{k+1} mod 5
};
ProportionalityIndices proportionality_indices(unsigned k);

/// a_3(25 * 5^{2(k+1)} n + (25 * 5^{2(k+2)} - 1)/24) == 2^{k+1} a_3(25n + 26) (mod 5).
ProportionalityReport proportionality_check(unsigned k, std::size_t n_max, const A3Mod5Provider& a3);

/// c(5^{2k+3} n + 5(5^{2k+4} - 1)/24) == 2^{k+1} c(5n + 5) (mod 5), the c-level
/// statement behind proportionality_check.
ProportionalityReport c_proportionality_check(unsigned k, std::size_t n_max, const ModSeries& c_mod5);

}  // namespace rcolor
