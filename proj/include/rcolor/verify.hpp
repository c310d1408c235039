#pragma once

// Verification checks built on the series, partition, modular-form and
// Newman layers, plus the suite runner that sequences them.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rcolor/report.hpp"

namespace rcolor {

/// Largest series lengths a check may request.
struct ScanCeilings {
  std::uint64_t ar_mod = 1'000'000;  // a_r modulo m
  std::uint64_t c_mod = 5'000'000;   // c modulo 5
  std::uint64_t exact = 5'000;       // exact a_r series
  std::uint64_t c_exact = 100'000;   // exact c, whose coefficients stay small
};

/// Scans series(A n + B) mod m for admissible n <= n_max and reports the
/// first nonzero residue. Progressions of a_3 mod 5 with A == 0 and
/// B == 1 (mod 5) are read from c(n) mod 5 through a_3(5n+1) == 3c(n).
/// Throws TruncationError when the required length exceeds the ceiling.
CheckReport check_family(const CongruenceFamily& fam, std::uint64_t n_max, const ScanCeilings& ceilings = {});

/// The progression a_5(3^{2 alpha + 3} n + (153 * 9^alpha - 1)/8) mod 3.
CongruenceFamily a5_mod3_family(unsigned alpha);

/// a_5(9n + 1) == a_5(81n + 10) (mod 3) for n <= n_max.
CheckReport check_selfsimilar(std::uint64_t n_max, const ScanCeilings& ceilings = {});

/// Exact recurrence check wrapped as a report.
CheckReport check_newman_recurrence(std::uint64_t p, std::size_t n_max, const ScanCeilings& ceilings = {});

/// Hecke-operator arguments for a_5 modulo 3 and 5: eta-quotient verdicts
/// and Sturm bounds, the three coefficient checks through their Sturm
/// bounds with the matching product factorizations, and the E4 shortcut.
std::vector<CheckReport> reproduce_hecke_arguments();

inline constexpr std::size_t kDissectionMaxOrder = 60;

/// sum a_3(7n+2) q^n against the eight-term eta-quotient expression, as an
/// exact equality through q^order.
CheckReport verify_dissection(std::size_t order, const ScanCeilings& ceilings = {});

struct ExtraFamily {
  CongruenceFamily family;
  std::uint64_t n_max = 100;
};

struct SuiteConfig {
  ScanCeilings ceilings;
  std::vector<std::uint64_t> newman_primes{5, 7, 11, 13};
  std::size_t newman_n_max = 60;
  std::uint64_t profile_prime_max = 31;
  std::uint64_t mod7_n_max = 500;
  unsigned jobs = 1;  // 0 picks the hardware concurrency
  std::vector<ExtraFamily> extra_families;
};

/// Reads a config object; unknown keys are rejected.
SuiteConfig suite_config_from_json(const json& j);

struct SuiteReport {
  std::vector<CheckReport> checks;
  double wall_ms = 0.0;

  bool any_fail() const;
  json to_json() const;
  std::string summary() const;  // one line per check plus a totals line
};

/// Runs every check in a fixed order. Exceptions from sub-checks propagate.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace rcolor
