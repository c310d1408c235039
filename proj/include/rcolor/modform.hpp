#pragma once

// Eta-quotients prod_{delta | N} eta(delta z)^{r_delta}: the holomorphy and
// level conditions of the Gordon-Hughes-Newman-Ligozat criterion, the
// associated character, Sturm bounds, q-expansions and the Hecke operator T_p
// acting on those expansions.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rcolor/arith.hpp"
#include "rcolor/series.hpp"

namespace rcolor {

struct EtaQuotient {
  std::uint64_t level = 1;
  std::map<std::uint64_t, long long> factors;  // delta -> r_delta

  /// Throws SeriesError unless level >= 1, every delta divides the level and
  /// some exponent is nonzero.
  void validate() const;
};

/// An eta-quotient multiplied by a power of the weight-4 Eisenstein series.
/// E4 has level 1 and trivial character, so it only adds 4 per power to the
/// weight.
struct ModularFormSpec {
  EtaQuotient eta;
  unsigned e4_power = 0;
};

struct CuspOrder {
  std::uint64_t d;
  long long num;  // sum gcd(d, delta)^2 r_delta / delta = num / den
  long long den;  // > 0, reduced
  bool nonnegative() const noexcept { return num >= 0; }
};

struct FormMeta {
  long long twice_weight = 0;       // 2k including E4 powers
  long long eta_twice_weight = 0;   // sum r_delta
  std::int64_t offset24 = 0;        // sum delta r_delta
  // (-1)^k prod delta^{|r_delta|}; negative exponents use |r| because
  // delta^-r and delta^r differ by a rational square, so the Kronecker
  // character is the same. Only meaningful when the eta weight is integral.
  BigInt character_disc;
  int cond_sum1 = 0;  // sum delta r_delta mod 24
  int cond_sum2 = 0;  // sum (N/delta) r_delta mod 24
  std::vector<CuspOrder> cusp_orders;  // one per divisor d of N
  std::optional<long long> sturm;      // when the total weight is a positive integer

  bool integral_weight = false;
  bool cond1_ok = false;
  bool cond2_ok = false;
  bool cusps_ok = false;
  bool passes = false;  // integral weight and all three conditions

  bool has_integral_weight() const noexcept { return twice_weight % 2 == 0; }
  long long weight() const;  // throws when half-integral
};

FormMeta analyze(const EtaQuotient& eq);
FormMeta analyze(const ModularFormSpec& spec);

/// chi(d) = kronecker(character_disc, d). Throws when the weight is not
/// integral.
Symbol character_at(const EtaQuotient& eq, std::int64_t d);

/// floor(k N / 12 * prod_{t | N prime} (1 + 1/t)).
long long sturm_bound(long long k, std::uint64_t level);

std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

enum class OffsetMode {
  automatic,    // materialize when the offset is a non-negative multiple of 24
  materialize,  // materialize or throw
  keep,         // leave the q^(offset/24) prefactor symbolic
};

/// prod_delta (q^delta; q^delta)^{r_delta} with offset24 = sum delta r_delta.
/// trunc refers to the returned series (after materialization).
template <typename C>
Series<C> eta_expansion(const EtaQuotient& eq, std::size_t trunc, std::uint64_t modulus,
                        OffsetMode mode = OffsetMode::automatic);

/// 1 + 240 sum sigma_3(n) q^n.
template <typename C>
Series<C> eisenstein_e4(std::size_t trunc, std::uint64_t modulus);

/// eta_expansion(spec.eta) * E4^(spec.e4_power).
template <typename C>
Series<C> form_expansion(const ModularFormSpec& spec, std::size_t trunc, std::uint64_t modulus,
                         OffsetMode mode = OffsetMode::automatic);

/// b(n) = a(pn) + chi(p) p^(k-1) a(n/p), with a(n/p) = 0 when p does not
/// divide n. Needs an integral (materialized) expansion and
/// f.trunc >= p * out_trunc; out_trunc defaults to floor(f.trunc / p).
template <typename C>
Series<C> hecke_tp(const Series<C>& f, std::uint64_t p, long long weight, Symbol chi_p,
                   std::optional<std::size_t> out_trunc = std::nullopt);

}  // namespace rcolor
