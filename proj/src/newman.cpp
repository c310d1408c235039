#include "rcolor/newman.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

#include "rcolor/arith.hpp"
#include "rcolor/error.hpp"
#include "rcolor/partitions.hpp"

namespace rcolor {

namespace {

void require_newman_prime(std::uint64_t p) {
  if (p < 5 || !is_prime(p)) throw SeriesError("expected a prime p >= 5, got " + std::to_string(p));
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw TruncationError("index arithmetic overflows 64 bits");
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) out = checked_mul(out, base);
  return out;
}

// Indices for (25 P - 1)/24 with P = p^e; 24 | 25P - 1 whenever p >= 5 and
// e is even.
std::uint64_t a3_offset(std::uint64_t P) {
  const std::uint64_t num = checked_mul(25, P) - 1;
  if (num % 24 != 0) throw SeriesError("24 does not divide 25 p^e - 1");
  return num / 24;
}

std::uint64_t c_offset(std::uint64_t P) {
  const std::uint64_t num = checked_mul(5, P - 1);
  if (num % 24 != 0) throw SeriesError("24 does not divide 5 (p^e - 1)");
  return num / 24;
}

void enforce_ceiling(const CongruenceFamily& fam, const FamilyLimits& limits) {
  if (fam.B >= limits.ceiling) {
    throw TruncationError("family " + fam.label + " has B = " + std::to_string(fam.B) +
                          " beyond the scan ceiling " + std::to_string(limits.ceiling));
  }
}

ResidueFilter nondivisible_filter(std::uint64_t p) {
  ResidueFilter f{p, {}};
  for (std::uint64_t j = 1; j < p; ++j) f.residues.push_back(j);
  return f;
}

// Classes j mod p with ((2t - 2j)/p) == xi (mod 5).
ResidueFilter legendre_filter(std::uint64_t p, int xi_mod5) {
  const auto two_t = static_cast<std::int64_t>(2 * newman_shift(p));
  ResidueFilter f{p, {}};
  for (std::uint64_t j = 0; j < p; ++j) {
    const int sym = to_int(legendre(two_t - 2 * static_cast<std::int64_t>(j), p));
    if (((sym - xi_mod5) % 5 + 5) % 5 == 0) f.residues.push_back(j);
  }
  return f;
}

const NewmanProfile& require_profile(std::uint64_t p, const NewmanProfile& profile) {
  if (profile.p != p) throw SeriesError("profile computed for a different prime");
  if (!profile.omega) throw SeriesError("omega undefined for p = " + std::to_string(p));
  return profile;
}

}  // namespace

std::uint64_t newman_shift(std::uint64_t p) { return 5 * (p * p - 1) / 24; }

int symmetric_mod5(const BigInt& v) {
  const auto r = static_cast<int>(mpz_fdiv_ui(v.get_mpz_t(), 5));
  return r > 2 ? r - 5 : r;
}

BigInt xi(std::uint64_t p, const ExactSeries& c) {
  require_newman_prime(p);
  const std::uint64_t t = newman_shift(p);
  return c.coeff(t) + to_int(legendre(static_cast<std::int64_t>(2 * t), p));
}

int omega(int xi_mod5, int p_mod5) {
  if (p_mod5 < 1 || p_mod5 > 4) throw std::invalid_argument("omega: p must not be divisible by 5");
  if (xi_mod5 < -2 || xi_mod5 > 2) throw std::invalid_argument("omega: xi residue must lie in {-2..2}");
  if (xi_mod5 == 0) return 4;
  // Rows: |xi| = 1, 2. Columns: p mod 5 = 1..4.
  static constexpr std::array<std::array<int, 4>, 2> kTable{{
      {6, 12, 8, 10},
      {10, 8, 12, 6},
  }};
  const int row = (xi_mod5 == 1 || xi_mod5 == -1) ? 0 : 1;
  return kTable[static_cast<std::size_t>(row)][static_cast<std::size_t>(p_mod5 - 1)];
}

NewmanProfile newman_profile(std::uint64_t p, const ExactSeries& c) {
  NewmanProfile prof;
  prof.p = p;
  prof.xi = xi(p, c);
  prof.xi_mod5 = symmetric_mod5(prof.xi);
  prof.p_mod5 = static_cast<int>(p % 5);
  if (prof.p_mod5 != 0) prof.omega = omega(prof.xi_mod5, prof.p_mod5);
  return prof;
}

std::size_t recurrence_trunc(std::uint64_t p, std::size_t n_max) { return p * p * n_max + newman_shift(p); }

RecurrenceReport verify_recurrence(std::uint64_t p, std::size_t n_max, const ExactSeries& c) {
  require_newman_prime(p);
  if (!c.exact()) throw SeriesError("verify_recurrence needs the exact c series");
  const std::size_t need = recurrence_trunc(p, n_max);
  if (c.trunc() < need) {
    throw TruncationError("recurrence for p = " + std::to_string(p) + " needs c to order " + std::to_string(need));
  }
  const std::uint64_t t = newman_shift(p);
  const std::uint64_t p2 = p * p;
  const BigInt xi_p = xi(p, c);
  RecurrenceReport rep{p, n_max, true, std::nullopt, 0, 0};
  for (std::size_t n = 0; n <= n_max; ++n) {
    const int sym = to_int(legendre(static_cast<std::int64_t>(2 * t) - 2 * static_cast<std::int64_t>(n), p));
    BigInt rhs = (xi_p - sym) * c[n];
    if (n >= t && (n - t) % p2 == 0) rhs -= BigInt(static_cast<unsigned long>(p)) * c[(n - t) / p2];
    const BigInt& lhs = c[p2 * n + t];
    if (lhs != rhs) {
      rep.pass = false;
      rep.first_failure = n;
      rep.lhs = lhs;
      rep.rhs = rhs;
      break;
    }
  }
  return rep;
}

bool ResidueFilter::admits(std::uint64_t n) const {
  return std::binary_search(residues.begin(), residues.end(), n % p);
}

std::uint64_t CongruenceFamily::index(std::uint64_t n) const {
  const std::uint64_t an = checked_mul(A, n);
  std::uint64_t out = 0;
  if (__builtin_add_overflow(an, B, &out)) throw TruncationError("index arithmetic overflows 64 bits");
  return out;
}

CongruenceFamily nondivisible_family(std::uint64_t p, unsigned k, const NewmanProfile& profile, FamilyLimits limits) {
  require_newman_prime(p);
  if (p == 5) throw SeriesError("p = 5 has no omega; use the proportionality check");
  const int w = *require_profile(p, profile).omega;
  const unsigned e = static_cast<unsigned>(w) * (k + 1);
  const std::uint64_t P = checked_pow(p, e);
  CongruenceFamily fam;
  fam.series = FamilySeries::a_r;
  fam.r = 3;
  fam.A = checked_mul(5, P / p);
  fam.B = a3_offset(P);
  fam.modulus = 5;
  fam.filter = nondivisible_filter(p);
  fam.label = "a3 nondivisible p=" + std::to_string(p) + " k=" + std::to_string(k);
  enforce_ceiling(fam, limits);
  return fam;
}

CongruenceFamily legendre_family(std::uint64_t p, unsigned k, const NewmanProfile& profile, FamilyLimits limits) {
  require_newman_prime(p);
  if (p == 5) throw SeriesError("p = 5 has no omega; use the proportionality check");
  const NewmanProfile& prof = require_profile(p, profile);
  if (prof.xi_mod5 == 0) throw SeriesError("second family requires xi(p) != 0 (mod 5)");
  const unsigned e = static_cast<unsigned>(*prof.omega) * k + 2;
  const std::uint64_t P = checked_pow(p, e);
  CongruenceFamily fam;
  fam.series = FamilySeries::a_r;
  fam.r = 3;
  fam.A = checked_mul(5, P);
  fam.B = a3_offset(P);
  fam.modulus = 5;
  fam.filter = legendre_filter(p, prof.xi_mod5);
  fam.label = "a3 legendre p=" + std::to_string(p) + " k=" + std::to_string(k);
  enforce_ceiling(fam, limits);
  return fam;
}

std::vector<CongruenceFamily> derived_c_families(std::uint64_t p, unsigned k, const NewmanProfile& profile,
                                                 FamilyLimits limits) {
  require_newman_prime(p);
  if (p == 5) throw SeriesError("c-level families are not applicable for p = 5");
  const NewmanProfile& prof = require_profile(p, profile);
  const auto w = static_cast<unsigned>(*prof.omega);
  std::vector<CongruenceFamily> out;

  // c(p^{w(k+1)-1} n + 5(p^{w(k+1)} - 1)/24) == 0 for p not dividing n.
  {
    const std::uint64_t P = checked_pow(p, w * (k + 1));
    CongruenceFamily fam;
    fam.series = FamilySeries::c;
    fam.A = P / p;
    fam.B = c_offset(P);
    fam.modulus = 5;
    fam.filter = nondivisible_filter(p);
    fam.label = "c-nondivisible p=" + std::to_string(p) + " k=" + std::to_string(k);
    enforce_ceiling(fam, limits);
    out.push_back(std::move(fam));
  }
  // c(p^{wk+2} n + 5(p^{wk+2} - 1)/24) == 0 on the Legendre classes.
  if (prof.xi_mod5 != 0) {
    const std::uint64_t P = checked_pow(p, w * k + 2);
    CongruenceFamily fam;
    fam.series = FamilySeries::c;
    fam.A = P;
    fam.B = c_offset(P);
    fam.modulus = 5;
    fam.filter = legendre_filter(p, prof.xi_mod5);
    fam.label = "c-legendre p=" + std::to_string(p) + " k=" + std::to_string(k);
    enforce_ceiling(fam, limits);
    out.push_back(std::move(fam));
  }
  return out;
}

A3Mod5Provider::A3Mod5Provider(std::uint64_t max_index, Route route) : max_index_(max_index) {
  if (route == Route::via_c) {
    c_mod5_ = c_series<std::uint64_t>(max_index / 5, 5);
  } else {
    a3_mod5_ = a_r_series<std::uint64_t>({3, max_index, 5});
  }
}

std::uint64_t A3Mod5Provider::at(std::uint64_t index) const {
  if (index > max_index_) {
    throw TruncationError("a_3 index " + std::to_string(index) + " beyond provider limit " +
                          std::to_string(max_index_));
  }
  if (a3_mod5_) return a3_mod5_->coeff(index);
  if (index % 5 != 1) throw TruncationError("c route only answers indices congruent to 1 mod 5");
  return (3 * c_mod5_->coeff((index - 1) / 5)) % 5;
}

ProportionalityIndices proportionality_indices(unsigned k) {
  const std::uint64_t A = checked_mul(25, checked_pow(5, 2 * (k + 1)));
  const std::uint64_t B = a3_offset(checked_pow(5, 2 * (k + 2)));
  return {A, B, pow_mod(2, k + 1, 5)};
}

ProportionalityReport proportionality_check(unsigned k, std::size_t n_max, const A3Mod5Provider& a3) {
  const auto [A, B, factor] = proportionality_indices(k);
  const std::uint64_t top = checked_mul(A, n_max) + B;
  if (top > a3.max_index()) {
    throw TruncationError("proportionality check needs a_3 to index " + std::to_string(top));
  }
  ProportionalityReport rep;
  rep.n_max = n_max;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const std::uint64_t li = A * n + B;
    const std::uint64_t ri = 25 * n + 26;
    const std::uint64_t lhs = a3.at(li);
    const std::uint64_t rhs = (factor * a3.at(ri)) % 5;
    if (lhs != rhs) {
      rep.pass = false;
      rep.first_failure = n;
      rep.lhs_index = li;
      rep.rhs_index = ri;
      rep.lhs = lhs;
      rep.rhs = rhs;
      break;
    }
  }
  return rep;
}

ProportionalityReport c_proportionality_check(unsigned k, std::size_t n_max, const ModSeries& c_mod5) {
  if (c_mod5.modulus() != 5) throw SeriesError("c_proportionality_check needs c modulo 5");
  const std::uint64_t P = checked_pow(5, 2 * k + 4);
  const std::uint64_t A = P / 5;
  const std::uint64_t B = c_offset(P);
  const std::uint64_t factor = pow_mod(2, k + 1, 5);
  ProportionalityReport rep;
  rep.n_max = n_max;
  if (checked_mul(A, n_max) + B > c_mod5.trunc()) {
    throw TruncationError("c-level proportionality check needs c to index " + std::to_string(A * n_max + B));
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    const std::uint64_t li = A * n + B;
    const std::uint64_t ri = 5 * n + 5;
    const std::uint64_t lhs = c_mod5[li];
    const std::uint64_t rhs = (factor * c_mod5[ri]) % 5;
    if (lhs != rhs) {
      rep.pass = false;
      rep.first_failure = n;
      rep.lhs_index = li;
      rep.rhs_index = ri;
      rep.lhs = lhs;
      rep.rhs = rhs;
      break;
    }
  }
  return rep;
}

}  // namespace rcolor
