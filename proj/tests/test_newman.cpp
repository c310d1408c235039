#include <gtest/gtest.h>

#include <stdexcept>

#include "rcolor/error.hpp"
#include "rcolor/newman.hpp"
#include "rcolor/partitions.hpp"
#include "support.hpp"

using namespace rcolor;
using namespace rcolor::testing;

namespace {

// The exponent period written out case by case.
int omega_cases(int xi_mod5, int p_mod5) {
  const int x = ((xi_mod5 % 5) + 5) % 5;
  const bool pm1 = x == 1 || x == 4;
  const bool pm2 = x == 2 || x == 3;
  if (x == 0) return 4;
  if ((pm1 && p_mod5 == 1) || (pm2 && p_mod5 == 4)) return 6;
  if ((pm2 && p_mod5 == 2) || (pm1 && p_mod5 == 3)) return 8;
  if ((pm2 && p_mod5 == 1) || (pm1 && p_mod5 == 4)) return 10;
  if ((pm1 && p_mod5 == 2) || (pm2 && p_mod5 == 3)) return 12;
  return -1;
}

const ExactSeries& c_exact() {
  static const ExactSeries c = c_series<BigInt>(40000, 0);
  return c;
}

}  // namespace

TEST(Newman, Shift) {
  EXPECT_EQ(newman_shift(5), 5u);
  EXPECT_EQ(newman_shift(7), 10u);
  EXPECT_EQ(newman_shift(11), 25u);
  EXPECT_EQ(newman_shift(13), 35u);
}

TEST(Newman, OmegaTableMatchesCaseAnalysis) {
  for (int xi = -2; xi <= 2; ++xi) {
    for (int pm = 1; pm <= 4; ++pm) EXPECT_EQ(omega(xi, pm), omega_cases(xi, pm)) << xi << " " << pm;
  }
  EXPECT_THROW(omega(1, 0), std::invalid_argument);
  EXPECT_THROW(omega(3, 1), std::invalid_argument);
}

TEST(Newman, SymmetricResidue) {
  EXPECT_EQ(symmetric_mod5(BigInt(-4)), 1);
  EXPECT_EQ(symmetric_mod5(BigInt(8)), -2);
  EXPECT_EQ(symmetric_mod5(BigInt(-2)), -2);
  EXPECT_EQ(symmetric_mod5(BigInt(10)), 0);
}

TEST(Newman, XiValues) {
  const auto& c = c_exact();
  EXPECT_EQ(xi(5, c), 2);
  EXPECT_EQ(xi(7, c), 0);
  EXPECT_EQ(xi(11, c), -4);
  EXPECT_EQ(xi(13, c), -2);
  // Against the definition, with the table-based Legendre symbol.
  for (std::uint64_t p = 5; p < 160; ++p) {
    if (!trial_division_prime(p)) continue;
    const std::uint64_t t = 5 * (p * p - 1) / 24;
    const BigInt want = c[t] + legendre_oracle(static_cast<long long>(2 * t), static_cast<long long>(p));
    EXPECT_EQ(xi(p, c), want) << p;
  }
  EXPECT_THROW(xi(3, c), SeriesError);
  EXPECT_THROW(xi(9, c), SeriesError);
  EXPECT_THROW(xi(1009, c_series<BigInt>(100, 0)), TruncationError);
}

TEST(Newman, Profiles) {
  const auto& c = c_exact();
  const auto p5 = newman_profile(5, c);
  EXPECT_FALSE(p5.omega.has_value());
  const auto p11 = newman_profile(11, c);
  EXPECT_EQ(p11.xi_mod5, 1);
  EXPECT_EQ(p11.p_mod5, 1);
  EXPECT_EQ(p11.omega, 6);
  const auto p7 = newman_profile(7, c);
  EXPECT_EQ(p7.omega, 4);
}

TEST(Newman, RecurrenceMatchesIndependentEvaluation) {
  const auto& c = c_exact();
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL}) {
    const long long t = static_cast<long long>(newman_shift(p));
    const BigInt x = xi(p, c);
    for (long long n = 0; n <= 60; ++n) {
      const BigInt lhs = c[static_cast<std::size_t>(static_cast<long long>(p * p) * n + t)];
      BigInt rhs = (x - legendre_oracle(2 * t - 2 * n, static_cast<long long>(p))) * c[static_cast<std::size_t>(n)];
      const long long d = n - t;
      if (d >= 0 && d % static_cast<long long>(p * p) == 0) {
        rhs -= BigInt(static_cast<long>(p)) * c[static_cast<std::size_t>(d / static_cast<long long>(p * p))];
      }
      ASSERT_EQ(lhs, rhs) << "p=" << p << " n=" << n;
    }
    const auto rep = verify_recurrence(p, 60, c);
    EXPECT_TRUE(rep.pass) << p;
  }
}

TEST(Newman, RecurrenceDetectsCorruption) {
  auto v = std::vector<BigInt>(c_exact().coeffs().begin(), c_exact().coeffs().begin() + 2000);
  v[7 * 7 * 3 + 10] += 1;
  const auto rep = verify_recurrence(7, 30, ExactSeries(std::move(v), 0));
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.first_failure, 3u);
  EXPECT_THROW(verify_recurrence(13, 60, c_series<BigInt>(100, 0)), TruncationError);
}

TEST(Newman, GeneratedFamilies) {
  const auto& c = c_exact();
  const auto p11 = newman_profile(11, c);
  const auto legendre11 = legendre_family(11, 0, p11);
  EXPECT_EQ(legendre11.A, 605u);
  EXPECT_EQ(legendre11.B, 126u);
  ASSERT_TRUE(legendre11.filter.has_value());
  EXPECT_EQ(legendre11.filter->residues, (std::vector<std::uint64_t>{1, 4, 6, 7, 8}));
  for (std::uint64_t j : {1, 4, 6, 7, 8}) EXPECT_EQ(legendre11.index(11 + j), 6655u + 605 * j + 126);

  const auto nd11 = nondivisible_family(11, 0, p11);
  EXPECT_EQ(nd11.A, 5u * 161051u);
  EXPECT_EQ(nd11.B, 1845376u);
  EXPECT_FALSE(nd11.admits(22));
  EXPECT_TRUE(nd11.admits(23));

  const auto p7 = newman_profile(7, c);
  const auto nd7 = nondivisible_family(7, 0, p7);
  EXPECT_EQ(nd7.A, 1715u);
  EXPECT_EQ(nd7.B, 2501u);
  EXPECT_THROW(legendre_family(7, 0, p7), SeriesError);

  // xi(13) == -2 (mod 5): no Legendre class can match.
  const auto p13 = newman_profile(13, c);
  EXPECT_TRUE(legendre_family(13, 0, p13).vacuous());

  EXPECT_THROW(nondivisible_family(13, 0, p13), TruncationError);
  EXPECT_THROW(nondivisible_family(5, 0, newman_profile(5, c)), SeriesError);
  EXPECT_THROW(nondivisible_family(11, 0, p7), SeriesError);
}

TEST(Newman, CFamiliesMirrorA3Families) {
  const auto& c = c_exact();
  const auto p11 = newman_profile(11, c);
  const auto fams = derived_c_families(11, 0, p11);
  ASSERT_EQ(fams.size(), 2u);
  const auto a3fam = legendre_family(11, 0, p11);
  // a3 index 5(An+B)+1 corresponds to c index An+B.
  EXPECT_EQ(5 * fams[1].A, a3fam.A);
  EXPECT_EQ(5 * fams[1].B + 1, a3fam.B);
  EXPECT_EQ(fams[1].filter->residues, a3fam.filter->residues);
}

TEST(Newman, ProportionalityBothRoutes) {
  const auto idx = proportionality_indices(0);
  EXPECT_EQ(idx.A, 625u);
  EXPECT_EQ(idx.B, 651u);
  EXPECT_EQ(idx.factor, 2u);
  const auto idx1 = proportionality_indices(1);
  EXPECT_EQ(idx1.A, 15625u);
  EXPECT_EQ(idx1.B, 16276u);
  EXPECT_EQ(idx1.factor, 4u);

  const A3Mod5Provider via_c(625 * 30 + 651, A3Mod5Provider::Route::via_c);
  const A3Mod5Provider direct(625 * 30 + 651, A3Mod5Provider::Route::direct);
  EXPECT_TRUE(proportionality_check(0, 30, via_c).pass);
  EXPECT_TRUE(proportionality_check(0, 30, direct).pass);
  for (std::uint64_t i = 1; i <= 625 * 30 + 651; i += 5) ASSERT_EQ(via_c.at(i), direct.at(i)) << i;
  EXPECT_THROW(via_c.at(2), TruncationError);
  EXPECT_THROW(proportionality_check(0, 31, via_c), TruncationError);

  EXPECT_TRUE(c_proportionality_check(0, 100, c_series<std::uint64_t>(125 * 100 + 130, 5)).pass);
}
