#include <gtest/gtest.h>

#include <vector>

#include "rcolor/error.hpp"
#include "rcolor/series.hpp"
#include "rcolor/simd/kernels.hpp"
#include "support.hpp"

using namespace rcolor;
using namespace rcolor::testing;

namespace {

template <typename C>
std::vector<C> as_vector(const Series<C>& s) {
  return {s.coeffs().begin(), s.coeffs().end()};
}

// Invertible random series: lead coefficient +-1 (exact) or a unit (mod m).
ExactSeries random_unit_exact(Rng& rng, std::size_t trunc, long long bound, double density) {
  auto s = random_exact_series(rng, trunc, bound, density);
  auto v = as_vector(s);
  v[0] = uniform(rng, 0, 1) ? 1 : -1;
  return ExactSeries(std::move(v), 0);
}

ModSeries random_unit_mod(Rng& rng, std::size_t trunc, std::uint64_t m, double density) {
  auto v = as_vector(random_mod_series(rng, trunc, m, density));
  do {
    v[0] = uniform(rng, 1, m - 1);
  } while (std::gcd(v[0], m) != 1);
  return ModSeries(std::move(v), m);
}

}  // namespace

TEST(Series, ConstructionValidates) {
  EXPECT_THROW(ModSeries({}, 5), SeriesError);
  EXPECT_THROW(ModSeries({1, 5}, 5), SeriesError);
  EXPECT_THROW(ModSeries({1}, 1), SeriesError);
  EXPECT_THROW(ModSeries({1}, simd::kMaxModulus + 1), SeriesError);
  EXPECT_THROW(ExactSeries({BigInt(1)}, 7), SeriesError);
  EXPECT_NO_THROW(ModSeries({4}, 5));
}

TEST(Series, CoefficientAccessIsBoundsChecked) {
  const auto s = ModSeries::one(3, 5);
  EXPECT_EQ(s.coeff(0), 1u);
  EXPECT_EQ(s.coeff(3), 0u);
  EXPECT_THROW(s.coeff(4), TruncationError);
  EXPECT_THROW(s.truncated(4), TruncationError);
  EXPECT_EQ(s.truncated(1).trunc(), 1u);
}

TEST(Series, MismatchedModuliOrOffsetsRejected) {
  const auto a = ModSeries::one(3, 5);
  const auto b = ModSeries::one(3, 7);
  EXPECT_THROW(add(a, b), SeriesError);
  EXPECT_THROW(mul(a, b), SeriesError);
  EXPECT_THROW(add(a, shift_offset(a, 1)), SeriesError);
}

TEST(Series, FromIntegersReducesSigned) {
  const long long raw[] = {-1, 6, -13, 0};
  const auto s = ModSeries::from_integers(raw, 5);
  EXPECT_EQ(as_vector(s), (std::vector<std::uint64_t>{4, 1, 2, 0}));
  const auto e = ExactSeries::from_integers(raw, 0);
  EXPECT_EQ(e[2], -13);
}

TEST(Series, RingAxiomsModular) {
  Rng rng(1001);
  for (std::uint64_t m : {2ULL, 3ULL, 5ULL, 12ULL, 1000003ULL, (1ULL << 61) - 1}) {
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = uniform(rng, 0, 90);
      const auto a = random_mod_series(rng, n, m, 0.8);
      const auto b = random_mod_series(rng, n, m, 0.3);
      const auto c = random_mod_series(rng, n, m, 0.05);
      const auto zero = ModSeries::zero(n, m);
      const auto one = ModSeries::one(n, m);
      EXPECT_EQ(add(a, b), add(b, a));
      EXPECT_EQ(mul(a, b), mul(b, a));
      EXPECT_EQ(add(add(a, b), c), add(a, add(b, c)));
      EXPECT_EQ(mul(mul(a, b), c), mul(a, mul(b, c)));
      EXPECT_EQ(mul(a, add(b, c)), add(mul(a, b), mul(a, c)));
      EXPECT_EQ(add(a, zero), a);
      EXPECT_EQ(mul(a, one), a);
      EXPECT_EQ(sub(a, a), zero);
      EXPECT_EQ(add(a, negate(a)), zero);
      EXPECT_EQ(scale(a, 3), add(a, add(a, a)));
      EXPECT_EQ(scale(a, -1), negate(a));
    }
  }
}

TEST(Series, RingAxiomsExact) {
  Rng rng(1002);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = uniform(rng, 0, 60);
    const auto a = random_exact_series(rng, n, 1000, 0.9);
    const auto b = random_exact_series(rng, n, 1'000'000, 0.2);
    const auto c = random_exact_series(rng, n, 50, 0.5);
    EXPECT_EQ(mul(a, b), mul(b, a));
    EXPECT_EQ(mul(mul(a, b), c), mul(a, mul(b, c)));
    EXPECT_EQ(mul(a, add(b, c)), add(mul(a, b), mul(a, c)));
    EXPECT_EQ(sub(add(a, b), b), a);
  }
}

TEST(Series, ProductMatchesSchoolbook) {
  Rng rng(1003);
  for (double density : {1.0, 0.3, 0.01}) {
    const auto a = random_exact_series(rng, 150, 1'000'000'000, 1.0);
    const auto b = random_exact_series(rng, 150, 1'000'000'000, density);
    EXPECT_EQ(as_vector(mul(a, b)), naive_mul(as_vector(a), as_vector(b), 150));
  }
  // Lengths spanning several output tiles, both sides sparse and dense.
  for (double density : {0.001, 0.2}) {
    const auto a = random_mod_series(rng, 20000, 7, 0.002);
    const auto b = random_mod_series(rng, 20000, 7, density);
    EXPECT_EQ(as_vector(mul(a, b)), naive_mul_mod(as_vector(a), as_vector(b), 20000, 7));
  }
}

TEST(Series, InvertRoundTrip) {
  Rng rng(1004);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = uniform(rng, 0, 700);  // crosses division blocks
    const auto a = random_unit_exact(rng, n, 5, uniform(rng, 0, 1) ? 0.02 : 0.9);
    EXPECT_EQ(mul(invert(a), a), ExactSeries::one(n, 0));
  }
  for (std::uint64_t m : {std::uint64_t{5}, std::uint64_t{9}, std::uint64_t{1000003}, simd::kMaxModulus - 1}) {
    for (int t = 0; t < 8; ++t) {
      const std::size_t n = uniform(rng, 0, 1500);
      const auto a = random_unit_mod(rng, n, m, uniform(rng, 0, 1) ? 0.01 : 0.9);
      EXPECT_EQ(mul(invert(a), a), ModSeries::one(n, m));
      const auto b = random_mod_series(rng, n, m, 0.5);
      EXPECT_EQ(mul(divide(b, a), a), b);
    }
  }
}

TEST(Series, DivideNonUnitThrows) {
  const auto a = ModSeries::from_integers(std::vector<long long>{3, 1}, 9);
  EXPECT_ANY_THROW(invert(a));
  const auto z = ExactSeries::from_integers(std::vector<long long>{2, 1}, 0);
  EXPECT_ANY_THROW(invert(z));
}

TEST(Series, EulerFactorMatchesProduct) {
  for (std::uint64_t delta : {1ULL, 2ULL, 7ULL}) {
    for (long long r : {1LL, 3LL, 24LL, -1LL, -5LL, -26LL}) {
      const std::size_t n = 120;
      const auto got = euler_factor<BigInt>(delta, r, n, 0);
      const auto want = r > 0 ? naive_euler_power(delta, static_cast<unsigned>(r), n)
                              : naive_euler_inverse_power(delta, static_cast<unsigned>(-r), n);
      EXPECT_EQ(as_vector(got), want) << delta << " " << r;
    }
  }
}

TEST(Series, PentagonalSupport) {
  const auto f1 = euler_factor<BigInt>(1, 1, 2000, 0);
  std::vector<int> expect(2001, 0);
  for (long long k = -40; k <= 40; ++k) {
    const long long e = k * (3 * k - 1) / 2;
    if (e <= 2000) expect[static_cast<std::size_t>(e)] = (k % 2 == 0) ? 1 : -1;
  }
  for (std::size_t i = 0; i <= 2000; ++i) EXPECT_EQ(f1[i], expect[i]) << i;
}

TEST(Series, FrobeniusPoweringEquivalence) {
  const std::size_t n = 200;
  const auto f1 = euler_factor<std::uint64_t>(1, 1, n, 3);
  const auto fast = pow(f1, 1701, PowStrategy::automatic);
  const auto slow = pow(f1, 1701, PowStrategy::naive);
  EXPECT_EQ(fast, slow);
  // 1701 = 3^5 * 7, so f1^1701 == f_243^7 (mod 3).
  EXPECT_EQ(fast, euler_factor<std::uint64_t>(243, 7, n, 3));
  EXPECT_EQ(fast, reduce(pow(euler_factor<BigInt>(1, 1, n, 0), 1701), 3));

  Rng rng(1005);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
    for (int t = 0; t < 6; ++t) {
      const auto a = random_mod_series(rng, 120, p, 0.6);
      const std::uint64_t e = uniform(rng, 0, 400);
      EXPECT_EQ(pow(a, e, PowStrategy::automatic), pow(a, e, PowStrategy::naive)) << p << "^" << e;
    }
  }
}

TEST(Series, ReductionCommutesWithOperations) {
  Rng rng(1006);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = uniform(rng, 1, 300);
    const auto a = random_unit_exact(rng, n, 1000, 0.7);
    const auto b = random_exact_series(rng, n, 1'000'000, 0.4);
    for (std::uint64_t m : {3ULL, 5ULL, 7ULL, 10ULL}) {
      EXPECT_EQ(reduce(mul(a, b), m), mul(reduce(a, m), reduce(b, m)));
      EXPECT_EQ(reduce(sub(a, b), m), sub(reduce(a, m), reduce(b, m)));
      EXPECT_EQ(reduce(divide(b, a), m), divide(reduce(b, m), reduce(a, m)));
      EXPECT_EQ(reduce(pow(a, 5), m), pow(reduce(a, m), 5));
    }
  }
}

TEST(Series, OffsetsAndMaterialization) {
  const auto a = ModSeries::one(5, 7);
  const auto shifted = shift_offset(a, 48);
  EXPECT_EQ(shifted.offset24(), 48);
  const auto m = materialize(shifted);
  EXPECT_EQ(m.offset24(), 0);
  EXPECT_EQ(m[2], 1u);
  EXPECT_EQ(m.trunc(), 7u);
  EXPECT_THROW(materialize(shift_offset(a, 1)), SeriesError);
  EXPECT_THROW(materialize(shift_offset(a, -24)), SeriesError);
  EXPECT_EQ(mul(shift_offset(a, 5), shift_offset(a, 19)).offset24(), 24);
}

TEST(Series, DilateAndExtract) {
  const long long raw[] = {1, 2, 3, 4, 5, 6, 7};
  const auto s = ExactSeries::from_integers(raw, 0);
  const auto d = dilate(s, 3, 10);
  EXPECT_EQ(d.trunc(), 10u);
  EXPECT_EQ(d[0], 1);
  EXPECT_EQ(d[3], 2);
  EXPECT_EQ(d[9], 4);
  EXPECT_EQ(d[4], 0);
  const auto e = extract_progression(s, 3, 1);
  EXPECT_EQ(as_vector(e), (std::vector<BigInt>{2, 5}));
  EXPECT_THROW(dilate(s, 3, 30), TruncationError);
}
