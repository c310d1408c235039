#pragma once

// Generating functions for a_r(n) (partitions with r-colored odd parts and
// uncolored even parts), the auxiliary series c(n) = coefficients of f1*f2^2,
// and two independent oracles used to cross-check them.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rcolor/series.hpp"

namespace rcolor {

struct PartitionSeriesRequest {
  unsigned r = 1;          // colors available to odd parts, >= 1
  std::size_t trunc = 0;
  std::uint64_t modulus = 0;  // 0 = exact
};

/// f2^(r-1) / f1^r: one sparse multiplication per f2 factor and one sparse
/// division per f1 factor.
template <typename C>
Series<C> a_r_series(const PartitionSeriesRequest& req);

/// f1 * f2^2.
template <typename C>
Series<C> c_series(std::size_t trunc, std::uint64_t modulus);

/// Largest n accepted by the enumeration oracle.
inline constexpr unsigned kEnumerationLimit = 14;

/// Counts colored partitions of n by exhaustive recursion over colored part
/// labels. Independent of any series code. Throws std::out_of_range when
/// n > kEnumerationLimit.
std::uint64_t enumerate_colored_partitions(unsigned n, unsigned r);

/// p(0..n_max) from Euler's pentagonal recurrence.
std::vector<BigInt> p_euler_oracle(std::size_t n_max);

}  // namespace rcolor
