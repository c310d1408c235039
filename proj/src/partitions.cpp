#include "rcolor/partitions.hpp"

#include <stdexcept>
#include <string>

#include "rcolor/error.hpp"

namespace rcolor {

namespace {

std::uint64_t ring_modulus_check(std::uint64_t modulus, bool exact) {
  if (exact && modulus != 0) throw SeriesError("exact series requested with nonzero modulus");
  if (!exact && modulus < 2) throw SeriesError("modular series requested with modulus < 2");
  return modulus;
}

}  // namespace

template <typename C>
Series<C> a_r_series(const PartitionSeriesRequest& req) {
  if (req.r == 0) throw SeriesError("a_r_series: r must be at least 1");
  const std::uint64_t m = ring_modulus_check(req.modulus, std::is_same_v<C, BigInt>);
  const auto f1 = euler_factor<C>(1, 1, req.trunc, m);
  const auto f2 = euler_factor<C>(2, 1, req.trunc, m);
  Series<C> s = Series<C>::one(req.trunc, m);
  for (unsigned i = 1; i < req.r; ++i) s = mul(s, f2);
  for (unsigned i = 0; i < req.r; ++i) s = divide(s, f1);
  return s;
}

template <typename C>
Series<C> c_series(std::size_t trunc, std::uint64_t modulus) {
  const std::uint64_t m = ring_modulus_check(modulus, std::is_same_v<C, BigInt>);
  const auto f2 = euler_factor<C>(2, 1, trunc, m);
  return mul(mul(euler_factor<C>(1, 1, trunc, m), f2), f2);
}

template Series<BigInt> a_r_series<BigInt>(const PartitionSeriesRequest&);
template Series<std::uint64_t> a_r_series<std::uint64_t>(const PartitionSeriesRequest&);
template Series<BigInt> c_series<BigInt>(std::size_t, std::uint64_t);
template Series<std::uint64_t> c_series<std::uint64_t>(std::size_t, std::uint64_t);

namespace {

struct Label {
  unsigned size;
};

// Number of multisets of labels[0..idx] summing to `remaining`; every leaf
// of the recursion is one colored partition.
std::uint64_t count_from(const std::vector<Label>& labels, std::size_t idx, unsigned remaining) {
  if (remaining == 0) return 1;
  std::uint64_t total = 0;
  for (std::size_t i = idx; i < labels.size(); ++i) {
    if (labels[i].size <= remaining) total += count_from(labels, i, remaining - labels[i].size);
  }
  return total;
}

}  // namespace

std::uint64_t enumerate_colored_partitions(unsigned n, unsigned r) {
  if (n > kEnumerationLimit) {
    throw std::out_of_range("enumeration oracle limited to n <= " + std::to_string(kEnumerationLimit));
  }
  if (r == 0) throw std::invalid_argument("r must be at least 1");
  // Each odd size appears once per color; even sizes appear once.
  std::vector<Label> labels;
  for (unsigned s = n; s >= 1; --s) {
    const unsigned copies = (s % 2 == 1) ? r : 1;
    for (unsigned c = 0; c < copies; ++c) labels.push_back({s});
  }
  return count_from(labels, 0, n);
}

std::vector<BigInt> p_euler_oracle(std::size_t n_max) {
  std::vector<BigInt> p(n_max + 1);
  p[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    BigInt acc = 0;
    for (std::size_t k = 1;; ++k) {
      const std::size_t g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      const std::size_t g2 = k * (3 * k + 1) / 2;
      BigInt term = p[n - g1];
      if (g2 <= n) term += p[n - g2];
      if (k % 2 == 1) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    p[n] = acc;
  }
  return p;
}

}  // namespace rcolor
