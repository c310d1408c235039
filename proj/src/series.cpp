#include "rcolor/series.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <utility>

#include "rcolor/arith.hpp"
#include "rcolor/error.hpp"
#include "rcolor/simd/kernels.hpp"

namespace rcolor {

namespace {

// Coefficient-level and row-level arithmetic for one coefficient type.
template <typename C>
struct Ring;

template <>
struct Ring<BigInt> {
  explicit Ring(std::uint64_t /*modulus*/) {}

  static BigInt from_ll(long long v) { return BigInt(static_cast<long>(v)); }
  static bool is_zero(const BigInt& v) { return sgn(v) == 0; }
  static bool is_one(const BigInt& v) { return v == 1; }
  static BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
  static BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
  static BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
  static BigInt neg(const BigInt& a) { return -a; }

  static BigInt unit_inverse(const BigInt& a) {
    if (a == 1 || a == -1) return a;
    throw SeriesError("constant term " + a.get_str() + " is not a unit over the integers");
  }

  // dst[0..n) += c * src[0..n)
  static void axpy(BigInt* dst, const BigInt* src, std::size_t n, const BigInt& c) {
    if (c == 1) {
      for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
    } else if (c == -1) {
      for (std::size_t i = 0; i < n; ++i) dst[i] -= src[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        mpz_addmul(dst[i].get_mpz_t(), c.get_mpz_t(), src[i].get_mpz_t());
      }
    }
  }

  static void addmul(BigInt& acc, const BigInt& c, const BigInt& x) {
    mpz_addmul(acc.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
  }

  static void add_rows(BigInt* dst, const BigInt* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
  }
  static void sub_rows(BigInt* dst, const BigInt* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] -= src[i];
  }
};

template <>
struct Ring<std::uint64_t> {
  std::uint64_t m;
  const simd::ModKernels& k = simd::active_kernels();

  explicit Ring(std::uint64_t modulus) : m(modulus) {}

  std::uint64_t from_ll(long long v) const { return reduce_signed(v, m); }
  static bool is_zero(std::uint64_t v) { return v == 0; }
  static bool is_one(std::uint64_t v) { return v == 1; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= m ? s - m : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (m - b); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mul_mod(a, b, m); }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : m - a; }

  std::uint64_t unit_inverse(std::uint64_t a) const {
    try {
      return inverse_mod(a, m);
    } catch (const std::domain_error& e) {
      throw SeriesError(std::string("constant term not invertible: ") + e.what());
    }
  }

  void axpy(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t c) const {
    if (c == 0 || n == 0) return;
    if (c == 1) {
      k.add(dst, src, n, m);
    } else if (c == m - 1) {
      k.sub(dst, src, n, m);
    } else {
      k.axpy(dst, src, n, c, m);
    }
  }
  void addmul(std::uint64_t& acc, std::uint64_t c, std::uint64_t x) const {
    if (c == 1) {
      acc = add(acc, x);
    } else if (c == m - 1) {
      acc = sub(acc, x);
    } else {
      acc = static_cast<std::uint64_t>((static_cast<unsigned __int128>(c) * x + acc) % m);
    }
  }
  void add_rows(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) const { k.add(dst, src, n, m); }
  void sub_rows(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) const { k.sub(dst, src, n, m); }
};

template <typename C>
std::vector<std::pair<std::size_t, C>> nonzeros(const Series<C>& a, std::size_t upto) {
  std::vector<std::pair<std::size_t, C>> out;
  for (std::size_t i = 0; i <= upto; ++i) {
    if (!Ring<C>::is_zero(a[i])) out.emplace_back(i, a[i]);
  }
  return out;
}

template <typename C>
void require_same_modulus(const Series<C>& a, const Series<C>& b, const char* op) {
  if (a.modulus() != b.modulus()) {
    throw SeriesError(std::string(op) + ": modulus mismatch (" + std::to_string(a.modulus()) + " vs " +
                      std::to_string(b.modulus()) + ")");
  }
}

std::int64_t checked_offset_mul(std::int64_t offset, std::uint64_t factor) {
  if (offset == 0 || factor == 0) return 0;
  const __int128 v = static_cast<__int128>(offset) * static_cast<__int128>(factor);
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw SeriesError("offset overflow");
  }
  return static_cast<std::int64_t>(v);
}

template <typename C>
Series<C> with_offset(Series<C> a, std::int64_t offset24) {
  if (a.offset24() == offset24) return a;
  return shift_offset(a, offset24 - a.offset24());
}

// Rows of the blocked triangular solve; small enough that the in-block
// sequential part touches only the first few pentagonal terms.
constexpr std::size_t kDivideBlock = 256;
constexpr std::size_t kMulTile = 8192;

// An operand with fewer than trunc/kSparseRatio nonzeros is treated as sparse
// when planning powers.
constexpr std::size_t kSparseRatio = 8;

}  // namespace

// ---------------------------------------------------------------------------
// Series members

template <typename C>
Series<C>::Series(std::vector<C> coeffs, std::uint64_t modulus, std::int64_t offset24)
    : coeffs_(std::move(coeffs)), modulus_(modulus), offset24_(offset24) {
  if (coeffs_.empty()) throw SeriesError("series needs at least the constant coefficient");
  if constexpr (std::is_same_v<C, BigInt>) {
    if (modulus_ != 0) throw SeriesError("exact series must have modulus 0");
  } else {
    if (modulus_ < 2 || modulus_ > simd::kMaxModulus) {
      throw SeriesError("modulus " + std::to_string(modulus_) + " outside [2, 2^62]");
    }
    for (auto c : coeffs_) {
      if (c >= modulus_) throw SeriesError("coefficient is not a canonical residue");
    }
  }
}

template <typename C>
Series<C> Series<C>::zero(std::size_t trunc, std::uint64_t modulus, std::int64_t offset24) {
  return Series(std::vector<C>(trunc + 1, C(0)), modulus, offset24);
}

template <typename C>
Series<C> Series<C>::one(std::size_t trunc, std::uint64_t modulus) {
  std::vector<C> c(trunc + 1, C(0));
  c[0] = C(1);
  return Series(std::move(c), modulus, 0);
}

template <typename C>
Series<C> Series<C>::from_integers(std::span<const long long> values, std::uint64_t modulus,
                                   std::int64_t offset24) {
  if constexpr (std::is_same_v<C, std::uint64_t>) {
    if (modulus < 2) throw SeriesError("modular series needs modulus >= 2");
  }
  Ring<C> ring(modulus);
  std::vector<C> c;
  c.reserve(values.size());
  for (long long v : values) c.push_back(ring.from_ll(v));
  return Series(std::move(c), modulus, offset24);
}

template <typename C>
const C& Series<C>::coeff(std::size_t n) const {
  if (n >= coeffs_.size()) {
    throw TruncationError("coefficient " + std::to_string(n) + " requested from series truncated at " +
                          std::to_string(trunc()));
  }
  return coeffs_[n];
}

template <typename C>
std::size_t Series<C>::nonzero_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const C& c) { return !Ring<C>::is_zero(c); }));
}

template <typename C>
bool Series<C>::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const C& c) { return Ring<C>::is_zero(c); });
}

template <typename C>
Series<C> Series<C>::truncated(std::size_t new_trunc) const {
  if (new_trunc > trunc()) {
    throw TruncationError("cannot extend truncation from " + std::to_string(trunc()) + " to " +
                          std::to_string(new_trunc));
  }
  return Series(std::vector<C>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(new_trunc + 1)),
                modulus_, offset24_);
}

// ---------------------------------------------------------------------------
// Arithmetic

template <typename C>
Series<C> add(const Series<C>& a, const Series<C>& b) {
  require_same_modulus(a, b, "add");
  if (a.offset24() != b.offset24()) throw SeriesError("add: offset mismatch; shift explicitly");
  const std::size_t n = std::min(a.trunc(), b.trunc());
  std::vector<C> out(a.coeffs().begin(), a.coeffs().begin() + static_cast<std::ptrdiff_t>(n + 1));
  Ring<C>(a.modulus()).add_rows(out.data(), b.coeffs().data(), n + 1);
  return Series<C>(std::move(out), a.modulus(), a.offset24());
}

template <typename C>
Series<C> sub(const Series<C>& a, const Series<C>& b) {
  require_same_modulus(a, b, "sub");
  if (a.offset24() != b.offset24()) throw SeriesError("sub: offset mismatch; shift explicitly");
  const std::size_t n = std::min(a.trunc(), b.trunc());
  std::vector<C> out(a.coeffs().begin(), a.coeffs().begin() + static_cast<std::ptrdiff_t>(n + 1));
  Ring<C>(a.modulus()).sub_rows(out.data(), b.coeffs().data(), n + 1);
  return Series<C>(std::move(out), a.modulus(), a.offset24());
}

template <typename C>
Series<C> negate(const Series<C>& a) {
  Ring<C> ring(a.modulus());
  std::vector<C> out;
  out.reserve(a.trunc() + 1);
  for (const auto& c : a.coeffs()) out.push_back(ring.neg(c));
  return Series<C>(std::move(out), a.modulus(), a.offset24());
}

template <typename C>
Series<C> scale(const Series<C>& a, long long factor) {
  Ring<C> ring(a.modulus());
  const C f = ring.from_ll(factor);
  std::vector<C> out;
  out.reserve(a.trunc() + 1);
  for (const auto& c : a.coeffs()) out.push_back(ring.mul(c, f));
  return Series<C>(std::move(out), a.modulus(), a.offset24());
}

template <typename C>
Series<C> mul(const Series<C>& a, const Series<C>& b) {
  require_same_modulus(a, b, "mul");
  const std::size_t n = std::min(a.trunc(), b.trunc());
  const std::int64_t offset = a.offset24() + b.offset24();
  auto nz_a = nonzeros(a, n);
  auto nz_b = nonzeros(b, n);
  // Scatter the sparser operand's terms over the denser one.
  const bool a_sparser = nz_a.size() <= nz_b.size();
  const auto& terms = a_sparser ? nz_a : nz_b;
  const Series<C>& dense = a_sparser ? b : a;

  Ring<C> ring(a.modulus());
  std::vector<C> out(n + 1, C(0));
  if (std::max(nz_a.size(), nz_b.size()) * 8 <= n + 1) {
    // Both sides sparse: accumulate term pairs directly.
    for (const auto& [i, x] : nz_a) {
      for (const auto& [j, y] : nz_b) {
        if (i + j > n) break;
        ring.addmul(out[i + j], x, y);
      }
    }
    return Series<C>(std::move(out), a.modulus(), offset);
  }
  const C* src = dense.coeffs().data();
  // Output tiles keep the destination cache resident across all terms.
  for (std::size_t lo = 0; lo <= n; lo += kMulTile) {
    const std::size_t hi = std::min(n + 1, lo + kMulTile);
    for (const auto& [i, c] : terms) {
      if (i >= hi) break;
      const std::size_t first = std::max(lo, i);
      ring.axpy(out.data() + first, src + (first - i), hi - first, c);
    }
  }
  return Series<C>(std::move(out), a.modulus(), offset);
}

template <typename C>
Series<C> divide(const Series<C>& num, const Series<C>& den) {
  require_same_modulus(num, den, "divide");
  Ring<C> ring(num.modulus());
  const C inv0 = ring.unit_inverse(den[0]);
  const bool unit_lead = Ring<C>::is_one(inv0);
  const std::size_t n = std::min(num.trunc(), den.trunc());

  // Negated tail terms of the denominator: out[k] += (-d_j) * out[k - j].
  std::vector<std::pair<std::size_t, C>> tail;
  for (std::size_t j = 1; j <= n; ++j) {
    if (!Ring<C>::is_zero(den[j])) tail.emplace_back(j, ring.neg(den[j]));
  }

  std::vector<C> out(num.coeffs().begin(), num.coeffs().begin() + static_cast<std::ptrdiff_t>(n + 1));
  for (std::size_t lo = 0; lo <= n; lo += kDivideBlock) {
    const std::size_t hi = std::min(n + 1, lo + kDivideBlock);
    // Contributions whose source index lies before the block: vector rows.
    for (const auto& [j, c] : tail) {
      const std::size_t first = std::max(lo, j);
      const std::size_t last = std::min(hi, lo + j);
      if (first < last) ring.axpy(out.data() + first, out.data() + first - j, last - first, c);
    }
    // Contributions from inside the block: sequential.
    for (std::size_t k = lo; k < hi; ++k) {
      const std::size_t reach = k - lo;
      for (const auto& [j, c] : tail) {
        if (j > reach) break;
        ring.addmul(out[k], c, out[k - j]);
      }
      if (!unit_lead) out[k] = ring.mul(out[k], inv0);
    }
  }
  return Series<C>(std::move(out), num.modulus(), num.offset24() - den.offset24());
}

template <typename C>
Series<C> invert(const Series<C>& a) {
  return divide(Series<C>::one(a.trunc(), a.modulus()), a);
}

template <typename C>
Series<C> pow(const Series<C>& a, std::uint64_t e, PowStrategy strategy) {
  if (e == 0) return Series<C>::one(a.trunc(), a.modulus());
  if (e == 1) return a;
  const std::int64_t offset = checked_offset_mul(a.offset24(), e);
  const Series<C> base = with_offset(a, 0);
  const std::size_t n = base.trunc();

  if constexpr (std::is_same_v<C, std::uint64_t>) {
    const std::uint64_t t = base.modulus();
    if (strategy == PowStrategy::automatic && e >= t && is_prime(t)) {
      // (sum b_k q^k)^t == sum b_k q^(tk) over F_t.
      const Series<C> inner = pow(base.truncated(n / t), e / t, strategy);
      Series<C> result = dilate(inner, t, n);
      if (e % t != 0) result = mul(result, pow(base, e % t, strategy));
      return with_offset(std::move(result), offset);
    }
  }

  if (strategy == PowStrategy::automatic) {
    // Repeated multiplication by a sparse base beats squaring dense results.
    const std::size_t nnz = base.nonzero_count();
    const double repeated = static_cast<double>(e - 1) * static_cast<double>(nnz);
    const double squaring = static_cast<double>(std::bit_width(e)) * static_cast<double>(n + 1);
    if (nnz * kSparseRatio <= n + 1 && repeated <= squaring) {
      Series<C> result = base;
      for (std::uint64_t i = 1; i < e; ++i) result = mul(result, base);
      return with_offset(std::move(result), offset);
    }
  }

  Series<C> result = Series<C>::one(n, base.modulus());
  Series<C> square = base;
  std::uint64_t rem = e;
  while (true) {
    if (rem & 1U) result = mul(result, square);
    rem >>= 1U;
    if (rem == 0) break;
    square = mul(square, square);
  }
  return with_offset(std::move(result), offset);
}

template <typename C>
Series<C> shift_offset(const Series<C>& a, std::int64_t delta24) {
  std::vector<C> c(a.coeffs().begin(), a.coeffs().end());
  return Series<C>(std::move(c), a.modulus(), a.offset24() + delta24);
}

template <typename C>
Series<C> materialize(const Series<C>& a) {
  if (a.offset24() % 24 != 0) {
    throw SeriesError("cannot materialize offset " + std::to_string(a.offset24()) + "/24: not integral");
  }
  if (a.offset24() < 0) {
    throw SeriesError("cannot materialize negative offset " + std::to_string(a.offset24()) + "/24");
  }
  const auto shift = static_cast<std::size_t>(a.offset24() / 24);
  std::vector<C> c(shift + a.trunc() + 1, C(0));
  std::copy(a.coeffs().begin(), a.coeffs().end(), c.begin() + static_cast<std::ptrdiff_t>(shift));
  return Series<C>(std::move(c), a.modulus(), 0);
}

template <typename C>
Series<C> dilate(const Series<C>& a, std::size_t factor, std::size_t trunc) {
  if (factor == 0) throw SeriesError("dilate: factor must be positive");
  const std::size_t needed = trunc / factor;
  if (a.trunc() < needed) {
    throw TruncationError("dilate by " + std::to_string(factor) + " to order " + std::to_string(trunc) +
                          " needs trunc " + std::to_string(needed));
  }
  std::vector<C> c(trunc + 1, C(0));
  for (std::size_t k = 0; k <= needed; ++k) c[k * factor] = a[k];
  return Series<C>(std::move(c), a.modulus(), checked_offset_mul(a.offset24(), factor));
}

template <typename C>
Series<C> extract_progression(const Series<C>& a, std::size_t step, std::size_t start) {
  if (step == 0) throw SeriesError("progression step must be positive");
  if (start > a.trunc()) {
    throw TruncationError("progression start " + std::to_string(start) + " beyond trunc " +
                          std::to_string(a.trunc()));
  }
  const std::size_t count = (a.trunc() - start) / step;
  std::vector<C> c;
  c.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k) c.push_back(a[step * k + start]);
  return Series<C>(std::move(c), a.modulus(), 0);
}

namespace {

// sum_{k in Z} (-1)^k q^(delta k(3k-1)/2), the Euler pentagonal expansion.
template <typename C>
Series<C> pentagonal(std::uint64_t delta, std::size_t trunc, std::uint64_t modulus) {
  Ring<C> ring(modulus);
  std::vector<C> c(trunc + 1, C(0));
  c[0] = ring.from_ll(1);
  for (std::uint64_t k = 1;; ++k) {
    const std::uint64_t e1 = delta * (k * (3 * k - 1) / 2);
    if (e1 > trunc) break;
    const C sign = ring.from_ll((k & 1U) ? -1 : 1);
    c[e1] = sign;
    const std::uint64_t e2 = delta * (k * (3 * k + 1) / 2);
    if (e2 <= trunc) c[e2] = sign;
  }
  return Series<C>(std::move(c), modulus, 0);
}

}  // namespace

template <typename C>
Series<C> euler_factor(std::uint64_t delta, long long r, std::size_t trunc, std::uint64_t modulus) {
  if (delta == 0) throw SeriesError("euler_factor: delta must be positive");
  if (r == 0) return Series<C>::one(trunc, modulus);
  const Series<C> base = pentagonal<C>(delta, trunc, modulus);
  if (r > 0) return pow(base, static_cast<std::uint64_t>(r));
  const auto e = static_cast<std::uint64_t>(-r);
  // Repeated sparse division costs e * nnz * trunc; otherwise invert the power.
  if (e * base.nonzero_count() <= (trunc + 1) * 4 || e == 1) {
    Series<C> result = Series<C>::one(trunc, modulus);
    for (std::uint64_t i = 0; i < e; ++i) result = divide(result, base);
    return result;
  }
  return invert(pow(base, e));
}

ModSeries reduce(const ExactSeries& a, std::uint64_t m) {
  if (m < 2) throw SeriesError("reduce: modulus must be >= 2");
  std::vector<std::uint64_t> c;
  c.reserve(a.trunc() + 1);
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  for (const auto& v : a.coeffs()) c.push_back(mpz_fdiv_ui(v.get_mpz_t(), m));
  return ModSeries(std::move(c), m, a.offset24());
}

std::string to_string(const BigInt& v) { return v.get_str(); }

// ---------------------------------------------------------------------------
// Instantiations

#define RCOLOR_INSTANTIATE(C)                                                                       \
  template class Series<C>;                                                                        \
  template Series<C> add(const Series<C>&, const Series<C>&);                                      \
  template Series<C> sub(const Series<C>&, const Series<C>&);                                      \
  template Series<C> negate(const Series<C>&);                                                     \
  template Series<C> scale(const Series<C>&, long long);                                           \
  template Series<C> mul(const Series<C>&, const Series<C>&);                                      \
  template Series<C> pow(const Series<C>&, std::uint64_t, PowStrategy);                            \
  template Series<C> divide(const Series<C>&, const Series<C>&);                                   \
  template Series<C> invert(const Series<C>&);                                                     \
  template Series<C> shift_offset(const Series<C>&, std::int64_t);                                 \
  template Series<C> materialize(const Series<C>&);                                                \
  template Series<C> dilate(const Series<C>&, std::size_t, std::size_t);                           \
  template Series<C> extract_progression(const Series<C>&, std::size_t, std::size_t);              \
  template Series<C> euler_factor<C>(std::uint64_t, long long, std::size_t, std::uint64_t);

RCOLOR_INSTANTIATE(BigInt)
RCOLOR_INSTANTIATE(std::uint64_t)

#undef RCOLOR_INSTANTIATE

}  // namespace rcolor
