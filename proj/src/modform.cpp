#include "rcolor/modform.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "rcolor/error.hpp"

namespace rcolor {

void EtaQuotient::validate() const {
  if (level == 0) throw SeriesError("eta-quotient level must be positive");
  bool any = false;
  for (const auto& [delta, r] : factors) {
    if (delta == 0 || level % delta != 0) {
      throw SeriesError("eta factor " + std::to_string(delta) + " does not divide level " + std::to_string(level));
    }
    any = any || r != 0;
  }
  if (!any) throw SeriesError("eta-quotient has no nonzero exponent");
}

long long FormMeta::weight() const {
  if (!has_integral_weight()) throw SeriesError("weight " + std::to_string(twice_weight) + "/2 is not integral");
  return twice_weight / 2;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = 2; t * t <= n; ++t) {
    if (n % t != 0) continue;
    out.push_back(t);
    while (n % t == 0) n /= t;
  }
  if (n > 1) out.push_back(n);
  return out;
}

long long sturm_bound(long long k, std::uint64_t level) {
  if (k <= 0 || level == 0) throw std::invalid_argument("sturm_bound needs positive weight and level");
  __int128 num = static_cast<__int128>(k) * level;
  __int128 den = 12;
  for (auto t : prime_divisors(level)) {
    num *= (t + 1);
    den *= t;
  }
  return static_cast<long long>(num / den);
}

namespace {

int mod24(__int128 v) {
  const auto r = static_cast<int>(v % 24);
  return r < 0 ? r + 24 : r;
}

}  // namespace

FormMeta analyze(const EtaQuotient& eq) {
  eq.validate();
  FormMeta meta;
  __int128 sum_r = 0, sum1 = 0, sum2 = 0;
  BigInt disc = 1;
  for (const auto& [delta, r] : eq.factors) {
    sum_r += r;
    sum1 += static_cast<__int128>(delta) * r;
    sum2 += static_cast<__int128>(eq.level / delta) * r;
    BigInt pw;
    mpz_pow_ui(pw.get_mpz_t(), BigInt(static_cast<unsigned long>(delta)).get_mpz_t(),
               static_cast<unsigned long>(r < 0 ? -r : r));
    disc *= pw;
  }
  meta.eta_twice_weight = static_cast<long long>(sum_r);
  meta.twice_weight = meta.eta_twice_weight;
  meta.offset24 = static_cast<std::int64_t>(sum1);
  meta.cond_sum1 = mod24(sum1);
  meta.cond_sum2 = mod24(sum2);
  meta.integral_weight = meta.eta_twice_weight % 2 == 0;
  if (meta.integral_weight && ((meta.eta_twice_weight / 2) % 2 != 0)) disc = -disc;
  meta.character_disc = disc;

  meta.cusps_ok = true;
  for (auto d : divisors(eq.level)) {
    // Common denominator N: sum gcd^2 r (N / delta) / N.
    __int128 num = 0;
    for (const auto& [delta, r] : eq.factors) {
      const std::uint64_t g = std::gcd(d, delta);
      num += static_cast<__int128>(g) * g * r * static_cast<__int128>(eq.level / delta);
    }
    const auto n = static_cast<long long>(num);
    const long long den = static_cast<long long>(eq.level);
    const long long g = std::gcd(n < 0 ? -n : n, den);
    CuspOrder c{d, n / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
    meta.cusps_ok = meta.cusps_ok && c.nonnegative();
    meta.cusp_orders.push_back(c);
  }
  meta.cond1_ok = meta.cond_sum1 == 0;
  meta.cond2_ok = meta.cond_sum2 == 0;
  meta.passes = meta.integral_weight && meta.cond1_ok && meta.cond2_ok && meta.cusps_ok;
  if (meta.integral_weight && meta.twice_weight > 0) meta.sturm = sturm_bound(meta.twice_weight / 2, eq.level);
  return meta;
}

FormMeta analyze(const ModularFormSpec& spec) {
  FormMeta meta = analyze(spec.eta);
  meta.twice_weight += 8LL * spec.e4_power;
  meta.sturm.reset();
  if (meta.has_integral_weight() && meta.twice_weight > 0) {
    meta.sturm = sturm_bound(meta.twice_weight / 2, spec.eta.level);
  }
  return meta;
}

Symbol character_at(const EtaQuotient& eq, std::int64_t d) {
  const FormMeta meta = analyze(eq);
  if (!meta.integral_weight) throw SeriesError("character undefined for half-integral weight");
  return kronecker(meta.character_disc, d);
}

template <typename C>
Series<C> eta_expansion(const EtaQuotient& eq, std::size_t trunc, std::uint64_t modulus, OffsetMode mode) {
  eq.validate();
  std::int64_t offset24 = 0;
  for (const auto& [delta, r] : eq.factors) offset24 += static_cast<std::int64_t>(delta) * r;

  const bool integral = offset24 % 24 == 0 && offset24 >= 0;
  if (mode == OffsetMode::materialize && !integral) {
    throw SeriesError("eta-quotient offset " + std::to_string(offset24) + "/24 cannot be materialized");
  }
  const bool shift = integral && mode != OffsetMode::keep;
  const std::size_t lead = shift ? static_cast<std::size_t>(offset24 / 24) : 0;
  const std::size_t inner = trunc >= lead ? trunc - lead : 0;

  Series<C> prod = Series<C>::one(inner, modulus);
  for (const auto& [delta, r] : eq.factors) prod = mul(prod, euler_factor<C>(delta, r, inner, modulus));
  prod = shift_offset(prod, offset24);
  if (!shift) return prod;
  return materialize(prod).truncated(trunc);
}

template <typename C>
Series<C> eisenstein_e4(std::size_t trunc, std::uint64_t modulus) {
  std::vector<C> sigma(trunc + 1, C(0));
  if constexpr (std::is_same_v<C, BigInt>) {
    for (std::size_t d = 1; d <= trunc; ++d) {
      BigInt cube = BigInt(static_cast<unsigned long>(d));
      cube = cube * cube * cube;
      for (std::size_t n = d; n <= trunc; n += d) sigma[n] += cube;
    }
    for (std::size_t n = 1; n <= trunc; ++n) sigma[n] *= 240;
    sigma[0] = 1;
  } else {
    for (std::size_t d = 1; d <= trunc; ++d) {
      const std::uint64_t cube = mul_mod(mul_mod(d % modulus, d % modulus, modulus), d % modulus, modulus);
      for (std::size_t n = d; n <= trunc; n += d) {
        const std::uint64_t s = sigma[n] + cube;
        sigma[n] = s >= modulus ? s - modulus : s;
      }
    }
    const std::uint64_t k240 = 240 % modulus;
    for (std::size_t n = 1; n <= trunc; ++n) sigma[n] = mul_mod(sigma[n], k240, modulus);
    sigma[0] = 1 % modulus;
  }
  return Series<C>(std::move(sigma), modulus, 0);
}

template <typename C>
Series<C> form_expansion(const ModularFormSpec& spec, std::size_t trunc, std::uint64_t modulus, OffsetMode mode) {
  Series<C> f = eta_expansion<C>(spec.eta, trunc, modulus, mode);
  if (spec.e4_power == 0) return f;
  const Series<C> e4 = pow(eisenstein_e4<C>(f.trunc(), modulus), spec.e4_power);
  return mul(f, e4);
}

template <typename C>
Series<C> hecke_tp(const Series<C>& f, std::uint64_t p, long long weight, Symbol chi_p,
                   std::optional<std::size_t> out_trunc) {
  if (!is_prime(p)) throw SeriesError("hecke_tp: " + std::to_string(p) + " is not prime");
  if (weight < 1) throw SeriesError("hecke_tp: weight must be at least 1");
  if (f.offset24() != 0) throw SeriesError("hecke_tp: expansion must have integral, materialized exponents");
  const std::size_t n_out = out_trunc.value_or(f.trunc() / p);
  if (f.trunc() < p * n_out) {
    throw TruncationError("hecke_tp: T_" + std::to_string(p) + " to order " + std::to_string(n_out) +
                          " needs input trunc " + std::to_string(p * n_out) + ", have " + std::to_string(f.trunc()));
  }

  std::vector<C> out(n_out + 1, C(0));
  if constexpr (std::is_same_v<C, BigInt>) {
    BigInt lower;
    mpz_ui_pow_ui(lower.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(weight - 1));
    lower *= to_int(chi_p);
    for (std::size_t n = 0; n <= n_out; ++n) {
      out[n] = f[p * n];
      if (n % p == 0) out[n] += lower * f[n / p];
    }
  } else {
    const std::uint64_t m = f.modulus();
    std::uint64_t lower = pow_mod(p, static_cast<std::uint64_t>(weight - 1), m);
    if (chi_p == Symbol::zero) lower = 0;
    if (chi_p == Symbol::minus_one && lower != 0) lower = m - lower;
    for (std::size_t n = 0; n <= n_out; ++n) {
      std::uint64_t v = f[p * n];
      if (n % p == 0) {
        v = static_cast<std::uint64_t>((static_cast<unsigned __int128>(lower) * f[n / p] + v) % m);
      }
      out[n] = v;
    }
  }
  return Series<C>(std::move(out), f.modulus(), 0);
}

#define RCOLOR_INSTANTIATE(C)                                                                             \
  template Series<C> eta_expansion<C>(const EtaQuotient&, std::size_t, std::uint64_t, OffsetMode);       \
  template Series<C> eisenstein_e4<C>(std::size_t, std::uint64_t);                                       \
  template Series<C> form_expansion<C>(const ModularFormSpec&, std::size_t, std::uint64_t, OffsetMode);  \
  template Series<C> hecke_tp<C>(const Series<C>&, std::uint64_t, long long, Symbol, std::optional<std::size_t>);

RCOLOR_INSTANTIATE(BigInt)
RCOLOR_INSTANTIATE(std::uint64_t)

#undef RCOLOR_INSTANTIATE

}  // namespace rcolor
