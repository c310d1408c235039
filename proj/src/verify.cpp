#include "rcolor/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "rcolor/arith.hpp"
#include "rcolor/error.hpp"
#include "rcolor/partitions.hpp"

namespace rcolor {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void require_within(std::uint64_t need, std::uint64_t ceiling, const std::string& what) {
  if (need > ceiling) {
    throw TruncationError(what + " needs series length " + std::to_string(need) + ", ceiling is " +
                          std::to_string(ceiling));
  }
}

void fail_at(CheckReport& rep, std::uint64_t n, std::uint64_t index, std::string value, std::string expected) {
  rep.result = CheckResult::fail;
  rep.counterexample = Counterexample{n, index, std::move(value), std::move(expected)};
}

std::string family_id(const CongruenceFamily& fam) {
  if (!fam.label.empty()) return fam.label;
  std::ostringstream os;
  if (fam.series == FamilySeries::c) {
    os << 'c';
  } else {
    os << 'a' << fam.r;
  }
  os << '(' << fam.A << "n+" << fam.B << ") mod " << fam.modulus;
  if (fam.filter) os << " filtered mod " << fam.filter->p;
  return os.str();
}

// Largest admissible n <= n_max, if any. A filter repeats with period p, so
// at most p candidates need inspection.
std::optional<std::uint64_t> last_admissible(const CongruenceFamily& fam, std::uint64_t n_max) {
  const std::uint64_t span = fam.filter ? fam.filter->p : 1;
  for (std::uint64_t back = 0; back < span && back <= n_max; ++back) {
    if (fam.admits(n_max - back)) return n_max - back;
  }
  return std::nullopt;
}

bool reads_through_c(const CongruenceFamily& fam) {
  return fam.series == FamilySeries::a_r && fam.r == 3 && fam.modulus == 5 && fam.A % 5 == 0 && fam.B % 5 == 1;
}

// sum_n s(A n + B) q^{n+1} up to q^trunc, read from a coefficient table.
ModSeries progression_q_shifted(const ModSeries& s, std::uint64_t A, std::uint64_t B, std::size_t trunc) {
  std::vector<std::uint64_t> v(trunc + 1, 0);
  for (std::size_t n = 0; n + 1 <= trunc; ++n) v[n + 1] = s.coeff(A * n + B);
  return ModSeries(std::move(v), s.modulus(), 0);
}

template <typename C>
Series<C> eta_product(const std::vector<std::pair<std::uint64_t, long long>>& factors, std::size_t trunc,
                      std::uint64_t modulus) {
  Series<C> out = Series<C>::one(trunc, modulus);
  for (const auto& [delta, r] : factors) out = mul(out, euler_factor<C>(delta, r, trunc, modulus));
  return out;
}

ModSeries apply_hecke(ModSeries f, std::uint64_t p, unsigned times, long long weight, Symbol chi,
                      std::size_t through) {
  for (unsigned i = 1; i <= times; ++i) {
    std::size_t out = through;
    for (unsigned j = i; j < times; ++j) out *= p;
    f = hecke_tp(f, p, weight, chi, out);
  }
  return f;
}

// First index where two series of equal length differ.
template <typename C>
std::optional<std::size_t> first_mismatch(const Series<C>& a, const Series<C>& b, std::size_t through) {
  for (std::size_t n = 0; n <= through; ++n) {
    if (a.coeff(n) != b.coeff(n)) return n;
  }
  return std::nullopt;
}

const EtaQuotient kF1Eta{4, {{1, 184}, {2, 4}}};
const EtaQuotient kH3Eta{4, {{1, 1696}, {2, 4}}};
const EtaQuotient kF2Eta{4, {{1, 40}, {2, 4}}};

struct HeckeCase {
  std::string id;
  ModularFormSpec form;
  std::uint64_t p;
  unsigned times;
  std::uint64_t A, B;     // progression of a_5 on the structural side
  long long pentagonal;   // power of (q;q) on the structural side
};

}  // namespace

CheckReport check_family(const CongruenceFamily& fam, std::uint64_t n_max, const ScanCeilings& ceilings) {
  const auto start = Clock::now();
  CheckReport rep;
  rep.id = family_id(fam);
  rep.params = to_json(fam);
  rep.n_max = n_max;
  if (fam.vacuous()) {
    rep.result = CheckResult::vacuous;
    rep.note = "filter admits no residue class";
    rep.wall_ms = elapsed_ms(start);
    return rep;
  }
  const auto last = last_admissible(fam, n_max);
  if (!last) {
    rep.result = CheckResult::vacuous;
    rep.note = "no admissible n in range";
    rep.wall_ms = elapsed_ms(start);
    return rep;
  }
  const std::uint64_t top = fam.index(*last);

  ModSeries series = ModSeries::zero(0, fam.modulus);
  std::function<std::uint64_t(std::uint64_t)> value;
  if (fam.series == FamilySeries::c) {
    require_within(top + 1, ceilings.c_mod, rep.id);
    series = c_series<std::uint64_t>(top, fam.modulus);
    value = [&series](std::uint64_t i) { return series[i]; };
    rep.params["route"] = "c";
  } else if (reads_through_c(fam)) {
    const std::uint64_t c_top = (top - 1) / 5;
    require_within(c_top + 1, ceilings.c_mod, rep.id);
    series = c_series<std::uint64_t>(c_top, 5);
    value = [&series](std::uint64_t i) { return (3 * series[(i - 1) / 5]) % 5; };
    rep.params["route"] = "c";
  } else {
    require_within(top + 1, ceilings.ar_mod, rep.id);
    series = a_r_series<std::uint64_t>({fam.r, top, fam.modulus});
    value = [&series](std::uint64_t i) { return series[i]; };
    rep.params["route"] = "direct";
  }

  for (std::uint64_t n = 0; n <= *last; ++n) {
    if (!fam.admits(n)) continue;
    ++rep.checked;
    const std::uint64_t i = fam.index(n);
    const std::uint64_t v = value(i);
    if (v != 0) {
      fail_at(rep, n, i, std::to_string(v), "0");
      break;
    }
  }
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

CongruenceFamily a5_mod3_family(unsigned alpha) {
  CongruenceFamily fam;
  fam.series = FamilySeries::a_r;
  fam.r = 5;
  fam.modulus = 3;
  std::uint64_t nine_alpha = 1;
  for (unsigned i = 0; i < alpha; ++i) {
    if (__builtin_mul_overflow(nine_alpha, 9ULL, &nine_alpha)) throw TruncationError("alpha too large");
  }
  std::uint64_t A = 0, B = 0;
  if (__builtin_mul_overflow(nine_alpha, 27ULL, &A) || __builtin_mul_overflow(nine_alpha, 153ULL, &B)) {
    throw TruncationError("alpha too large");
  }
  fam.A = A;
  fam.B = (B - 1) / 8;
  fam.label = "a5 mod 3 alpha=" + std::to_string(alpha);
  return fam;
}

CheckReport check_selfsimilar(std::uint64_t n_max, const ScanCeilings& ceilings) {
  const auto start = Clock::now();
  CheckReport rep;
  rep.id = "a5(9n+1) == a5(81n+10) mod 3";
  rep.params = {{"r", 5}, {"lhs", {{"A", 9}, {"B", 1}}}, {"rhs", {{"A", 81}, {"B", 10}}}, {"mod", 3}};
  rep.n_max = n_max;
  const std::uint64_t top = 81 * n_max + 10;
  require_within(top + 1, ceilings.ar_mod, rep.id);
  const auto a5 = a_r_series<std::uint64_t>({5, top, 3});
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    ++rep.checked;
    const auto lhs = a5[9 * n + 1];
    const auto rhs = a5[81 * n + 10];
    if (lhs != rhs) {
      fail_at(rep, n, 81 * n + 10, std::to_string(rhs), std::to_string(lhs));
      break;
    }
  }
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

CheckReport check_newman_recurrence(std::uint64_t p, std::size_t n_max, const ScanCeilings& ceilings) {
  const auto start = Clock::now();
  CheckReport rep;
  rep.id = "newman recurrence p=" + std::to_string(p);
  rep.params = {{"p", p}, {"shift", newman_shift(p)}};
  rep.n_max = n_max;
  const std::size_t trunc = recurrence_trunc(p, n_max);
  require_within(trunc + 1, ceilings.c_exact, rep.id);
  const auto c = c_series<BigInt>(trunc, 0);
  const auto res = verify_recurrence(p, n_max, c);
  rep.params["xi"] = xi(p, c).get_str();
  rep.checked = n_max + 1;
  if (!res.pass) {
    rep.checked = *res.first_failure + 1;
    fail_at(rep, *res.first_failure, p * p * *res.first_failure + newman_shift(p), res.lhs.get_str(),
            res.rhs.get_str());
  }
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

std::vector<CheckReport> reproduce_hecke_arguments() {
  std::vector<CheckReport> out;
  const ModularFormSpec f1{kF1Eta, 0};
  const ModularFormSpec h2{kF1Eta, 189};
  const ModularFormSpec h3{kH3Eta, 0};
  const ModularFormSpec f2{kF2Eta, 0};

  // Verdicts, weights and Sturm bounds.
  {
    const auto start = Clock::now();
    CheckReport rep;
    rep.id = "eta-quotient verdicts";
    struct Expect {
      const char* name;
      ModularFormSpec form;
      bool passes;
      std::optional<long long> weight;
    };
    const std::vector<Expect> expect{{"f1", f1, true, 94},
                                     {"h2", h2, true, 850},
                                     {"h3", h3, true, 850},
                                     {"f2", f2, true, 22},
                                     {"eta^-1", {{1, {{1, -1}}}, 0}, false, std::nullopt}};
    json forms = json::object();
    for (std::size_t i = 0; i < expect.size() && rep.result == CheckResult::pass; ++i) {
      const auto& e = expect[i];
      const FormMeta meta = analyze(e.form);
      forms[e.name] = to_json(meta);
      forms[e.name]["form"] = to_json(e.form.eta);
      forms[e.name]["form"]["E4"] = e.form.e4_power;
      ++rep.checked;
      const bool weight_ok = !e.weight || (meta.has_integral_weight() && meta.weight() == *e.weight);
      if (meta.passes != e.passes || !weight_ok) {
        fail_at(rep, i, 0, std::string(e.name) + (meta.passes ? " passes" : " fails"),
                e.passes ? "passes" : "fails");
      }
    }
    rep.params = {{"forms", forms}};
    rep.wall_ms = elapsed_ms(start);
    out.push_back(std::move(rep));
  }
  {
    const auto start = Clock::now();
    CheckReport rep;
    rep.id = "sturm bounds";
    const std::vector<std::pair<const char*, std::pair<ModularFormSpec, long long>>> cases{
        {"f1", {f1, 47}}, {"h2", {h2, 425}}, {"h3", {h3, 425}}, {"f2", {f2, 11}}};
    json got = json::object();
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const auto& [name, c] = cases[i];
      const auto meta = analyze(c.first);
      got[name] = meta.sturm ? json(*meta.sturm) : json(nullptr);
      ++rep.checked;
      if (rep.result == CheckResult::pass && meta.sturm != c.second) {
        fail_at(rep, i, 0, meta.sturm ? std::to_string(*meta.sturm) : "none", std::to_string(c.second));
      }
    }
    rep.params = {{"sturm", got}};
    rep.wall_ms = elapsed_ms(start);
    out.push_back(std::move(rep));
  }

  // Coefficient checks through the Sturm bound, each paired with the product
  // factorization of the Hecke image.
  const auto hecke_image = [](const HeckeCase& hc, std::size_t through, const ModSeries& a5) {
    const auto meta = analyze(hc.form);
    const long long k = meta.weight();
    const Symbol chi = character_at(hc.form.eta, static_cast<std::int64_t>(hc.p));
    std::size_t need = through;
    for (unsigned i = 0; i < hc.times; ++i) need *= hc.p;
    const auto f = form_expansion<std::uint64_t>(hc.form, need, hc.p, OffsetMode::automatic);
    auto image = apply_hecke(f, hc.p, hc.times, k, chi, through);
    auto structural = mul(progression_q_shifted(a5, hc.A, hc.B, through),
                          euler_factor<std::uint64_t>(1, hc.pentagonal, through, hc.p));
    return std::pair{std::move(image), std::move(structural)};
  };

  const auto structural_fail = [](CheckReport& rep, const std::string& which, std::size_t at, const ModSeries& img,
                                  const ModSeries& st) {
    rep.note = which + " differs from its product factorization";
    fail_at(rep, at, at, std::to_string(img[at]), std::to_string(st[at]));
  };

  {
    const auto start = Clock::now();
    const HeckeCase hc{"f1 | T3^3 == 0 mod 3", f1, 3, 3, 27, 19, 7};
    const std::size_t bound = 47;
    CheckReport rep;
    rep.id = hc.id;
    rep.params = {{"form", "f1"}, {"p", 3}, {"times", 3}, {"through", bound}};
    rep.n_max = bound;
    const auto a5 = a_r_series<std::uint64_t>({5, 27 * bound + 19, 3});
    const auto [img, st] = hecke_image(hc, bound, a5);
    for (std::size_t n = 0; n <= bound; ++n) {
      ++rep.checked;
      if (img[n] != 0) {
        fail_at(rep, n, n, std::to_string(img[n]), "0");
        break;
      }
    }
    if (rep.result == CheckResult::pass) {
      if (auto at = first_mismatch(img, st, bound)) structural_fail(rep, "f1 | T3^3", *at, img, st);
    }
    rep.wall_ms = elapsed_ms(start);
    out.push_back(std::move(rep));
  }
  {
    const auto start = Clock::now();
    const HeckeCase h2c{"h2", h2, 3, 2, 9, 1, 21};
    const HeckeCase h3c{"h3", h3, 3, 4, 81, 10, 21};
    const std::size_t bound = 425;
    CheckReport rep;
    rep.id = "h2 | T3^2 == h3 | T3^4 mod 3";
    rep.params = {{"p", 3}, {"through", bound}, {"h2_E4_power", 189}};
    rep.n_max = bound;
    const auto a5 = a_r_series<std::uint64_t>({5, 81 * bound + 10, 3});
    const auto [img2, st2] = hecke_image(h2c, bound, a5);
    const auto [img3, st3] = hecke_image(h3c, bound, a5);
    for (std::size_t n = 0; n <= bound; ++n) {
      ++rep.checked;
      if (img2[n] != img3[n]) {
        fail_at(rep, n, n, std::to_string(img3[n]), std::to_string(img2[n]));
        break;
      }
    }
    if (rep.result == CheckResult::pass) {
      if (auto at = first_mismatch(img2, st2, bound)) {
        structural_fail(rep, "h2 | T3^2", *at, img2, st2);
      } else if (auto at3 = first_mismatch(img3, st3, bound)) {
        structural_fail(rep, "h3 | T3^4", *at3, img3, st3);
      }
    }
    rep.wall_ms = elapsed_ms(start);
    out.push_back(std::move(rep));
  }
  {
    const auto start = Clock::now();
    const HeckeCase hc{"f2 | T5 == 0 mod 5", f2, 5, 1, 5, 3, 9};
    const std::size_t bound = 11;
    CheckReport rep;
    rep.id = hc.id;
    rep.params = {{"form", "f2"}, {"p", 5}, {"times", 1}, {"through", bound}};
    rep.n_max = bound;
    const auto a5 = a_r_series<std::uint64_t>({5, 5 * bound + 3, 5});
    const auto [img, st] = hecke_image(hc, bound, a5);
    for (std::size_t n = 0; n <= bound; ++n) {
      ++rep.checked;
      if (img[n] != 0) {
        fail_at(rep, n, n, std::to_string(img[n]), "0");
        break;
      }
    }
    if (rep.result == CheckResult::pass) {
      if (auto at = first_mismatch(img, st, bound)) structural_fail(rep, "f2 | T5", *at, img, st);
    }
    rep.wall_ms = elapsed_ms(start);
    out.push_back(std::move(rep));
  }
  {
    // The h2 expansion above multiplies by E4^189 computed mod 3; this checks
    // the congruence E4^189 == 1 (mod 3) over the integers at small order.
    const auto start = Clock::now();
    CheckReport rep;
    rep.id = "E4^189 == 1 mod 3";
    const std::size_t order = 100;
    rep.params = {{"power", 189}, {"order", order}};
    rep.n_max = order;
    const auto exact = reduce(pow(eisenstein_e4<BigInt>(order, 0), 189), 3);
    const auto one = ModSeries::one(order, 3);
    rep.checked = order + 1;
    if (auto at = first_mismatch(exact, one, order)) {
      rep.checked = *at + 1;
      fail_at(rep, *at, *at, std::to_string(exact[*at]), std::to_string(one[*at]));
    }
    rep.wall_ms = elapsed_ms(start);
    out.push_back(std::move(rep));
  }
  return out;
}

CheckReport verify_dissection(std::size_t order, const ScanCeilings& ceilings) {
  const auto start = Clock::now();
  CheckReport rep;
  rep.id = "a3(7n+2) eight-term dissection";
  rep.params = {{"order", order}};
  rep.n_max = order;
  if (order > kDissectionMaxOrder) {
    throw TruncationError("dissection order " + std::to_string(order) + " exceeds " +
                          std::to_string(kDissectionMaxOrder));
  }
  const std::size_t top = 7 * order + 2;
  require_within(top + 1, ceilings.exact, rep.id);

  const auto a3 = a_r_series<BigInt>({3, top, 0});
  std::vector<BigInt> lhs(order + 1);
  for (std::size_t n = 0; n <= order; ++n) lhs[n] = a3[7 * n + 2];

  struct Term {
    long long coeff;
    std::size_t shift;
    std::vector<std::pair<std::uint64_t, long long>> factors;
  };
  const std::vector<Term> terms{
      {1024, 8, {{2, 8}, {14, 18}, {1, -20}, {7, -7}}},
      {1344, 6, {{2, 9}, {14, 11}, {1, -21}}},
      {-1024, 5, {{2, 16}, {14, 10}, {1, -24}, {7, -3}}},
      {72, 4, {{2, 10}, {7, 7}, {14, 4}, {1, -22}}},
      {-320, 3, {{2, 17}, {7, 4}, {14, 3}, {1, -25}}},
      {-40, 2, {{2, 11}, {7, 14}, {1, -23}, {14, -3}}},
      {56, 1, {{2, 18}, {7, 11}, {1, -26}, {14, -4}}},
      {1, 0, {{2, 12}, {7, 21}, {1, -24}, {14, -10}}},
  };
  std::vector<BigInt> rhs(order + 1, BigInt(0));
  for (const auto& t : terms) {
    if (t.shift > order) continue;
    const auto prod = eta_product<BigInt>(t.factors, order - t.shift, 0);
    for (std::size_t n = 0; n + t.shift <= order; ++n) rhs[n + t.shift] += prod[n] * BigInt(static_cast<long>(t.coeff));
  }
  for (auto& v : rhs) v *= 7;

  for (std::size_t n = 0; n <= order; ++n) {
    ++rep.checked;
    if (lhs[n] != rhs[n]) {
      fail_at(rep, n, 7 * n + 2, lhs[n].get_str(), rhs[n].get_str());
      break;
    }
  }
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

SuiteConfig suite_config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("suite config must be a JSON object");
  SuiteConfig cfg;
  for (const auto& [key, val] : j.items()) {
    try {
      if (key == "ceilings") {
        for (const auto& [ck, cv] : val.items()) {
          const auto v = cv.get<std::uint64_t>();
          if (ck == "ar_mod") {
            cfg.ceilings.ar_mod = v;
          } else if (ck == "c_mod") {
            cfg.ceilings.c_mod = v;
          } else if (ck == "exact") {
            cfg.ceilings.exact = v;
          } else if (ck == "c_exact") {
            cfg.ceilings.c_exact = v;
          } else {
            throw std::invalid_argument("unknown ceiling \"" + ck + "\"");
          }
        }
      } else if (key == "newman_primes") {
        cfg.newman_primes = val.get<std::vector<std::uint64_t>>();
      } else if (key == "newman_n_max") {
        cfg.newman_n_max = val.get<std::size_t>();
      } else if (key == "profile_prime_max") {
        cfg.profile_prime_max = val.get<std::uint64_t>();
      } else if (key == "mod7_n_max") {
        cfg.mod7_n_max = val.get<std::uint64_t>();
      } else if (key == "jobs") {
        cfg.jobs = val.get<unsigned>();
      } else if (key == "families") {
        for (const auto& entry : val) {
          ExtraFamily extra;
          extra.family = family_from_json(entry.contains("family") ? entry.at("family") : entry);
          extra.n_max = entry.value("nmax", std::uint64_t{100});
          cfg.extra_families.push_back(std::move(extra));
        }
      } else {
        throw std::invalid_argument("unknown config key \"" + key + "\"");
      }
    } catch (const json::exception& e) {
      throw std::invalid_argument("bad config value for \"" + key + "\": " + e.what());
    }
  }
  return cfg;
}

bool SuiteReport::any_fail() const {
  return std::any_of(checks.begin(), checks.end(), [](const auto& c) { return c.result == CheckResult::fail; });
}

json SuiteReport::to_json() const {
  json j;
  j["report_version"] = kReportVersion;
  json arr = json::array();
  std::size_t pass = 0, fail = 0, vacuous = 0;
  for (const auto& c : checks) {
    arr.push_back(rcolor::to_json(c));
    switch (c.result) {
      case CheckResult::pass: ++pass; break;
      case CheckResult::fail: ++fail; break;
      case CheckResult::vacuous: ++vacuous; break;
    }
  }
  j["checks"] = std::move(arr);
  j["summary"] = {{"total", checks.size()}, {"pass", pass}, {"fail", fail}, {"vacuous", vacuous}};
  j["status"] = fail == 0 ? "pass" : "fail";
  j["wall_ms"] = wall_ms;
  return j;
}

std::string SuiteReport::summary() const {
  std::ostringstream os;
  std::size_t fail = 0;
  for (const auto& c : checks) {
    std::string tag = to_string(c.result);
    std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char ch) { return std::toupper(ch); });
    os << '[' << tag << "] " << c.id << "  (" << c.checked << " checked, " << static_cast<long long>(c.wall_ms)
       << " ms)";
    if (c.counterexample) {
      os << "  first failure n=" << c.counterexample->n << " index=" << c.counterexample->index
         << " value=" << c.counterexample->value << " expected=" << c.counterexample->expected;
    }
    if (!c.note.empty()) os << "  " << c.note;
    os << '\n';
    fail += c.result == CheckResult::fail ? 1 : 0;
  }
  os << checks.size() << " checks, " << fail << " failed, " << static_cast<long long>(wall_ms) << " ms\n";
  return os.str();
}

namespace {

using Task = std::function<std::vector<CheckReport>()>;

template <typename F>
Task single(F f) {
  return [f]() { return std::vector<CheckReport>{f()}; };
}

CheckReport oracle_enumeration() {
  const auto start = Clock::now();
  CheckReport rep;
  rep.id = "a_r against brute-force enumeration";
  rep.params = {{"r", {1, 5}}, {"n_max", 12}};
  rep.n_max = 12;
  for (unsigned r = 1; r <= 5 && rep.result == CheckResult::pass; ++r) {
    const auto s = a_r_series<BigInt>({r, 12, 0});
    for (unsigned n = 0; n <= 12; ++n) {
      ++rep.checked;
      const BigInt brute(static_cast<unsigned long>(enumerate_colored_partitions(n, r)));
      if (s[n] != brute) {
        rep.note = "r=" + std::to_string(r);
        fail_at(rep, n, n, s[n].get_str(), brute.get_str());
        break;
      }
    }
  }
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

CheckReport oracle_partition_function(const ScanCeilings& ceilings) {
  const auto start = Clock::now();
  CheckReport rep;
  rep.id = "a_1 against the pentagonal recurrence for p(n)";
  const std::size_t n_max = std::min<std::uint64_t>(1000, ceilings.exact - 1);
  rep.n_max = n_max;
  const auto s = a_r_series<BigInt>({1, n_max, 0});
  const auto p = p_euler_oracle(n_max);
  for (std::size_t n = 0; n <= n_max; ++n) {
    ++rep.checked;
    if (s[n] != p[n]) {
      fail_at(rep, n, n, s[n].get_str(), p[n].get_str());
      break;
    }
  }
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

CheckReport oracle_reduction() {
  const auto start = Clock::now();
  CheckReport rep;
  rep.id = "modular series equal reduced exact series";
  const std::size_t n_max = 1000;
  rep.n_max = n_max;
  const auto c = c_series<BigInt>(n_max, 0);
  for (std::uint64_t m : {5ULL, 7ULL, 9ULL}) {
    const auto lhs = reduce(c, m);
    const auto rhs = c_series<std::uint64_t>(n_max, m);
    rep.checked += n_max + 1;
    if (auto at = first_mismatch(lhs, rhs, n_max)) {
      rep.note = "c mod " + std::to_string(m);
      fail_at(rep, *at, *at, std::to_string(rhs[*at]), std::to_string(lhs[*at]));
      break;
    }
  }
  for (unsigned r : {3U, 5U}) {
    if (rep.result != CheckResult::pass) break;
    const auto exact = a_r_series<BigInt>({r, n_max, 0});
    for (std::uint64_t m : {3ULL, 5ULL, 7ULL}) {
      const auto lhs = reduce(exact, m);
      const auto rhs = a_r_series<std::uint64_t>({r, n_max, m});
      rep.checked += n_max + 1;
      if (auto at = first_mismatch(lhs, rhs, n_max)) {
        rep.note = "a" + std::to_string(r) + " mod " + std::to_string(m);
        fail_at(rep, *at, *at, std::to_string(rhs[*at]), std::to_string(lhs[*at]));
        break;
      }
    }
  }
  rep.params = {{"n_max", n_max}, {"c_moduli", {5, 7, 9}}, {"a_r", {3, 5}}, {"a_r_moduli", {3, 5, 7}}};
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

CheckReport a3_versus_c(std::uint64_t n_max) {
  const auto start = Clock::now();
  CheckReport rep;
  rep.id = "a3(5n+1) == 3 c(n) mod 5";
  rep.params = {{"mod", 5}};
  rep.n_max = n_max;
  const auto a3 = a_r_series<std::uint64_t>({3, 5 * n_max + 1, 5});
  const auto c = c_series<std::uint64_t>(n_max, 5);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    ++rep.checked;
    const auto lhs = a3[5 * n + 1];
    const auto rhs = (3 * c[n]) % 5;
    if (lhs != rhs) {
      fail_at(rep, n, 5 * n + 1, std::to_string(lhs), std::to_string(rhs));
      break;
    }
  }
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

CheckReport profile_claims(std::uint64_t prime_max, const ScanCeilings& ceilings) {
  const auto start = Clock::now();
  CheckReport rep;
  rep.id = "xi and omega profiles";
  rep.n_max = prime_max;
  const std::uint64_t pm = std::max<std::uint64_t>(prime_max, 11);
  const std::size_t trunc = newman_shift(pm);
  require_within(trunc + 1, ceilings.c_exact, rep.id);
  const auto c = c_series<BigInt>(trunc, 0);
  json profiles = json::array();
  std::optional<NewmanProfile> p5, p11;
  for (std::uint64_t p = 5; p <= pm; ++p) {
    if (!is_prime(p)) continue;
    auto prof = newman_profile(p, c);
    if (p <= prime_max) profiles.push_back(to_json(prof));
    if (p == 5) p5 = prof;
    if (p == 11) p11 = prof;
  }
  rep.params = {{"profiles", profiles}};
  struct Claim {
    std::string what;
    bool ok;
    std::string got, want;
  };
  const std::vector<Claim> claims{
      {"xi(5)", p5->xi == 2, p5->xi.get_str(), "2"},
      {"xi(11) mod 5", mpz_fdiv_ui(p11->xi.get_mpz_t(), 5) == 1,
       std::to_string(mpz_fdiv_ui(p11->xi.get_mpz_t(), 5)), "1"},
      {"omega(11)", p11->omega == 6, p11->omega ? std::to_string(*p11->omega) : "none", "6"},
  };
  for (std::size_t i = 0; i < claims.size(); ++i) {
    ++rep.checked;
    if (!claims[i].ok) {
      rep.note = claims[i].what;
      fail_at(rep, i, 0, claims[i].got, claims[i].want);
      break;
    }
  }
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

CheckReport proportionality_report(unsigned k, std::size_t n_max, A3Mod5Provider::Route route) {
  const auto start = Clock::now();
  CheckReport rep;
  const auto idx = proportionality_indices(k);
  const bool via_c = route == A3Mod5Provider::Route::via_c;
  rep.id = "a3(" + std::to_string(idx.A) + "n+" + std::to_string(idx.B) + ") == " + std::to_string(idx.factor) +
           " a3(25n+26) mod 5" + (via_c ? " [c route]" : " [direct]");
  rep.params = {{"k", k}, {"A", idx.A}, {"B", idx.B}, {"factor", idx.factor}, {"route", via_c ? "c" : "direct"}};
  rep.n_max = n_max;
  const A3Mod5Provider a3(idx.A * n_max + idx.B, route);
  const auto res = proportionality_check(k, n_max, a3);
  rep.checked = res.first_failure ? *res.first_failure + 1 : n_max + 1;
  if (!res.pass) fail_at(rep, *res.first_failure, res.lhs_index, std::to_string(res.lhs), std::to_string(res.rhs));
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

CheckReport c_proportionality_report(unsigned k, std::size_t n_max) {
  const auto start = Clock::now();
  CheckReport rep;
  std::uint64_t P = 1;
  for (unsigned i = 0; i < 2 * k + 4; ++i) P *= 5;
  const std::uint64_t A = P / 5, B = 5 * (P - 1) / 24;
  rep.id = "c(" + std::to_string(A) + "n+" + std::to_string(B) + ") == " + std::to_string(pow_mod(2, k + 1, 5)) +
           " c(5n+5) mod 5";
  rep.params = {{"k", k}, {"A", A}, {"B", B}};
  rep.n_max = n_max;
  const auto c = c_series<std::uint64_t>(A * n_max + B, 5);
  const auto res = c_proportionality_check(k, n_max, c);
  rep.checked = res.first_failure ? *res.first_failure + 1 : n_max + 1;
  if (!res.pass) fail_at(rep, *res.first_failure, res.lhs_index, std::to_string(res.lhs), std::to_string(res.rhs));
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

CongruenceFamily labelled(CongruenceFamily fam, std::string label) {
  fam.label = std::move(label);
  return fam;
}

CongruenceFamily mod7_family(unsigned r, std::uint64_t B) {
  CongruenceFamily fam;
  fam.r = r;
  fam.A = 7;
  fam.B = B;
  fam.modulus = 7;
  fam.label = "a" + std::to_string(r) + "(7n+" + std::to_string(B) + ") == 0 mod 7";
  return fam;
}

std::vector<Task> suite_tasks(const SuiteConfig& cfg) {
  const ScanCeilings ceil = cfg.ceilings;
  std::vector<Task> tasks;
  tasks.push_back(single([] { return oracle_enumeration(); }));
  tasks.push_back(single([ceil] { return oracle_partition_function(ceil); }));
  tasks.push_back(single([] { return oracle_reduction(); }));
  tasks.push_back(single([] { return a3_versus_c(2000); }));
  for (auto p : cfg.newman_primes) {
    tasks.push_back(single([p, n = cfg.newman_n_max, ceil] { return check_newman_recurrence(p, n, ceil); }));
  }
  tasks.push_back(single([pm = cfg.profile_prime_max, ceil] { return profile_claims(pm, ceil); }));

  const std::pair<unsigned, std::uint64_t> mod7[] = {{1, 5}, {3, 2}, {4, 4}, {5, 6}, {7, 3}};
  for (const auto& [r, B] : mod7) {
    tasks.push_back(single([r, B, n = cfg.mod7_n_max, ceil] { return check_family(mod7_family(r, B), n, ceil); }));
  }

  // Congruence families for a3 mod 5 generated from xi(p) and omega(p).
  tasks.push_back([ceil] {
    const auto c = c_series<BigInt>(newman_shift(13), 0);
    const auto prof7 = newman_profile(7, c);
    const auto prof11 = newman_profile(11, c);
    const auto prof13 = newman_profile(13, c);
    std::vector<CheckReport> out;
    // Every n = 11n' + j with n' <= 33 and j among the Legendre classes.
    out.push_back(check_family(labelled(legendre_family(11, 0, prof11), "a3(605n+126) mod 5, p=11 Legendre classes"),
                               11 * 33 + 10, ceil));
    out.push_back(check_family(labelled(nondivisible_family(7, 0, prof7), "a3(1715n+2501) mod 5, 7 does not divide n"),
                               200, ceil));
    out.push_back(
        check_family(labelled(nondivisible_family(11, 0, prof11), "a3(805255n+1845376) mod 5, 11 does not divide n"),
                     2, ceil));
    out.push_back(check_family(labelled(legendre_family(13, 0, prof13), "a3(845n+176) mod 5, p=13 Legendre classes"),
                               100, ceil));
    for (std::uint64_t p : {7ULL, 11ULL}) {
      for (auto& fam : derived_c_families(p, 0, p == 7 ? prof7 : prof11)) {
        const std::uint64_t n_max = fam.A > 100'000 ? 2 : 1000;
        out.push_back(check_family(fam, n_max, ceil));
      }
    }
    return out;
  });
  tasks.push_back(single([] { return proportionality_report(0, 30, A3Mod5Provider::Route::via_c); }));
  tasks.push_back(single([] { return proportionality_report(0, 30, A3Mod5Provider::Route::direct); }));
  tasks.push_back(single([] { return proportionality_report(1, 5, A3Mod5Provider::Route::via_c); }));
  tasks.push_back(single([] { return c_proportionality_report(0, 100); }));

  tasks.push_back(single([ceil] { return check_family(a5_mod3_family(0), 370, ceil); }));
  tasks.push_back(single([ceil] { return check_selfsimilar(120, ceil); }));
  tasks.push_back(single([ceil] { return check_family(a5_mod3_family(1), 40, ceil); }));
  tasks.push_back(single([ceil] {
    CongruenceFamily fam;
    fam.r = 5;
    fam.A = 5;
    fam.B = 3;
    fam.modulus = 5;
    fam.label = "a5(5n+3) == 0 mod 5";
    return check_family(fam, 1000, ceil);
  }));

  tasks.push_back([] { return reproduce_hecke_arguments(); });
  tasks.push_back(single([ceil] { return verify_dissection(30, ceil); }));

  for (const auto& extra : cfg.extra_families) {
    tasks.push_back(single([extra, ceil] { return check_family(extra.family, extra.n_max, ceil); }));
  }
  return tasks;
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
  const auto start = Clock::now();
  const auto tasks = suite_tasks(config);
  std::vector<std::vector<CheckReport>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());

  unsigned jobs = config.jobs == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.jobs;
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size()));
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SuiteReport report;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(report.checks));
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace rcolor
