// rcolor: command-line front end for the colored-partition verifier.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rcolor/error.hpp"
#include "rcolor/modform.hpp"
#include "rcolor/newman.hpp"
#include "rcolor/partitions.hpp"
#include "rcolor/report.hpp"
#include "rcolor/verify.hpp"

namespace {

using namespace rcolor;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

json parse_json_arg(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("cannot parse ") + what + " JSON: " + e.what());
  }
}

template <typename C>
void print_series(const Series<C>& s) {
  for (std::size_t n = 0; n <= s.trunc(); ++n) std::cout << n << ' ' << to_string(s[n]) << '\n';
}

int cmd_coeffs(unsigned r, std::size_t limit, std::uint64_t mod) {
  if (r == 0) throw std::invalid_argument("--r must be at least 1");
  if (mod == 0) {
    print_series(a_r_series<BigInt>({r, limit, 0}));
  } else {
    print_series(a_r_series<std::uint64_t>({r, limit, mod}));
  }
  return kExitPass;
}

int cmd_cseries(std::size_t limit, std::uint64_t mod) {
  if (mod == 0) {
    print_series(c_series<BigInt>(limit, 0));
  } else {
    print_series(c_series<std::uint64_t>(limit, mod));
  }
  return kExitPass;
}

int report_exit(const CheckReport& rep) {
  json j = to_json(rep);
  j["report_version"] = kReportVersion;
  std::cout << j.dump(2) << '\n';
  return rep.result == CheckResult::fail ? kExitFail : kExitPass;
}

int cmd_check(const std::string& family_text, std::uint64_t n_max) {
  const auto fam = family_from_json(parse_json_arg(family_text, "family"));
  return report_exit(check_family(fam, n_max));
}

int cmd_newman(std::uint64_t p, std::size_t n_max) {
  const ScanCeilings ceilings;
  const std::size_t trunc = recurrence_trunc(p, n_max);
  if (trunc + 1 > ceilings.c_exact) {
    throw TruncationError("recurrence needs c to order " + std::to_string(trunc));
  }
  const auto c = c_series<BigInt>(trunc, 0);
  const auto prof = newman_profile(p, c);
  const auto rec = verify_recurrence(p, n_max, c);
  json j;
  j["report_version"] = kReportVersion;
  j["profile"] = to_json(prof);
  j["recurrence"] = {{"n_max", n_max}, {"result", rec.pass ? "pass" : "fail"}};
  if (rec.first_failure) {
    j["recurrence"]["counterexample"] = {
        {"n", *rec.first_failure}, {"lhs", rec.lhs.get_str()}, {"rhs", rec.rhs.get_str()}};
  }
  std::cout << j.dump(2) << '\n';
  return rec.pass ? kExitPass : kExitFail;
}

int cmd_families(std::uint64_t p, unsigned k) {
  json out = json::array();
  if (p == 5) {
    const auto idx = proportionality_indices(k);
    out.push_back({{"kind", "proportionality"},
                   {"r", 3},
                   {"mod", 5},
                   {"lhs", {{"A", idx.A}, {"B", idx.B}}},
                   {"rhs", {{"A", 25}, {"B", 26}}},
                   {"factor", idx.factor}});
  } else {
    const auto c = c_series<BigInt>(newman_shift(p), 0);
    const auto prof = newman_profile(p, c);
    out.push_back(to_json(nondivisible_family(p, k, prof)));
    if (prof.xi_mod5 != 0) out.push_back(to_json(legendre_family(p, k, prof)));
    for (const auto& fam : derived_c_families(p, k, prof)) out.push_back(to_json(fam));
  }
  std::cout << out.dump(2) << '\n';
  return kExitPass;
}

int cmd_eta_analyze(const std::string& form_text) {
  const auto spec = form_from_json(parse_json_arg(form_text, "eta-quotient"));
  const FormMeta meta = analyze(spec);
  json j = to_json(meta);
  j["report_version"] = kReportVersion;
  j["form"] = to_json(spec.eta);
  if (spec.e4_power != 0) j["form"]["E4"] = spec.e4_power;
  std::cout << j.dump(2) << '\n';
  return meta.passes ? kExitPass : kExitFail;
}

template <typename C>
int run_hecke(const ModularFormSpec& spec, std::uint64_t p, unsigned times, std::uint64_t mod, std::size_t through) {
  const FormMeta meta = analyze(spec);
  const long long k = meta.weight();
  const Symbol chi = character_at(spec.eta, static_cast<std::int64_t>(p));
  std::size_t need = through;
  for (unsigned i = 0; i < times; ++i) {
    if (__builtin_mul_overflow(need, static_cast<std::size_t>(p), &need)) {
      throw TruncationError("input length overflows");
    }
  }
  const ScanCeilings ceilings;
  if (need + 1 > (mod == 0 ? ceilings.exact : ceilings.ar_mod)) {
    throw TruncationError("hecke needs the form to order " + std::to_string(need));
  }
  auto f = form_expansion<C>(spec, need, mod, OffsetMode::automatic);
  for (unsigned i = 1; i <= times; ++i) {
    std::size_t out = through;
    for (unsigned j = i; j < times; ++j) out *= p;
    f = hecke_tp(f, p, k, chi, out);
  }
  print_series(f);
  return kExitPass;
}

int cmd_hecke(std::uint64_t p, unsigned times, const std::string& form_text, std::uint64_t mod,
              std::size_t through) {
  const auto spec = form_from_json(parse_json_arg(form_text, "form"));
  if (mod == 0) return run_hecke<BigInt>(spec, p, times, 0, through);
  return run_hecke<std::uint64_t>(spec, p, times, mod, through);
}

int cmd_suite(const std::string& config_path, const std::string& json_out, std::optional<unsigned> jobs) {
  SuiteConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config " + config_path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument("cannot parse config: " + std::string(e.what()));
    }
    cfg = suite_config_from_json(j);
  }
  if (jobs) cfg.jobs = *jobs;
  const SuiteReport report = run_suite(cfg);
  std::cout << report.summary();
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) throw std::invalid_argument("cannot write " + json_out);
    out << report.to_json().dump(2) << '\n';
  }
  return report.any_fail() ? kExitFail : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify congruences for partitions with r-colored odd parts"};
  app.require_subcommand(1);

  unsigned r = 3;
  std::size_t limit = 0;
  std::uint64_t mod = 0;
  auto* coeffs = app.add_subcommand("coeffs", "Print a_r(0..N)");
  coeffs->add_option("--r", r, "Number of colors for odd parts")->required();
  coeffs->add_option("--limit", limit, "Largest index N")->required();
  coeffs->add_option("--mod", mod, "Reduce modulo M (0 = exact)");

  auto* cseries = app.add_subcommand("cseries", "Print c(0..N), the coefficients of f1 f2^2");
  cseries->add_option("--limit", limit, "Largest index N")->required();
  cseries->add_option("--mod", mod, "Reduce modulo M (0 = exact)");

  std::string family_text;
  std::uint64_t n_max = 0;
  auto* check = app.add_subcommand("check", "Scan a congruence family");
  check->add_option("--family", family_text, "Family JSON")->required();
  check->add_option("--nmax", n_max, "Largest n to scan")->required();

  std::uint64_t p = 0;
  std::size_t newman_n = 60;
  auto* newman = app.add_subcommand("newman", "xi/omega profile and exact recurrence check");
  newman->add_option("--p", p, "Prime p >= 5")->required();
  newman->add_option("--nmax", newman_n, "Recurrence range");

  unsigned k = 0;
  auto* families = app.add_subcommand("families", "Emit the congruence families for p and k as JSON");
  families->add_option("--p", p, "Prime p >= 5")->required();
  families->add_option("--k", k, "Family parameter k >= 0")->required();

  std::string form_text;
  auto* eta = app.add_subcommand("eta", "Eta-quotient tools");
  eta->require_subcommand(1);
  auto* analyze_cmd = eta->add_subcommand("analyze", "Weight, conditions, cusp orders and Sturm bound");
  analyze_cmd->add_option("form", form_text, "Eta-quotient JSON")->required();

  unsigned times = 1;
  std::size_t through = 0;
  auto* hecke = app.add_subcommand("hecke", "Apply T_p repeatedly and print coefficients");
  hecke->add_option("--p", p, "Prime p")->required();
  hecke->add_option("--times", times, "Number of applications")->required();
  hecke->add_option("--form", form_text, "Form JSON")->required();
  hecke->add_option("--mod", mod, "Modulus (0 = exact)")->required();
  hecke->add_option("--through", through, "Last output index")->required();

  std::string config_path, json_out;
  std::optional<unsigned> jobs;
  auto* suite = app.add_subcommand("suite", "Run the full verification suite");
  suite->add_option("--config", config_path, "Config JSON file");
  suite->add_option("--json", json_out, "Write the JSON report here");
  suite->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*coeffs) return cmd_coeffs(r, limit, mod);
    if (*cseries) return cmd_cseries(limit, mod);
    if (*check) return cmd_check(family_text, n_max);
    if (*newman) return cmd_newman(p, newman_n);
    if (*families) return cmd_families(p, k);
    if (*analyze_cmd) return cmd_eta_analyze(form_text);
    if (*hecke) return cmd_hecke(p, times, form_text, mod, through);
    if (*suite) return cmd_suite(config_path, json_out, jobs);
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
