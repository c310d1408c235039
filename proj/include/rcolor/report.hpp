#pragma once

// Check reports and the JSON forms of the library's value types.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcolor/modform.hpp"
#include "rcolor/newman.hpp"

namespace rcolor {

using json = nlohmann::json;

/// Bumped whenever the report layout changes.
inline constexpr int kReportVersion = 1;

enum class CheckResult { pass, fail, vacuous };

std::string to_string(CheckResult r);

struct Counterexample {
  std::uint64_t n = 0;      // scan variable
  std::uint64_t index = 0;  // coefficient index that failed
  std::string value;        // observed
  std::string expected;
};

struct CheckReport {
  std::string id;
  json params = json::object();
  std::uint64_t n_max = 0;
  std::uint64_t checked = 0;  // admissible points actually compared
  CheckResult result = CheckResult::pass;
  std::optional<Counterexample> counterexample;
  std::string note;
  double wall_ms = 0.0;
};

/// Timing lives under "wall_ms" only, so two runs differ in that key alone.
json to_json(const CheckReport& r);

json to_json(const CongruenceFamily& fam);
/// {"r":3,"A":605,"B":126,"mod":5,"filter":{"p":11,"residues":[...]}};
/// optional "series":"c" and "label". Throws std::invalid_argument.
CongruenceFamily family_from_json(const json& j);

/// {"N":4,"factors":{"1":184,"2":4}} with optional "E4": power.
ModularFormSpec form_from_json(const json& j);
json to_json(const EtaQuotient& eq);
json to_json(const FormMeta& meta);
json to_json(const NewmanProfile& prof);

}  // namespace rcolor
