#include "rcolor/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace rcolor {

std::string to_string(CheckResult r) {
  switch (r) {
    case CheckResult::pass: return "pass";
    case CheckResult::fail: return "fail";
    case CheckResult::vacuous: return "vacuous";
  }
  return "unknown";
}

json to_json(const CheckReport& r) {
  json j;
  j["id"] = r.id;
  j["params"] = r.params;
  j["scan"] = {{"n_max", r.n_max}, {"checked", r.checked}};
  j["result"] = to_string(r.result);
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"n", c.n}, {"index", c.index}, {"value", c.value}, {"expected", c.expected}};
  } else {
    j["counterexample"] = nullptr;
  }
  if (!r.note.empty()) j["note"] = r.note;
  j["wall_ms"] = r.wall_ms;
  return j;
}

json to_json(const CongruenceFamily& fam) {
  json j;
  if (fam.series == FamilySeries::c) j["series"] = "c";
  j["r"] = fam.r;
  j["A"] = fam.A;
  j["B"] = fam.B;
  j["mod"] = fam.modulus;
  if (fam.filter) j["filter"] = {{"p", fam.filter->p}, {"residues", fam.filter->residues}};
  if (!fam.label.empty()) j["label"] = fam.label;
  return j;
}

namespace {

template <typename T>
T require_field(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad field \"") + key + "\": " + e.what());
  }
}

}  // namespace

CongruenceFamily family_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("family must be a JSON object");
  CongruenceFamily fam;
  if (j.contains("series")) {
    const auto s = require_field<std::string>(j, "series");
    if (s == "c") {
      fam.series = FamilySeries::c;
    } else if (s == "a" || s == "a_r") {
      fam.series = FamilySeries::a_r;
    } else {
      throw std::invalid_argument("unknown series \"" + s + "\"");
    }
  }
  fam.r = fam.series == FamilySeries::c ? j.value("r", 3U) : require_field<unsigned>(j, "r");
  fam.A = require_field<std::uint64_t>(j, "A");
  fam.B = require_field<std::uint64_t>(j, "B");
  fam.modulus = require_field<std::uint64_t>(j, "mod");
  if (fam.series == FamilySeries::a_r && fam.r == 0) throw std::invalid_argument("r must be at least 1");
  if (fam.A == 0) throw std::invalid_argument("A must be positive");
  if (fam.modulus < 2) throw std::invalid_argument("mod must be at least 2");
  if (j.contains("filter") && !j.at("filter").is_null()) {
    const json& f = j.at("filter");
    ResidueFilter filter;
    filter.p = require_field<std::uint64_t>(f, "p");
    if (filter.p == 0) throw std::invalid_argument("filter p must be positive");
    filter.residues = require_field<std::vector<std::uint64_t>>(f, "residues");
    for (auto r : filter.residues) {
      if (r >= filter.p) throw std::invalid_argument("filter residue out of range");
    }
    std::sort(filter.residues.begin(), filter.residues.end());
    filter.residues.erase(std::unique(filter.residues.begin(), filter.residues.end()), filter.residues.end());
    fam.filter = std::move(filter);
  }
  fam.label = j.value("label", std::string{});
  return fam;
}

ModularFormSpec form_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("form must be a JSON object");
  ModularFormSpec spec;
  spec.eta.level = require_field<std::uint64_t>(j, "N");
  if (!j.contains("factors") || !j.at("factors").is_object()) {
    throw std::invalid_argument("missing object field \"factors\"");
  }
  for (const auto& [key, val] : j.at("factors").items()) {
    std::uint64_t delta = 0;
    try {
      std::size_t used = 0;
      delta = std::stoull(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw std::invalid_argument("factor key \"" + key + "\" is not a positive integer");
    }
    if (!val.is_number_integer()) throw std::invalid_argument("factor exponent must be an integer");
    spec.eta.factors[delta] = val.get<long long>();
  }
  if (j.contains("E4")) spec.e4_power = require_field<unsigned>(j, "E4");
  return spec;
}

json to_json(const EtaQuotient& eq) {
  json factors = json::object();
  for (const auto& [delta, r] : eq.factors) factors[std::to_string(delta)] = r;
  return {{"N", eq.level}, {"factors", factors}};
}

json to_json(const FormMeta& meta) {
  json j;
  if (meta.has_integral_weight()) {
    j["weight"] = meta.twice_weight / 2;
  } else {
    j["weight"] = std::to_string(meta.twice_weight) + "/2";
  }
  if (meta.eta_twice_weight % 2 == 0) {
    j["eta_weight"] = meta.eta_twice_weight / 2;
  } else {
    j["eta_weight"] = std::to_string(meta.eta_twice_weight) + "/2";
  }
  j["offset24"] = meta.offset24;
  j["leading_exponent"] = meta.offset24 % 24 == 0 ? json(meta.offset24 / 24)
                                                  : json(std::to_string(meta.offset24) + "/24");
  j["character_disc"] = meta.integral_weight ? json(meta.character_disc.get_str()) : json(nullptr);
  j["cond_sum1_mod24"] = meta.cond_sum1;
  j["cond_sum2_mod24"] = meta.cond_sum2;
  json cusps = json::array();
  for (const auto& c : meta.cusp_orders) {
    cusps.push_back({{"d", c.d},
                     {"order", c.den == 1 ? std::to_string(c.num)
                                          : std::to_string(c.num) + "/" + std::to_string(c.den)},
                     {"nonnegative", c.nonnegative()}});
  }
  j["cusp_orders"] = cusps;
  j["sturm"] = meta.sturm ? json(*meta.sturm) : json(nullptr);
  j["checks"] = {{"integral_weight", meta.integral_weight},
                 {"cond_sum1", meta.cond1_ok},
                 {"cond_sum2", meta.cond2_ok},
                 {"cusps", meta.cusps_ok}};
  j["passes"] = meta.passes;
  return j;
}

json to_json(const NewmanProfile& prof) {
  json j;
  j["p"] = prof.p;
  j["xi"] = prof.xi.get_str();
  j["xi_mod5"] = prof.xi_mod5;
  j["p_mod5"] = prof.p_mod5;
  j["omega"] = prof.omega ? json(*prof.omega) : json(nullptr);
  return j;
}

}  // namespace rcolor
