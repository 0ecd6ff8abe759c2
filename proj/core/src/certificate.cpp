#include "kfibpal/certificate.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace kfibpal::pipeline {

using json = nlohmann::ordered_json;

namespace {

constexpr int kHeightDigits = 10;

std::string str(const BigInt& z) { return z.get_str(); }

json key_json(const InstanceKey& k) { return json::array({k.order, k.outer, k.d1, k.d2}); }

json constant_json(const FormConstant& c) { return {{"c3", kfibpal::to_string(c.c3)}, {"rhs", kfibpal::to_string(c.rhs)}}; }

json result_json(const InstanceResult& r) {
  json j;
  j["form"] = form_name(r.form);
  j["folded"] = r.folded;
  j["targeted"] = r.targeted;
  j["dim"] = r.dim;
  j["success"] = r.success;
  j["scale"] = str(r.scale);
  j["decades"] = r.decades;
  j["reductions"] = r.attempts;
  j["hermite_skips"] = r.hermite_skips;
  if (r.success) {
    j["delta_squared"] = to_sci(r.delta_squared, kHeightDigits);
    j["sum_sq"] = str(r.sum_sq);
    j["allowance"] = str(r.allowance);
    j["height_upper"] = r.height.hi().str(kHeightDigits);
    j["height_floor"] = r.height_floor;
    json floors = json::array();
    for (const auto& f : r.floors) floors.push_back(str(f));
    j["floors"] = floors;
  } else {
    j["failure"] = r.failure;
  }
  return j;
}

json record_json(const InstanceRecord& r) {
  json j;
  j["key"] = key_json(r.primary.key);
  j["derived"] = r.derived;
  j["ok"] = r.ok;
  j["via"] = r.via;
  j["primary"] = result_json(r.primary);
  if (r.fallback) j["fallback"] = result_json(*r.fallback);
  return j;
}

const InstanceResult& kept(const InstanceRecord& r) { return r.via == "fallback" && r.fallback ? *r.fallback : r.primary; }

json campaign_json(const CampaignReport& c) {
  json j;
  j["id"] = c.id;
  j["form"] = form_name(c.form);
  j["start_scale"] = str(c.start_scale);
  j["constant"] = constant_json(c.constant);
  if (c.fallback_constant) j["fallback_constant"] = constant_json(*c.fallback_constant);
  j["c3_consistent"] = c.c3_consistent;
  j["c4"] = "log " + std::to_string(c.c4_base);
  j["coeff_cap"] = str(c.coeff_cap);
  j["orders"] = {c.order_lo, c.order_hi};
  j["lengths"] = {c.outer_lo, c.outer_hi};
  j["instances"] = c.instances;
  j["escalated"] = c.escalated;
  j["reductions"] = c.reductions;
  j["hermite_skips"] = c.hermite_skips;
  j["fallbacks"] = c.fallbacks;
  j["failures"] = c.failures;
  j["max_decades"] = c.max_decades;
  json hist = json::object();
  for (const auto& [d, n] : c.decade_histogram) hist[std::to_string(d)] = n;
  j["decade_histogram"] = hist;
  j["bound"] = c.bound;
  if (c.max_height) j["max_height_upper"] = c.max_height->hi().str(kHeightDigits);
  if (c.worst) j["worst"] = record_json(*c.worst);
  json fb = json::array();
  for (const auto& k : c.fallback_keys) fb.push_back(key_json(k));
  j["fallback_keys"] = fb;
  json failed = json::array();
  for (const auto& r : c.failed) failed.push_back(record_json(r));
  j["failed"] = failed;
  j["success"] = c.success;
  return j;
}

json campaign_precision(const CampaignReport& c) {
  json j;
  j["base_digits"] = c.digits;
  if (c.worst) j["worst_digits"] = kept(*c.worst).digits;
  return j;
}

json config_json(const ProofConfig& c) {
  json j;
  j["orders"] = {c.order_lo, c.order_hi};
  j["full"] = c.full;
  j["stride"] = c.full ? 1 : c.stride;
  j["budget_decades"] = {{"case1", c.case1_budget}, {"case2", c.case2_budget}};
  j["refine_decades"] = {{"case1", c.case1_refine}, {"case2", c.case2_refine}};
  j["enumeration_floor"] = c.enumeration_floor;
  j["scales"] = {{"stage1", str(c.scale_stage1)},
                 {"stage2", str(c.scale_stage2)},
                 {"round1", str(c.scale_round1)},
                 {"round2", str(c.scale_round2)}};
  j["constants"] = {{"outer", constant_json(c.outer_const)},
                    {"pow2_outer", constant_json(c.pow2_outer_const)},
                    {"pow2_middle", constant_json(c.pow2_middle_const)},
                    {"fallback_middle", constant_json(c.fallback_middle_const)},
                    {"shift_order", constant_json(c.shift_order_const)},
                    {"shift_length", constant_json(c.shift_length_const)}};
  return j;
}

json small_n_json(const SmallNReport& s) {
  json j;
  j["divisibility_cases"] = s.divisibility.cases.size();
  j["divisibility_counterexamples"] = s.divisibility.counterexamples;
  auto scan = [](const kfib::Pow2Scan& p) {
    json hits = json::array();
    for (const auto& h : p.hits) hits.push_back(str(h.value));
    return json{{"candidates", p.candidates}, {"hits", hits}};
  };
  j["pow2_scan"] = scan(s.scan);
  j["pow2_scan_widened"] = scan(s.widened);
  j["success"] = s.success;
  return j;
}

json round_json(const Case2Round& r) {
  json j;
  j["index_cap"] = str(r.index_cap);
  j["pow2_outer"] = campaign_json(r.outer);
  j["order_bound_outer"] = r.order_bound_outer;
  j["length_bound"] = r.outer_bound;
  j["shift_order"] = campaign_json(r.shift_order);
  j["shift_length"] = campaign_json(r.shift_length);
  json shift = json::array();
  for (const auto& [d1, len] : r.shift_length_bounds) {
    shift.push_back({{"d1", d1}, {"length_above", len}, {"order_bound", r.shift_order_bounds.at(d1)}});
  }
  j["shift_bounds"] = shift;
  j["shifted_instances"] = r.shifted;
  j["order_bound_shift"] = r.order_bound_shift;
  j["pow2_middle"] = campaign_json(r.middle);
  j["order_bound_middle"] = r.order_bound_middle;
  j["order_bound"] = r.order_bound;
  j["success"] = r.success;
  return j;
}

json case1_json(const Case1Report& c) {
  json j;
  j["index_cap"] = str(c.index_cap);
  j["stage1"] = campaign_json(c.stage1);
  j["outer_max"] = c.outer_max;
  j["stage2"] = campaign_json(c.stage2);
  j["middle_max"] = c.middle_max;
  j["index_max"] = c.index_max;
  j["enumeration_limit"] = c.enumeration_limit;
  json sols = json::array();
  for (const auto& s : c.solutions) {
    sols.push_back({{"k", s.order}, {"n", s.index}, {"value", str(s.value)},
                    {"palindrome", kfib::to_string(s.decomposition)}});
  }
  j["solutions"] = sols;
  j["expected_solutions"] = c.expected_solutions;
  j["none_at_n8"] = c.none_at_index8;
  j["success"] = c.success;
  return j;
}

json certificate_json(const ProofCertificate& cert) {
  json j;
  j["schema"] = cert.schema;
  j["tool"] = "kfibpal";
  j["tool_version"] = cert.tool_version;
  j["verdict"] = cert.verdict;
  j["failures"] = cert.failures;
  j["config"] = config_json(cert.config);

  json prec;
  prec["case1_digits"] = cert.config.case1_digits;
  prec["case2_digits"] = cert.config.case2_digits;
  prec["guard_digits"] = cert.config.guard_digits;
  json camps = json::object();
  auto add = [&](const CampaignReport& c) {
    if (!c.id.empty()) camps[c.id] = campaign_precision(c);
  };
  add(cert.case1.stage1);
  add(cert.case1.stage2);
  if (!cert.case2.skipped) {
    for (const auto* r : {&cert.case2.round1, &cert.case2.round2}) {
      add(r->outer);
      add(r->shift_order);
      add(r->shift_length);
      add(r->middle);
    }
  }
  prec["campaigns"] = camps;
  j["precision"] = prec;

  j["small_n"] = small_n_json(cert.small_n);
  json c2;
  c2["skipped"] = cert.case2.skipped;
  if (!cert.case2.skipped) {
    c2["order_cap"] = str(cert.case2.order_cap);
    c2["round1"] = round_json(cert.case2.round1);
    c2["round2"] = round_json(cert.case2.round2);
  }
  c2["success"] = cert.case2.success;
  j["case2"] = c2;
  j["case1"] = case1_json(cert.case1);
  json disc = json::array();
  for (const auto& d : cert.discrepancies) disc.push_back({{"id", d.id}, {"note", d.note}});
  j["discrepancies"] = disc;
  return j;
}

json parse_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("certificate: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema")) throw std::invalid_argument("certificate: missing schema");
  if (j["schema"] != 1) throw std::invalid_argument("certificate: unsupported schema");
  return j;
}

Form form_from_name(const std::string& name) {
  for (Form f : {Form::outer, Form::middle, Form::pow2_outer, Form::pow2_middle}) {
    if (form_name(f) == name) return f;
  }
  throw std::invalid_argument("certificate: unknown form " + name);
}

}  // namespace

std::string certificate_text(const ProofCertificate& cert) { return certificate_json(cert).dump(2) + "\n"; }

void write_certificate(const ProofCertificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << certificate_text(cert);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string without_precision(const std::string& text) {
  json j = parse_json(text);
  j.erase("precision");
  return j.dump(2);
}

CertificateSummary parse_certificate(const std::string& text) {
  json j = parse_json(text);
  CertificateSummary s;
  try {
    s.schema = j.at("schema").get<int>();
    s.tool_version = j.at("tool_version").get<std::string>();
    s.verdict = j.at("verdict").get<std::string>();
    const json& c1 = j.at("case1");
    s.outer_max = c1.at("outer_max").get<long>();
    s.middle_max = c1.at("middle_max").get<long>();
    s.index_max = c1.at("index_max").get<long>();
    s.enumeration_limit = c1.at("enumeration_limit").get<long>();
    const json& c2 = j.at("case2");
    if (!c2.at("skipped").get<bool>()) s.large_order_bound = c2.at("round2").at("order_bound").get<long>();
    for (const auto& d : j.at("discrepancies")) s.discrepancy_ids.push_back(d.at("id").get<std::string>());
    s.failures = j.at("failures").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("certificate: ") + e.what());
  }
  return s;
}

std::vector<std::string> audit_certificate_floors(const std::string& text, int extra_digits) {
  json j = parse_json(text);
  std::vector<const json*> camps;
  const json& c1 = j.at("case1");
  camps.push_back(&c1.at("stage1"));
  camps.push_back(&c1.at("stage2"));
  if (!j.at("case2").at("skipped").get<bool>()) {
    for (const char* r : {"round1", "round2"}) {
      for (const char* c : {"pow2_outer", "shift_order", "shift_length", "pow2_middle"}) camps.push_back(&j["case2"][r][c]);
    }
  }
  std::vector<std::string> problems;
  for (const json* c : camps) {
    if (!c->contains("worst")) continue;
    const std::string id = c->at("id").get<std::string>();
    const json& w = c->at("worst");
    const json& res = w.at("via") == "fallback" ? w.at("fallback") : w.at("primary");
    const json& key = w.at("key");
    InstanceKey k{key[0].get<int>(), key[1].get<long>(), key[2].get<int>(), key[3].get<int>()};
    LatticeForm lf = lattice_form({form_from_name(res.at("form").get<std::string>()), k.order, k.d1, k.d2, k.outer},
                                  parse_decimal_integer(c->at("coeff_cap").get<std::string>()),
                                  res.value("targeted", false));
    std::vector<BigInt> claimed;
    for (const auto& f : res.at("floors")) claimed.push_back(parse_decimal_integer(f.get<std::string>()));
    const json& p = j.at("precision").at("campaigns").at(id);
    const int digits = p.at("worst_digits").get<int>() + extra_digits;
    FloorAudit a = audit_floors(lf, parse_decimal_integer(res.at("scale").get<std::string>()), claimed, digits);
    if (!a.match) problems.push_back(id + ": floors of " + to_string(k) + " do not reproduce at " + std::to_string(digits) + " digits");
  }
  return problems;
}

}  // namespace kfibpal::pipeline
