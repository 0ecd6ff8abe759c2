#include <doctest.h>
#include <algorithm>

#include <json.hpp>

#include "kfibpal/certificate.hpp"

using namespace kfibpal;
using namespace kfibpal::pipeline;

namespace {

ProofConfig small_config(int extra_digits) {
  ProofConfig cfg;
  cfg.order_lo = 2;
  cfg.order_hi = 8;
  cfg.stride = 40;
  cfg.case1_digits += extra_digits;
  cfg.case2_digits += extra_digits;
  return cfg;
}

const std::string& base_text() {
  static const std::string text = certificate_text(run_full_proof(small_config(0)));
  return text;
}

}  // namespace

TEST_CASE("restricted proof certificate") {
  CertificateSummary s = parse_certificate(base_text());
  CHECK(s.schema == 1);
  CHECK(s.verdict == "proved-restricted");
  CHECK(s.failures.empty());
  CHECK(s.large_order_bound == 0);
  CHECK(s.outer_max > 0);
  CHECK(s.outer_max <= 130);
  CHECK(s.middle_max <= 132);
  CHECK(s.index_max == 5 * (2 * s.outer_max + s.middle_max) + 2);
  CHECK(s.enumeration_limit >= 2138);
  CHECK(std::find(s.discrepancy_ids.begin(), s.discrepancy_ids.end(), "case1-index-limit-2138") != s.discrepancy_ids.end());
}

TEST_CASE("round trip") {
  auto j = nlohmann::ordered_json::parse(base_text());
  CHECK(j.dump(2) + "\n" == base_text());
  CHECK(j["config"]["scales"]["stage1"] == "21" + std::string(177, '0'));
  CHECK(j.contains("precision"));
  CHECK_FALSE(j["case1"]["stage1"]["worst"]["primary"].contains("digits"));
}

TEST_CASE("only the precision object changes with the working precision") {
  const std::string higher = certificate_text(run_full_proof(small_config(100)));
  CHECK(higher != base_text());
  CHECK(without_precision(higher) == without_precision(base_text()));
}

TEST_CASE("floor audit of a certificate") {
  CHECK(audit_certificate_floors(base_text()).empty());
  auto j = nlohmann::ordered_json::parse(base_text());
  auto& floors = j["case1"]["stage1"]["worst"]["primary"]["floors"];
  REQUIRE(floors.size() == 3);
  for (int delta : {-1, 1}) {
    auto tampered = j;
    BigInt f(tampered["case1"]["stage1"]["worst"]["primary"]["floors"][2].get<std::string>());
    tampered["case1"]["stage1"]["worst"]["primary"]["floors"][2] = BigInt(f + delta).get_str();
    CHECK(audit_certificate_floors(tampered.dump()).size() == 1);
  }
}

TEST_CASE("malformed certificates are rejected") {
  CHECK_THROWS_AS(parse_certificate("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_certificate("{\"schema\": 2}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_certificate("{\"schema\": 1}"), std::invalid_argument);
}
