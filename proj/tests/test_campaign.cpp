#include <doctest.h>
#include <cmath>

#include "kfibpal/baker.hpp"
#include "kfibpal/campaign.hpp"
#include "kfibpal/pipeline.hpp"

using namespace kfibpal;
using namespace kfibpal::pipeline;

namespace {

BigInt top_cap() {
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), baker::index_cap_poly(900).hi().get(), MPFR_RNDU);
  return z;
}

}  // namespace

TEST_CASE("c3 bookkeeping") {
  CHECK(c3_consistent(BigRational(33, 2), 11));
  CHECK(c3_consistent(12, 8));
  CHECK_FALSE(c3_consistent(BigRational(1, 1000), 11));
  CHECK(std::abs(log10_approx(BigRational(pow10(500), 3)) - (500 - std::log10(3.0))) < 1e-9);
  CHECK_THROWS(log10_approx(0));
}

TEST_CASE("one outer instance lands within the escalation budget") {
  const BigInt cap = top_cap();
  LatticeForm lf = lattice_form({Form::outer, 5, 4, 0, 0}, cap);
  SolverSettings s;
  InstanceResult r = solve_instance(lf, {5, 0, 4, 0}, BigRational(33, 2), 10, 21 * pow10(177), s);
  REQUIRE(r.success);
  CHECK(r.decades >= 1);
  CHECK(r.height_floor >= 100);
  CHECK(r.height_floor <= 130);
  CHECK(r.floors.size() == 3);

  SUBCASE("floors reproduce at higher precision and a nudged floor is caught") {
    CHECK(audit_floors(lf, r.scale, r.floors, r.digits + 100).match);
    for (int delta : {-1, 1}) {
      auto tampered = r.floors;
      tampered.back() += delta;
      CHECK_FALSE(audit_floors(lf, r.scale, tampered, r.digits + 100).match);
      tampered = r.floors;
      tampered.front() += delta;
      CHECK_FALSE(audit_floors(lf, r.scale, tampered, r.digits + 100).match);
    }
  }
}

TEST_CASE("a tiny budget fails honestly") {
  LatticeForm lf = lattice_form({Form::outer, 5, 4, 0, 0}, top_cap());
  SolverSettings s;
  s.budget_decades = 0;
  InstanceResult r = solve_instance(lf, {5, 0, 4, 0}, BigRational(33, 2), 10, pow10(150), s);
  CHECK_FALSE(r.success);
  CHECK_FALSE(r.failure.empty());
}

TEST_CASE("sabotaged c3 stops the campaign") {
  CampaignPlan plan;
  plan.id = "sabotage";
  plan.form = Form::outer;
  plan.constant = {BigRational(1, 1000), 11};
  plan.start_scale = 21 * pow10(177);
  plan.coeff_cap = top_cap();
  plan.keys = {{5, 0, 4, 0}};
  plan.derive = [](InstanceResult p, std::optional<InstanceResult>) {
    InstanceRecord r;
    r.primary = std::move(p);
    r.ok = true;
    return r;
  };
  CampaignReport rep = run_campaign(plan);
  CHECK_FALSE(rep.c3_consistent);
  CHECK_FALSE(rep.success);
  CHECK(rep.instances == 0);
}

TEST_CASE("sabotaged c3 makes the proof inconclusive") {
  ProofConfig cfg;
  cfg.order_lo = 2;
  cfg.order_hi = 4;
  cfg.outer_const.c3 = BigRational(1, 1000);
  ProofCertificate cert = run_full_proof(cfg);
  CHECK_FALSE(cert.case1.stage1.success);
  CHECK(cert.verdict == "inconclusive");
  CHECK_FALSE(cert.failures.empty());
}

TEST_CASE("deterministic worst instance") {
  InstanceRecord a, b;
  a.derived = b.derived = 120;
  a.primary.key = {10, 0, 3, 0};
  b.primary.key = {10, 0, 5, 0};
  CHECK(worse_than(a, b));
  CHECK_FALSE(worse_than(b, a));
  b.derived = 121;
  CHECK(worse_than(b, a));
}
