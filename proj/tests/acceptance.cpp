// One line per acceptance criterion. The exit code is 0 when every red
// line is one of the documented conflicts (KNOWN), 1 otherwise.
#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "kfibpal/baker.hpp"
#include "kfibpal/campaign.hpp"
#include "kfibpal/certificate.hpp"
#include "kfibpal/kfib.hpp"
#include "kfibpal/pipeline.hpp"
#include "kfibpal/realnum.hpp"
#include "lattice_oracle.hpp"

using namespace kfibpal;
using namespace kfibpal::pipeline;
using Clock = std::chrono::steady_clock;

namespace {

struct Line {
  int id;
  bool pass;
  bool known_conflict;
  std::string text;
  std::vector<std::string> detail;
};

std::vector<Line> lines;

void report(Line line) {
  std::cout << (line.pass ? "PASS" : line.known_conflict ? "FAIL (known conflict)" : "FAIL") << "  criterion "
            << line.id << ": " << line.text << std::endl;
  for (const auto& d : line.detail) std::cout << "        " << d << std::endl;
  lines.push_back(std::move(line));
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

BigInt ceil_of(const realnum::RealInterval& x) {
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), x.hi().get(), MPFR_RNDU);
  return z;
}

void criterion1() {
  auto sols = kfib::search_solutions(2, 900, 9, 2138);
  bool pass = sols.size() == 1 && sols[0].order == 5 && sols[0].index == 11 && sols[0].value == 464;
  std::string found;
  for (const auto& s : sols) found += " (" + std::to_string(s.order) + ", " + std::to_string(s.index) + ", " + s.value.get_str() + ")";
  report({1, pass, false, "search k in [2, 900], n in [9, 2138] finds exactly:" + found, {}});
}

void criterion2() {
  auto scan = kfib::pow2_palindrome_scan(3, 12);
  report({2, scan.hits.empty() && scan.candidates == 2916, false,
          "pow2 scan ell <= 3, m <= 12: " + std::to_string(scan.hits.size()) + " hits over " +
              std::to_string(scan.candidates) + " candidates",
          {}});
}

void criterion3() {
  double worst = 0;
  bool pass = true;
  for (int k = 2; k <= 10; ++k) {
    for (long n = 2; n <= 120; ++n) {
      auto r = realnum::binet_residual(k, n, 60);
      pass = pass && r.certainly_below(BigRational(1, 2)) && r.certainly_above(BigRational(-1, 2));
      worst = std::max(worst, r.magnitude().to_double());
    }
  }
  report({3, pass, false, "|F_n - f_k(alpha) alpha^(n-1)| < 1/2 for 2 <= k <= 10, 2 <= n <= 120 (max " + fmt(worst) + ")", {}});
}

void criterion4() {
  bool pass = true;
  for (int k = 2; k <= 64; ++k) {
    auto stream = kfib::fib_stream(k, k + 2);
    for (int n = 2; n <= k + 1; ++n) pass = pass && stream[static_cast<std::size_t>(n - 1)] == pow2(static_cast<unsigned long>(n - 2));
    pass = pass && stream[static_cast<std::size_t>(k + 1)] == pow2(static_cast<unsigned long>(k)) - 1;
  }
  report({4, pass, false, "F_n = 2^(n-2) for 2 <= n <= k+1 and F_(k+2) = 2^k - 1, k <= 64", {}});
}

void criterion5() {
  const double published[] = {8.4e12, 1.5e12, 7.9e24, 8e23};
  auto aggs = baker::matveev_aggregates();
  bool pass = aggs.size() == 4;
  std::vector<std::string> detail;
  for (std::size_t i = 0; i < aggs.size() && i < 4; ++i) {
    const auto& a = aggs[i];
    bool match = std::abs(a.published.hi().to_double() / published[i] - 1) < 1e-9;
    pass = pass && match && a.within_slack && a.worst_case;
    detail.push_back(a.label + ": computed " + a.computed.hi().str(5) + " vs " + a.published.hi().str(3) +
                     (a.within_slack ? " ok" : " exceeds 2% slack") + (a.worst_case ? "" : ", not worst case"));
  }
  report({5, pass, false, "Matveev aggregates 8.4e12, 1.5e12, 7.9e24, 8e23 are upper bounds within 2%", detail});
}

void criterion6() {
  auto caps = baker::index_caps(900);
  bool n_ok = caps.n_cap.hi().to_double() < 1.9e59 && caps.fixed_point_below_cap;
  auto large = baker::large_order_caps();
  double k_nat = large.k_cap.get_d(), n_nat = large.n_cap.hi().to_double();
  bool k_match = std::abs(k_nat / 3.2e31 - 1) <= 0.01;
  bool n_match = std::abs(n_nat / 6.7e292 - 1) <= 0.01;
  auto ln10 = realnum::log(realnum::RealInterval::exact(10L, baker::kDigits));
  auto base10 = baker::resolve_log_power_cap(large.branch_b_coefficient / (ln10 * ln10), 2);
  double k10 = base10.cap.get_d();
  report({6, n_ok && k_match && n_match, n_ok,
          "index_caps(900) n < " + caps.n_cap.hi().str(4) + (n_ok ? " (< 1.9e59)" : " (NOT < 1.9e59)") +
              "; large-order caps k < " + fmt(k_nat) + ", n < " + fmt(n_nat) + " vs published 3.2e31, 6.7e292",
          {"k < c (log k)^2 with natural logs gives k ~ 1.84e32; with base-10 logs k ~ " + fmt(k10) +
               " (+2% over 3.2e31), and neither reading gives n ~ 6.7e292.",
           "The pipeline keeps the larger natural-log caps, so case II is run on n < " + fmt(n_nat) + "."}});
}

void criterion7(const ProofCertificate* cert) {
  ProofConfig cfg;
  const BigInt cap = ceil_of(baker::index_cap_poly(900));
  std::vector<InstanceKey> keys;
  for (int k : {2, 3, 10, 50, 100, 300, 600, 900})
    for (int d1 = 1; d1 <= 9; ++d1) keys.push_back({k, 0, d1, 0});
  std::vector<InstanceRecord> records;
  CampaignReport rep = run_campaign(outer_length_plan(cfg, cap, keys), &records);
  const bool bound_ok = rep.success && rep.bound <= 130;

  // The published scale on its own: one reduction per key, no escalation.
  long literal_ok = 0;
  BigRational max_ratio = 0, max_ratio_fallback = 0;
  const int digits = cfg.case1_digits;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const InstanceKey& key = keys[i];
    auto lf = lattice_form({Form::outer, key.order, key.d1, 0, 0}, cap);
    lattice::ReductionProblem p;
    p.etas = lf.etas(digits);
    p.eta0 = realnum::RealInterval::exact(0L, digits);
    p.scale = cfg.scale_stage1;
    p.coeff_bounds = lf.coeff_bounds;
    p.c3 = cfg.outer_const.c3;
    p.c4 = realnum::log(realnum::RealInterval::exact(10L, digits));
    lattice::ReductionOutcome o = lattice::deweger_bound(p);
    if (o.condition) ++literal_ok;
    BigRational ratio = BigRational(o.allowance * o.allowance + o.sum_sq) / o.bound.delta_squared;
    BigRational& worst = records[i].via == "fallback" ? max_ratio_fallback : max_ratio;
    if (ratio > worst) worst = ratio;
  }
  const bool literal_pass = literal_ok == static_cast<long>(keys.size());

  bool full_ok = false;
  std::string full_text = "full run not available";
  if (cert) {
    full_ok = cert->case1.stage1.success && cert->case1.stage2.success && cert->case1.outer_max <= 130 &&
              cert->case1.middle_max <= 132;
    full_text = "proof run: ell_max " + std::to_string(cert->case1.outer_max) + " (every k, d1), m_max " +
                std::to_string(cert->case1.middle_max) +
                (cert->config.full ? " (every k, ell)" : " (k, ell sampled with stride " + std::to_string(cert->config.stride) + ")") +
                "; published 118 / 120";
  }
  report({7, bound_ok && literal_pass && full_ok, bound_ok && full_ok,
          "sample k x d1 at C = 2.1e178: ell <= " + std::to_string(rep.bound) + " (" + std::to_string(rep.fallbacks) +
              " via the pow2 fallback); literal condition at C = 2.1e178 holds for " + std::to_string(literal_ok) + "/" +
              std::to_string(keys.size()),
          {"T = sum of bounds = " + to_sci(BigInt(2 * cap + 1), 4) + ", S = " + to_sci(BigInt(2 * cap * cap), 4) +
               "; at the published C the worst (T^2 + S)/delta^2 is " + to_sci(max_ratio, 3) +
               " (it must be below 1), so C has to grow by a few decades; the escalation does this. The " +
               std::to_string(rep.fallbacks) + " degenerate keys reach " + to_sci(max_ratio_fallback, 3) +
               " and go through the pow2 fallback.",
           full_text}});
}

void criterion8(const ProofCertificate* cert, double case2_seconds) {
  if (!cert || cert->case2.skipped) {
    report({8, false, false, "case II did not run", {}});
    return;
  }
  const auto& r1 = cert->case2.round1;
  const auto& r2 = cert->case2.round2;
  const double h = r1.outer.max_height ? r1.outer.max_height->hi().to_double() : 1e9;
  bool pass = r1.outer.success && r1.outer.instances == 9 && h <= 2000 && r2.success && r2.order_bound_outer <= 900 &&
              r2.order_bound_middle <= 900 && r2.order_bound_shift <= 900 && cert->config.case2_digits == 950 &&
              case2_seconds < 600;
  report({8, pass, false,
          "round 1 at C = 1e879: 9 pow2-outer heights <= " + fmt(h, 6) + "; round 2 at C = 1e195: k <= " +
              std::to_string(r2.order_bound_outer) + " / " + std::to_string(r2.order_bound_middle) + "; " +
              fmt(case2_seconds, 3) + " s at " + std::to_string(cert->config.case2_digits) + " digits",
          {"round 1 branches: k <= " + std::to_string(r1.order_bound_outer) + " or ell <= " + std::to_string(r1.outer_bound) +
           ", then k <= " + std::to_string(r1.order_bound_middle) + " over " + std::to_string(r1.middle.instances) +
           " pow2-middle instances",
           "round 2 shifted pow2-middle: " + std::to_string(r2.shifted) + " instances, k <= " +
               std::to_string(r2.order_bound_shift)}});
}

void criterion9(long count) {
  std::mt19937_64 rng(20261016);
  long bad[4] = {0, 0, 0, 0};
  for (long i = 0; i < count; ++i) {
    const int dim = 2 + static_cast<int>(i % 2);
    auto b = kfibpal::testing::random_basis(rng, dim, dim == 2 ? 100 : 20);
    auto c = kfibpal::testing::check_lll(b, 30);
    bad[0] += !c.reduced;
    bad[1] += !(c.unimodular && c.consistent);
    bad[2] += !c.below_shortest;
  }
  bool pass = bad[0] == 0 && bad[1] == 0 && bad[2] == 0;
  report({9, pass, false,
          std::to_string(count) + " random 2x2/3x3 bases: " + std::to_string(bad[0]) + " not reduced, " +
              std::to_string(bad[1]) + " non-unimodular, " + std::to_string(bad[2]) +
              " with delta above the shortest vector in [-30, 30]^dim",
          {}});
}

void criterion10(const ProofCertificate* cert, double seconds) {
  if (!cert) {
    report({10, false, false, "proof did not run", {}});
    return;
  }
  std::set<std::string> ids;
  for (const auto& d : cert->discrepancies) ids.insert(d.id);
  bool notes = ids.count("pow2-residual-relative-form") && ids.count("case1-sum-sq-allowance") &&
               ids.count("case1-index-limit-2138");
  bool pass = cert->verdict == "proved" && notes && seconds < 1800;
  std::vector<std::string> detail;
  for (const auto& f : cert->failures) detail.push_back("failure: " + f);
  report({10, pass, false,
          "prove --stride " + std::to_string(cert->config.stride) + ": verdict " + cert->verdict + " in " + fmt(seconds, 4) +
              " s; discrepancy notes " + (notes ? "present" : "MISSING") + "; floor audit " +
              (audit_certificate_floors(certificate_text(*cert)).empty() ? "clean" : "MISMATCH"),
          detail});
}

// Round-1 pow2-outer heights with the published n cap in place of the larger one.
void published_cap_variant() {
  ProofConfig cfg;
  const BigInt cap = 67 * pow10(291);
  SolverSettings s;
  s.base_digits = cfg.case2_digits;
  s.budget_decades = cfg.case2_budget;
  s.refine_decades = cfg.case2_refine;
  double worst = 0;
  int ok = 0;
  for (int d1 = 1; d1 <= 9; ++d1) {
    auto lf = lattice_form({Form::pow2_outer, 901, d1, 0, 0}, cap);
    auto r = solve_instance(lf, {901, 0, d1, 0}, cfg.pow2_outer_const.c3, 2, cfg.scale_round1, s);
    if (r.success) {
      ++ok;
      worst = std::max(worst, r.height.hi().to_double());
    }
  }
  std::cout << "info  published cap n < 6.7e292, round 1 pow2-outer: " << ok << "/9 land, max height " << fmt(worst, 6)
            << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kfibpal acceptance suite"};
  bool full = false;
  long lll_count = 10000;
  bool skip_proof = false;
  app.add_flag("--full", full, "run the proof with every (k, ell) in the second stage");
  app.add_option("--lll-count", lll_count, "random bases for the LLL property suite");
  app.add_flag("--skip-proof", skip_proof, "skip the proof run (criteria 7, 8 and 10 then fail)");
  CLI11_PARSE(app, argc, argv);

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();

  std::optional<ProofCertificate> cert;
  double total = 0, case2 = 0;
  if (!skip_proof) {
    ProofConfig cfg;
    cfg.full = full;
    auto t0 = Clock::now();
    std::optional<Clock::time_point> case2_start;
    cfg.progress = [&](const std::string& line) {
      std::cerr << "[" << fmt(seconds_since(t0), 4) << " s] " << line << std::endl;
      if (line == "case II round 1") case2_start = Clock::now();
      if (case2 == 0 && case2_start && line.rfind("case I stage 1", 0) == 0) {
        case2 = std::chrono::duration<double>(Clock::now() - *case2_start).count();
      }
    };
    cert = run_full_proof(cfg);
    total = seconds_since(t0);
  }
  const ProofCertificate* c = cert ? &*cert : nullptr;
  criterion7(c);
  criterion8(c, case2);
  criterion9(lll_count);
  criterion10(c, total);
  published_cap_variant();

  long pass = 0, known = 0, other = 0;
  for (const auto& l : lines) {
    if (l.pass) ++pass;
    else if (l.known_conflict) ++known;
    else ++other;
  }
  std::cout << "acceptance: " << pass << "/" << lines.size() << " pass, " << known << " known conflict(s), " << other
            << " unexpected failure(s)" << std::endl;
  return other == 0 ? 0 : 1;
}
