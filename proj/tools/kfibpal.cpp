#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kfibpal/baker.hpp"
#include "kfibpal/certificate.hpp"
#include "kfibpal/kfib.hpp"
#include "kfibpal/lattice.hpp"
#include "kfibpal/pipeline.hpp"
#include "kfibpal/realnum.hpp"
#include "problem_file.hpp"

using namespace kfibpal;
using realnum::RealInterval;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

struct ProveOptions {
  bool full = false;
  int stride = 10;
  int prec = 240;
  std::string out;
  int kmin = 2;
  int kmax = 900;
  std::string outer_c3;
  bool quiet = false;
};

int cmd_prove(const ProveOptions& o) {
  pipeline::ProofConfig cfg;
  cfg.full = o.full;
  cfg.stride = o.stride;
  cfg.order_lo = o.kmin;
  cfg.order_hi = o.kmax;
  // Case II works 710 digits above case I: its scales reach 10^900.
  cfg.case1_digits = o.prec;
  cfg.case2_digits = o.prec + 710;
  if (!o.outer_c3.empty()) cfg.outer_const.c3 = cli::parse_rational(o.outer_c3);
  if (!o.quiet) cfg.progress = [](const std::string& line) { std::cerr << "[prove] " << line << std::endl; };
  pipeline::ProofCertificate cert = pipeline::run_full_proof(cfg);
  if (!o.out.empty()) pipeline::write_certificate(cert, o.out);
  std::cout << "small n: " << (cert.small_n.success ? "ok" : "FAILED") << "\n";
  if (!cert.case2.skipped) {
    std::cout << "case II: round 1 k <= " << cert.case2.round1.order_bound << ", round 2 k <= "
              << cert.case2.round2.order_bound << (cert.case2.success ? "" : " (FAILED)") << "\n";
  } else {
    std::cout << "case II: skipped (restricted order range)\n";
  }
  const auto& c1 = cert.case1;
  std::cout << "case I: ell <= " << c1.outer_max << ", m <= " << c1.middle_max << ", n <= " << c1.index_max
            << ", enumerated n <= " << c1.enumeration_limit << ", solutions " << c1.solutions.size() << "\n";
  for (const auto& s : c1.solutions) std::cout << "  F_" << s.index << "^(" << s.order << ") = " << s.value << "\n";
  for (const auto& f : cert.failures) std::cout << "failure: " << f << "\n";
  std::cout << "verdict: " << cert.verdict << "\n";
  return cert.verdict == "inconclusive" ? 1 : 0;
}

int cmd_search(int kmin, int kmax, long nmin, long nmax) {
  auto sols = kfib::search_solutions(kmin, kmax, nmin, nmax);
  std::cout << "k,n,value,d1,d2,ell,m\n";
  for (const auto& s : sols) {
    const auto& d = s.decomposition;
    std::cout << s.order << ',' << s.index << ',' << s.value << ',' << d.d1 << ',' << d.d2 << ',' << d.outer << ','
              << d.middle << "\n";
  }
  std::cout << "# searched k in [" << kmin << ", " << kmax << "], n in [" << nmin << ", " << nmax << "]: "
            << sols.size() << " solution(s)\n";
  return 0;
}

int cmd_pow2_scan(int max_outer, int max_middle) {
  auto scan = kfib::pow2_palindrome_scan(max_outer, max_middle);
  for (const auto& h : scan.hits) std::cout << h.value << " " << kfib::to_string(h.decomposition) << "\n";
  std::cout << "# " << scan.candidates << " candidates, " << scan.hits.size() << " power(s) of two\n";
  return 0;
}

int cmd_reduce(const std::string& path) {
  lattice::ReductionProblem p = cli::load_problem(slurp(path));
  lattice::ReductionOutcome o = lattice::deweger_bound(p);
  std::cout << "dim " << p.etas.size() << ", scale " << to_sci(p.scale, 6) << "\n";
  std::cout << "delta^2   " << to_sci(o.bound.delta_squared, 10) << "\n";
  std::cout << "S         " << to_sci(o.sum_sq, 10) << "\n";
  std::cout << "T         " << o.allowance << "\n";
  std::cout << "condition delta^2 > T^2 + S: " << (o.condition ? "holds" : "fails") << "\n";
  if (o.condition) std::cout << "height    <= " << o.height.hi().str(12) << " (floor " << o.height_floor << ")\n";
  return o.condition ? 0 : 1;
}

int cmd_matveev(int num_logs, int degree, const std::string& coeff_bound, const std::string& heights) {
  baker::MatveevInstance inst{num_logs, degree, RealInterval::decimal(coeff_bound, baker::kDigits), {}};
  for (const auto& a : split_commas(heights)) inst.heights.push_back(RealInterval::decimal(a, baker::kDigits));
  RealInterval v = baker::matveev_bound(inst);
  std::cout << "log|Gamma| > " << v.lo().str(12) << "\n";
  return 0;
}

int cmd_alpha(int order, int digits) {
  auto root = realnum::alpha(order, digits);
  std::cout << "alpha(" << order << ") in " << root.enclosure.str(digits + 2) << "\n";
  std::cout << "Psi(lo) = " << root.psi_at_lo.mid_str(6) << " < 0 < Psi(hi) = " << root.psi_at_hi.mid_str(6) << "\n";
  return 0;
}

int cmd_caps(int order) {
  baker::IndexCaps c = baker::index_caps(order);
  std::cout << "k = " << order << "\n";
  std::cout << "n cap          " << c.n_cap.hi().str(6) << "\n";
  std::cout << "fixed point    " << c.fixed_point.hi().str(6) << (c.fixed_point_below_cap ? " (below cap)" : " (ABOVE cap)")
            << "\n";
  std::cout << "m coefficient  " << c.m_coefficient.hi().str(6) << "\n";
  std::cout << "m cap at n cap " << c.m_cap(realnum::log(c.n_cap)).hi().str(6) << "\n";
  auto ell = baker::outer_length_cap(order, c.n_cap);
  std::cout << "ell cap        " << ell.cap.hi().str(6) << (ell.dominates ? "" : " (does not dominate)") << "\n";
  std::cout << "n cap < 2^(k/2): " << (baker::index_cap_below_half_power(order) ? "yes" : "no") << "\n";
  return c.fixed_point_below_cap ? 0 : 1;
}

int cmd_audit(const std::string& path, int extra) {
  const std::string text = slurp(path);
  auto summary = pipeline::parse_certificate(text);
  auto problems = pipeline::audit_certificate_floors(text, extra);
  for (const auto& p : problems) std::cout << p << "\n";
  std::cout << "verdict " << summary.verdict << ", floors " << (problems.empty() ? "reproduce" : "DO NOT reproduce") << "\n";
  return problems.empty() && summary.verdict != "inconclusive" ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kfibpal: k-Fibonacci palindromes of two repdigits"};
  app.require_subcommand(1);

  ProveOptions prove;
  auto* p = app.add_subcommand("prove", "run the full bound chain and enumeration");
  auto* full = p->add_flag("--full", prove.full, "every (k, ell) in the second reduction stage");
  p->add_option("--stride", prove.stride, "sample every N-th k and ell in the second stage")->excludes(full)->check(CLI::PositiveNumber);
  p->add_option("--prec", prove.prec, "case I working digits (case II uses 710 more)")->check(CLI::Range(60, 100000));
  p->add_option("--out", prove.out, "write the JSON certificate here");
  p->add_option("--kmin", prove.kmin, "restrict the order range")->check(CLI::Range(2, 900));
  p->add_option("--kmax", prove.kmax, "restrict the order range")->check(CLI::Range(2, 900));
  p->add_option("--outer-c3", prove.outer_c3, "override c3 of the outer and middle forms");
  p->add_flag("--quiet", prove.quiet, "no progress lines");

  int kmin = 2, kmax = 900;
  long nmin = 1, nmax = 2138;
  auto* s = app.add_subcommand("search", "enumerate palindromic k-Fibonacci numbers");
  s->add_option("--kmin", kmin)->check(CLI::Range(2, 1 << 20));
  s->add_option("--kmax", kmax)->check(CLI::Range(2, 1 << 20));
  s->add_option("--nmin", nmin)->check(CLI::PositiveNumber);
  s->add_option("--nmax", nmax)->check(CLI::PositiveNumber);

  int max_ell = 3, max_m = 12;
  auto* ps = app.add_subcommand("pow2-scan", "powers of two that are palindromes of two repdigits");
  ps->add_option("--max-ell", max_ell)->check(CLI::PositiveNumber);
  ps->add_option("--max-m", max_m)->check(CLI::PositiveNumber);

  std::string problem;
  auto* r = app.add_subcommand("reduce", "run one lattice reduction from a JSON problem file");
  r->add_option("problem", problem)->required()->check(CLI::ExistingFile);

  int t = 3, degree = 1;
  std::string coeff = "1", heights;
  auto* m = app.add_subcommand("matveev", "Matveev lower bound for log|Gamma|");
  m->add_option("--t", t, "number of logarithms")->check(CLI::PositiveNumber);
  m->add_option("--D", degree, "degree of the field")->check(CLI::PositiveNumber);
  m->add_option("--B", coeff, "bound on the integer coefficients");
  m->add_option("--A", heights, "A_1,...,A_t")->required();

  int order = 2, digits = 50;
  auto* a = app.add_subcommand("alpha", "certified enclosure of the dominant root");
  a->add_option("--k", order)->required()->check(CLI::Range(2, 1 << 20));
  a->add_option("--prec", digits)->check(CLI::Range(5, 100000));

  int caps_order = 2;
  auto* c = app.add_subcommand("caps", "absolute caps on n, m and ell for one k");
  c->add_option("--k", caps_order)->required()->check(CLI::Range(2, 1 << 20));

  std::string cert_path;
  int extra = 100;
  auto* au = app.add_subcommand("audit", "re-derive a certificate's lattice floors at higher precision");
  au->add_option("certificate", cert_path)->required()->check(CLI::ExistingFile);
  au->add_option("--extra-digits", extra)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*p) return cmd_prove(prove);
    if (*s) return cmd_search(kmin, kmax, nmin, nmax);
    if (*ps) return cmd_pow2_scan(max_ell, max_m);
    if (*r) return cmd_reduce(problem);
    if (*m) return cmd_matveev(t, degree, coeff, heights);
    if (*a) return cmd_alpha(order, digits);
    if (*c) return cmd_caps(caps_order);
    if (*au) return cmd_audit(cert_path, extra);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
