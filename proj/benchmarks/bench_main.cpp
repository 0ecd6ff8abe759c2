#include <benchmark/benchmark.h>

#include "kfibpal/baker.hpp"
#include "kfibpal/forms.hpp"
#include "kfibpal/kfib.hpp"
#include "kfibpal/lattice.hpp"
#include "kfibpal/realnum.hpp"

using namespace kfibpal;
using realnum::RealInterval;

namespace {

// A degenerate-free pow2 middle lattice at the round-one size, or a case I
// outer lattice, depending on `large`.
lattice::ReductionProblem problem(bool large) {
  lattice::ReductionProblem p;
  if (large) {
    BigInt cap;
    mpfr_get_z(cap.get_mpz_t(), baker::large_order_caps().n_cap.hi().get(), MPFR_RNDU);
    auto lf = pipeline::lattice_form({pipeline::Form::pow2_middle, 901, 3, 5, 300}, cap);
    p.etas = lf.etas(950);
    p.eta0 = RealInterval::exact(0L, 950);
    p.scale = pow10(900);
    p.coeff_bounds = lf.coeff_bounds;
    p.c3 = 12;
    p.c4 = realnum::log(RealInterval::exact(2L, 950));
  } else {
    auto lf = pipeline::lattice_form({pipeline::Form::outer, 600, 4, 0, 0}, pow10(60));
    p.etas = lf.etas(240);
    p.eta0 = RealInterval::exact(0L, 240);
    p.scale = pow10(180);
    p.coeff_bounds = lf.coeff_bounds;
    p.c3 = BigRational(33, 2);
    p.c4 = realnum::log(RealInterval::exact(10L, 240));
  }
  return p;
}

template <class Reduce>
void run_lll(benchmark::State& state, Reduce reduce) {
  auto lat = lattice::build_approx_lattice(problem(state.range(0) != 0));
  for (auto _ : state) benchmark::DoNotOptimize(reduce(lat.basis));
}

void BM_LllPlain(benchmark::State& s) { run_lll(s, [](const auto& b) { return lattice::lll_reduce_with_transform(b); }); }
void BM_LllStaged(benchmark::State& s) { run_lll(s, [](const auto& b) { return lattice::lll_reduce_staged(b); }); }
void BM_LllFloat(benchmark::State& s) { run_lll(s, [](const auto& b) { return lattice::lll_reduce_fp(b); }); }
BENCHMARK(BM_LllPlain)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LllStaged)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LllFloat)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DewegerBound(benchmark::State& state) {
  auto p = problem(state.range(0) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(lattice::deweger_bound(p));
}
BENCHMARK(BM_DewegerBound)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Round-one pow2 middle as a target against the shared 2-D lattice.
void BM_DewegerBoundShared(benchmark::State& state) {
  BigInt cap;
  mpfr_get_z(cap.get_mpz_t(), baker::large_order_caps().n_cap.hi().get(), MPFR_RNDU);
  auto lf = pipeline::lattice_form({pipeline::Form::pow2_middle, 901, 3, 5, 300}, cap, true);
  auto terms = lf.terms(950);
  lattice::ReductionProblem p;
  p.etas = {terms[0], terms[1]};
  p.eta0 = terms[2];
  p.scale = pow10(879);
  p.coeff_bounds = lf.coeff_bounds;
  p.c3 = 12;
  p.c4 = realnum::log(RealInterval::exact(2L, 950));
  auto reduced = lattice::lll_reduce_staged(lattice::build_approx_lattice(p).basis).basis;
  for (auto _ : state) benchmark::DoNotOptimize(lattice::deweger_bound(p, reduced));
}
BENCHMARK(BM_DewegerBoundShared)->Unit(benchmark::kMillisecond);

void BM_Alpha(benchmark::State& state) {
  const int digits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(realnum::alpha(600, digits));
}
BENCHMARK(BM_Alpha)->Arg(240)->Arg(950)->Unit(benchmark::kMicrosecond);

void BM_SearchRow(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kfib::search_row(order, 1, 2138));
}
BENCHMARK(BM_SearchRow)->Arg(5)->Arg(450)->Arg(900)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
