#include "kfibpal/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace kfibpal::pipeline {

using realnum::RealInterval;

std::string to_string(const InstanceKey& key) {
  return "k=" + std::to_string(key.order) + " ell=" + std::to_string(key.outer) + " d1=" + std::to_string(key.d1) +
         " d2=" + std::to_string(key.d2);
}

double log10_approx(const BigRational& q) {
  if (q <= 0) throw std::domain_error("log10_approx: non-positive argument");
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log10(mn / md) + static_cast<double>(en - ed) * std::log10(2.0);
}

bool c3_consistent(const BigRational& c3, const BigRational& rhs) { return c3 == BigRational(3, 2) * rhs; }

namespace {

std::vector<BigInt> floors_at(const std::vector<RealInterval>& etas, const BigInt& scale, bool& stable) {
  std::vector<BigInt> out;
  stable = true;
  for (const auto& e : etas) {
    auto f = realnum::floor_scaled(e, scale);
    stable = stable && f.stable;
    out.push_back(f.value);
  }
  return out;
}

struct Attempt {
  std::optional<lattice::ReductionOutcome> outcome;
  std::vector<BigInt> floors;
  int digits = 0;
  BigRational hermite_need;  // set when the reduction was skipped
};

// gamma_d^d for the Hermite constant, d <= 3.
BigRational hermite_power(int dim) {
  switch (dim) {
    case 1: return 1;
    case 2: return BigRational(4, 3);
    case 3: return 2;
  }
  return 0;
}

// One reduction at a fixed scale, raising the precision until the floors
// are stable and agree with the guard recomputation. When
// delta <= lambda_1 <= sqrt(gamma_d) det^{1/d} already rules the condition
// out, the reduction itself is skipped.
// Reduced bases of the lattices shared by targeted forms, keyed by their floors.
class SharedReductions {
 public:
  lattice::IntegerBasis get(const lattice::ReductionProblem& p, const std::vector<BigInt>& floors) {
    {
      std::lock_guard lock(mutex_);
      auto it = cache_.find(floors);
      if (it != cache_.end()) return it->second;
    }
    lattice::IntegerBasis reduced = lattice::lll_reduce_staged(lattice::build_approx_lattice(p).basis).basis;
    std::lock_guard lock(mutex_);
    if (cache_.size() >= 256) cache_.clear();
    cache_.emplace(floors, reduced);
    return reduced;
  }

 private:
  std::mutex mutex_;
  std::map<std::vector<BigInt>, lattice::IntegerBasis> cache_;
};

SharedReductions shared_reductions;

// Etas (and eta0) per working precision; successive scales of one instance mostly reuse them.
class EtaCache {
 public:
  explicit EtaCache(const LatticeForm& form) : form_(form) {}
  const std::vector<RealInterval>& at(int digits) {
    auto it = cache_.find(digits);
    if (it == cache_.end()) it = cache_.emplace(digits, form_.terms(digits)).first;
    return it->second;
  }

 private:
  const LatticeForm& form_;
  std::map<int, std::vector<RealInterval>> cache_;
};

Attempt reduce_at(const LatticeForm& form, EtaCache& cache, const BigRational& c3, long c4_base, const BigInt& scale,
                  const SolverSettings& s) {
  int digits = std::max(s.base_digits, static_cast<int>(decimal_digits(scale)) + 40);
  for (int bump = 0; bump < 6; ++bump, digits += 50) {
    const std::vector<RealInterval>& terms = cache.at(digits);
    bool stable = false, stable_hi = false;
    std::vector<BigInt> lo = floors_at(terms, scale, stable);
    std::vector<BigInt> hi = floors_at(cache.at(digits + s.guard_digits), scale, stable_hi);
    if (!stable || !stable_hi || lo != hi) continue;
    Attempt a;
    a.digits = digits;
    const int dim = form.dim();
    const BigInt& last = lo[static_cast<std::size_t>(dim - 1)];
    if (dim <= 3 && last != 0) {
      BigInt sum = 0, sum_sq = 0;
      for (std::size_t i = 0; i < form.coeff_bounds.size(); ++i) {
        sum += form.coeff_bounds[i];
        if (i + 1 < form.coeff_bounds.size()) sum_sq += form.coeff_bounds[i] * form.coeff_bounds[i];
      }
      BigInt target = sum * sum + sum_sq;
      BigInt lhs = 1;
      for (int i = 0; i < dim; ++i) lhs *= target;
      BigRational cap = hermite_power(dim) * BigRational(last * last);
      if (BigRational(lhs) >= cap) {
        a.hermite_need = BigRational(lhs) / cap;
        a.floors = std::move(lo);
        return a;
      }
    }
    lattice::ReductionProblem p;
    p.etas.assign(terms.begin(), terms.begin() + dim);
    p.eta0 = form.targeted ? terms[static_cast<std::size_t>(dim)] : RealInterval::exact(0L, digits);
    p.scale = scale;
    p.coeff_bounds = form.coeff_bounds;
    p.c3 = c3;
    p.c4 = realnum::log(RealInterval::exact(c4_base, digits));
    if (form.targeted) {
      std::vector<BigInt> key(lo.begin(), lo.begin() + dim);
      a.outcome = lattice::deweger_bound(p, shared_reductions.get(p, key));
    } else {
      a.outcome = lattice::deweger_bound(p);
    }
    a.floors = std::move(lo);
    return a;
  }
  throw realnum::PrecisionError("solve_instance: floors did not stabilize");
}

void keep(InstanceResult& r, const Attempt& a, const BigInt& scale, int decades) {
  r.success = true;
  r.scale = scale;
  r.decades = decades;
  r.delta_squared = a.outcome->bound.delta_squared;
  r.sum_sq = a.outcome->sum_sq;
  r.allowance = a.outcome->allowance;
  r.height = a.outcome->height;
  r.height_floor = a.outcome->height_floor;
  r.floors = a.floors;
  r.digits = a.digits;
}

}  // namespace

InstanceResult solve_instance(const LatticeForm& form, const InstanceKey& key, const BigRational& c3, long c4_base,
                              const BigInt& start_scale, const SolverSettings& settings) {
  InstanceResult r;
  r.key = key;
  r.form = form.spec.form;
  r.folded = form.folded;
  r.targeted = form.targeted;
  r.dim = form.dim();
  r.start_scale = start_scale;
  BigInt scale = start_scale;
  int decades = 0;
  int refine_left = -1;
  EtaCache cache(form);
  for (;;) {
    Attempt a;
    try {
      a = reduce_at(form, cache, c3, c4_base, scale, settings);
    } catch (const lattice::SingularBasis& e) {
      if (!r.success) r.failure = e.what();
      return r;
    }
    int jump = 0;
    if (a.outcome) {
      ++r.attempts;
      const auto& o = *a.outcome;
      if (o.condition) {
        if (!r.success || o.height_floor < r.height_floor) keep(r, a, scale, decades);
        if (refine_left < 0) refine_left = settings.refine_decades;
        if (refine_left == 0) return r;
        --refine_left;
        scale *= 10;
        ++decades;
        continue;
      }
      if (r.success) return r;
      r.delta_squared = o.bound.delta_squared;
      r.sum_sq = o.sum_sq;
      r.allowance = o.allowance;
      BigRational need = BigRational(o.allowance * o.allowance + o.sum_sq) / o.bound.delta_squared;
      jump = static_cast<int>(std::ceil(r.dim / 2.0 * log10_approx(need)));
    } else {
      ++r.hermite_skips;
      if (r.success) return r;
      jump = static_cast<int>(std::ceil(log10_approx(a.hermite_need) / 2.0)) + settings.hermite_margin;
    }
    jump = std::max(1, jump);
    if (decades + jump > settings.budget_decades) {
      r.scale = scale;
      r.decades = decades;
      r.digits = a.digits;
      r.failure = "condition fails at 10^" + std::to_string(decades) + " x start scale; budget of " +
                  std::to_string(settings.budget_decades) + " decades exhausted";
      return r;
    }
    scale *= pow10(static_cast<unsigned long>(jump));
    decades += jump;
  }
}

FloorAudit audit_floors(const LatticeForm& form, const BigInt& scale, const std::vector<BigInt>& claimed, int digits) {
  FloorAudit out;
  bool stable = false;
  out.recomputed = floors_at(form.terms(digits), scale, stable);
  out.match = stable && out.recomputed == claimed;
  return out;
}

}  // namespace kfibpal::pipeline
