#include "kfibpal/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

namespace kfibpal::lattice {

IntegerBasis IntegerBasis::identity(int dim) {
  IntegerBasis b;
  b.columns.assign(static_cast<std::size_t>(dim), Vector(static_cast<std::size_t>(dim), 0));
  for (int i = 0; i < dim; ++i) b.columns[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return b;
}

IntegerBasis IntegerBasis::from_columns(std::vector<Vector> cols) {
  for (const auto& c : cols) {
    if (c.size() != cols.size()) throw std::invalid_argument("IntegerBasis: basis must be square");
  }
  return IntegerBasis{std::move(cols)};
}

std::string to_string(const IntegerBasis& b) {
  std::ostringstream os;
  os << "[";
  for (int j = 0; j < b.dim(); ++j) {
    os << (j ? ", " : "") << "(";
    for (int i = 0; i < b.dim(); ++i) os << (i ? ", " : "") << b.column(j)[static_cast<std::size_t>(i)];
    os << ")";
  }
  os << "]";
  return os.str();
}

BigInt dot(const Vector& a, const Vector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

BigInt norm2(const Vector& a) { return dot(a, a); }

BigInt determinant(const IntegerBasis& b) {
  const int dim = b.dim();
  if (dim == 0) return 1;
  // Bareiss on the transpose (rows = columns of b); det is unchanged.
  std::vector<Vector> a = b.columns;
  BigInt prev = 1;
  int sign = 1;
  for (int cur = 0; cur < dim - 1; ++cur) {
    auto ku = static_cast<std::size_t>(cur);
    if (a[ku][ku] == 0) {
      int swap = -1;
      for (int r = cur + 1; r < dim; ++r) {
        if (a[static_cast<std::size_t>(r)][ku] != 0) {
          swap = r;
          break;
        }
      }
      if (swap < 0) return 0;
      std::swap(a[ku], a[static_cast<std::size_t>(swap)]);
      sign = -sign;
    }
    for (int i = cur + 1; i < dim; ++i) {
      auto iu = static_cast<std::size_t>(i);
      for (int j = cur + 1; j < dim; ++j) {
        auto ju = static_cast<std::size_t>(j);
        a[iu][ju] = (a[iu][ju] * a[ku][ku] - a[iu][ku] * a[ku][ju]) / prev;
      }
    }
    prev = a[ku][ku];
  }
  auto last = static_cast<std::size_t>(dim - 1);
  return sign * a[last][last];
}

GSOData gram_schmidt(const IntegerBasis& b) {
  const auto dim = static_cast<std::size_t>(b.dim());
  GSOData g;
  g.bstar.resize(dim);
  g.bstar_norm2.resize(dim);
  g.mu.assign(dim, RationalVector(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) {
    RationalVector v(dim);
    for (std::size_t r = 0; r < dim; ++r) v[r] = b.columns[i][r];
    for (std::size_t j = 0; j < i; ++j) {
      BigRational ip = 0;
      for (std::size_t r = 0; r < dim; ++r) ip += b.columns[i][r] * g.bstar[j][r];
      g.mu[i][j] = ip / g.bstar_norm2[j];
      for (std::size_t r = 0; r < dim; ++r) v[r] -= g.mu[i][j] * g.bstar[j][r];
    }
    BigRational nn = 0;
    for (const auto& x : v) nn += x * x;
    if (nn == 0) throw SingularBasis("gram_schmidt: basis columns are linearly dependent");
    g.bstar[i] = std::move(v);
    g.bstar_norm2[i] = nn;
  }
  return g;
}

bool is_reduced(const IntegerBasis& b) {
  GSOData g;
  try {
    g = gram_schmidt(b);
  } catch (const SingularBasis&) {
    return false;
  }
  const auto dim = static_cast<std::size_t>(b.dim());
  const BigRational half(1, 2), three_quarters(3, 4);
  for (std::size_t i = 1; i < dim; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (abs(g.mu[i][j]) > half) return false;
    }
    const BigRational& m = g.mu[i][i - 1];
    if (g.bstar_norm2[i] + m * m * g.bstar_norm2[i - 1] < three_quarters * g.bstar_norm2[i - 1]) return false;
  }
  return true;
}

namespace {

// Nearest integer to p/q (q > 0), ties away from zero.
BigInt round_div(const BigInt& p, const BigInt& q) {
  BigInt num = 2 * p + (p >= 0 ? q : BigInt(-q));
  BigInt r;
  mpz_tdiv_q(r.get_mpz_t(), num.get_mpz_t(), BigInt(2 * q).get_mpz_t());
  return r;
}

void axpy(Vector& y, const BigInt& q, const Vector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= q * x[i];
}

// Integral LLL after Cohen, "A Course in Computational Algebraic Number
// Theory", Alg. 2.6.7, with 1-based indices internally.
class IntegralLll {
 public:
  IntegralLll(const IntegerBasis& in, bool track)
      : n_(in.dim()), track_(track), b_(static_cast<std::size_t>(n_) + 1),
        h_(static_cast<std::size_t>(n_) + 1), d_(static_cast<std::size_t>(n_) + 1),
        lam_(static_cast<std::size_t>(n_) + 1, Vector(static_cast<std::size_t>(n_) + 1)) {
    for (int i = 1; i <= n_; ++i) {
      b_[u(i)] = in.column(i - 1);
      if (track_) {
        h_[u(i)].assign(u(n_), 0);
        h_[u(i)][u(i - 1)] = 1;
      }
    }
  }

  Reduction run() {
    Reduction out;
    if (n_ == 0) return out;
    d_[0] = 1;
    d_[1] = norm2(b_[1]);
    if (d_[1] == 0) throw SingularBasis("lll_reduce: zero basis vector");
    int cur = 2, cur_max = 1;
    while (cur <= n_) {
      if (cur > cur_max) {
        cur_max = cur;
        for (int j = 1; j <= cur; ++j) {
          BigInt x = dot(b_[u(cur)], b_[u(j)]);
          for (int i = 1; i <= j - 1; ++i) x = (d_[u(i)] * x - lam_[u(cur)][u(i)] * lam_[u(j)][u(i)]) / d_[u(i - 1)];
          if (j < cur) {
            lam_[u(cur)][u(j)] = x;
          } else {
            if (x == 0) throw SingularBasis("lll_reduce: basis columns are linearly dependent");
            d_[u(cur)] = x;
          }
        }
      }
      for (;;) {
        red(cur, cur - 1);
        const BigInt& l = lam_[u(cur)][u(cur - 1)];
        if (4 * d_[u(cur)] * d_[u(cur - 2)] < 3 * d_[u(cur - 1)] * d_[u(cur - 1)] - 4 * l * l) {
          swap(cur, cur_max);
          ++out.swaps;
          cur = std::max(2, cur - 1);
        } else {
          for (int l2 = cur - 2; l2 >= 1; --l2) red(cur, l2);
          ++cur;
          break;
        }
      }
    }
    for (int i = 1; i <= n_; ++i) {
      out.basis.columns.push_back(b_[u(i)]);
      if (track_) out.transform.columns.push_back(h_[u(i)]);
    }
    return out;
  }

 private:
  static std::size_t u(int i) { return static_cast<std::size_t>(i); }

  void red(int cur, int l) {
    BigInt& lkl = lam_[u(cur)][u(l)];
    if (2 * abs(lkl) <= d_[u(l)]) return;
    BigInt q = round_div(lkl, d_[u(l)]);
    axpy(b_[u(cur)], q, b_[u(l)]);
    if (track_) axpy(h_[u(cur)], q, h_[u(l)]);
    lkl -= q * d_[u(l)];
    for (int i = 1; i <= l - 1; ++i) lam_[u(cur)][u(i)] -= q * lam_[u(l)][u(i)];
  }

  void swap(int cur, int cur_max) {
    std::swap(b_[u(cur)], b_[u(cur - 1)]);
    if (track_) std::swap(h_[u(cur)], h_[u(cur - 1)]);
    for (int j = 1; j <= cur - 2; ++j) std::swap(lam_[u(cur)][u(j)], lam_[u(cur - 1)][u(j)]);
    BigInt l = lam_[u(cur)][u(cur - 1)];
    BigInt next_d = (d_[u(cur - 2)] * d_[u(cur)] + l * l) / d_[u(cur - 1)];
    for (int i = cur + 1; i <= cur_max; ++i) {
      BigInt tmp = lam_[u(i)][u(cur)];
      lam_[u(i)][u(cur)] = (d_[u(cur)] * lam_[u(i)][u(cur - 1)] - l * tmp) / d_[u(cur - 1)];
      lam_[u(i)][u(cur - 1)] = (next_d * tmp + l * lam_[u(i)][u(cur)]) / d_[u(cur)];
    }
    d_[u(cur - 1)] = next_d;
  }

  int n_;
  bool track_;
  std::vector<Vector> b_;
  std::vector<Vector> h_;
  Vector d_;
  std::vector<Vector> lam_;
};

}  // namespace

IntegerBasis lll_reduce(const IntegerBasis& b) { return IntegralLll(b, false).run().basis; }

Reduction lll_reduce_with_transform(const IntegerBasis& b) { return IntegralLll(b, true).run(); }

namespace {

IntegerBasis multiply(const IntegerBasis& a, const IntegerBasis& u) {
  const auto dim = static_cast<std::size_t>(a.dim());
  IntegerBasis out;
  out.columns.assign(dim, Vector(dim, 0));
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (u.columns[j][c] == 0) continue;
      for (std::size_t r = 0; r < dim; ++r) out.columns[j][r] += a.columns[c][r] * u.columns[j][c];
    }
  }
  return out;
}

long last_row_bits(const IntegerBasis& b) {
  long bits = 0;
  for (const auto& col : b.columns) bits = std::max<long>(bits, static_cast<long>(mpz_sizeinbase(col.back().get_mpz_t(), 2)));
  return bits;
}

}  // namespace

Reduction lll_reduce_staged(const IntegerBasis& b, int stage_bits) {
  if (b.dim() < 2 || stage_bits < 1) return lll_reduce_with_transform(b);
  IntegerBasis cur = b;
  IntegerBasis total = IntegerBasis::identity(b.dim());
  long swaps = 0;
  for (long shift = last_row_bits(cur) - 2L * stage_bits; shift > 0; shift = std::min(shift - stage_bits, last_row_bits(cur) - 2L * stage_bits)) {
    IntegerBasis cut = cur;
    for (auto& col : cut.columns) mpz_fdiv_q_2exp(col.back().get_mpz_t(), col.back().get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    Reduction r;
    try {
      r = lll_reduce_with_transform(cut);
    } catch (const SingularBasis&) {
      continue;
    }
    cur = multiply(cur, r.transform);
    total = multiply(total, r.transform);
    swaps += r.swaps;
  }
  Reduction last = lll_reduce_with_transform(cur);
  last.transform = multiply(total, last.transform);
  last.swaps += swaps;
  return last;
}

namespace {

long double to_long_double(const BigInt& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
}

BigInt nearest(long double x) {
  long double r = std::nearbyint(x);
  if (std::fabs(r) < 0x1p62L) return BigInt(static_cast<long>(r));
  int exp = 0;
  long double mant = std::frexp(r, &exp);
  BigInt z(static_cast<long>(std::ldexp(mant, 62)));
  mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(exp - 62));
  return z;
}

// Lazy-size-reduction LLL in the style of Nguyen and Stehle's L^2 for small
// dimensions. Returns nothing when the floating data stops making
// progress; the caller then falls back to the exact algorithm.
std::optional<Reduction> fp_lll(const IntegerBasis& in) {
  constexpr long double kDelta = 0.99L;
  constexpr long double kEta = 0.51L;
  constexpr long kMaxLoops = 1'000'000;
  const auto n = static_cast<std::size_t>(in.dim());
  std::vector<Vector> b = in.columns;
  std::vector<Vector> h = IntegerBasis::identity(in.dim()).columns;
  std::vector<Vector> gram(n, Vector(n));
  auto refresh_row = [&](std::size_t k) {
    for (std::size_t i = 0; i < n; ++i) gram[k][i] = gram[i][k] = dot(b[k], b[i]);
  };
  for (std::size_t k = 0; k < n; ++k) refresh_row(k);
  std::vector<std::vector<long double>> r(n, std::vector<long double>(n)), mu(n, std::vector<long double>(n));
  r[0][0] = to_long_double(gram[0][0]);
  if (!(r[0][0] > 0)) return std::nullopt;
  long loops = 0;
  std::size_t k = 1;
  Reduction out;
  while (k < n) {
    if (++loops > kMaxLoops) return std::nullopt;
    // Lazy size reduction of b_k against b_0..b_{k-1}.
    for (int pass = 0;; ++pass) {
      if (pass > 4000) return std::nullopt;
      bool reduced = true;
      for (std::size_t j = 0; j < k; ++j) {
        long double v = to_long_double(gram[k][j]);
        for (std::size_t i = 0; i < j; ++i) v -= mu[j][i] * r[k][i];
        r[k][j] = v;
        mu[k][j] = v / r[j][j];
        if (!std::isfinite(mu[k][j])) return std::nullopt;
        if (std::fabs(mu[k][j]) > kEta) reduced = false;
      }
      if (reduced) break;
      for (std::size_t j = k; j-- > 0;) {
        if (std::fabs(mu[k][j]) <= 0.5L) continue;
        BigInt x = nearest(mu[k][j]);
        axpy(b[k], x, b[j]);
        axpy(h[k], x, h[j]);
        long double xf = to_long_double(x);
        for (std::size_t i = 0; i < j; ++i) mu[k][i] -= xf * mu[j][i];
      }
      refresh_row(k);
    }
    long double rk = to_long_double(gram[k][k]);
    for (std::size_t j = 0; j < k; ++j) rk -= mu[k][j] * r[k][j];
    r[k][k] = rk;
    if (kDelta * r[k - 1][k - 1] > r[k][k] + mu[k][k - 1] * mu[k][k - 1] * r[k - 1][k - 1]) {
      std::swap(b[k], b[k - 1]);
      std::swap(h[k], h[k - 1]);
      refresh_row(k);
      refresh_row(k - 1);
      ++out.swaps;
      if (k > 1) {
        --k;
      } else {
        r[0][0] = to_long_double(gram[0][0]);
        if (!(r[0][0] > 0)) return std::nullopt;
      }
    } else {
      ++k;
    }
  }
  out.basis.columns = std::move(b);
  out.transform.columns = std::move(h);
  return out;
}

}  // namespace

Reduction lll_reduce_fp(const IntegerBasis& b) {
  if (b.dim() < 2) return lll_reduce_with_transform(b);
  std::optional<Reduction> fp = fp_lll(b);
  if (!fp) return lll_reduce_staged(b);
  Reduction last = lll_reduce_with_transform(fp->basis);
  last.transform = multiply(fp->transform, last.transform);
  last.swaps += fp->swaps;
  return last;
}

namespace {

// Solves B z = y over the rationals (B by columns).
RationalVector solve(const IntegerBasis& b, const Vector& y) {
  const auto dim = static_cast<std::size_t>(b.dim());
  std::vector<RationalVector> a(dim, RationalVector(dim + 1));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) a[r][c] = b.columns[c][r];
    a[r][dim] = y[r];
  }
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t p = c;
    while (p < dim && a[p][c] == 0) ++p;
    if (p == dim) throw SingularBasis("lattice_min_lower_bound: singular basis");
    std::swap(a[p], a[c]);
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == c || a[r][c] == 0) continue;
      BigRational f = a[r][c] / a[c][c];
      for (std::size_t cc = c; cc <= dim; ++cc) a[r][cc] -= f * a[c][cc];
    }
  }
  RationalVector z(dim);
  for (std::size_t i = 0; i < dim; ++i) z[i] = a[i][dim] / a[i][i];
  return z;
}

BigRational distance_to_nearest_integer(const BigRational& q) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  BigRational frac = q - BigRational(fl);
  BigRational other = BigRational(1) - frac;
  return frac < other ? frac : other;
}

int digits_of(const BigRational& q) {
  return static_cast<int>(decimal_digits(q.get_num())) + static_cast<int>(decimal_digits(q.get_den()));
}

}  // namespace

MinBound lattice_min_lower_bound(const IntegerBasis& reduced, const Vector& y) {
  if (static_cast<int>(y.size()) != reduced.dim()) throw std::invalid_argument("lattice_min_lower_bound: target dimension");
  GSOData g = gram_schmidt(reduced);
  MinBound out;
  RationalVector z = solve(reduced, y);
  out.y_in_lattice = std::all_of(z.begin(), z.end(), [](const BigRational& q) { return q.get_den() == 1; });
  if (out.y_in_lattice) {
    out.lambda = 1;
  } else {
    std::size_t i0 = z.size();
    while (i0 > 0 && z[i0 - 1] == 0) --i0;
    out.lambda = distance_to_nearest_integer(z[i0 - 1]);
  }
  BigRational b1 = norm2(reduced.column(0));
  out.c1_squared = 0;
  for (const auto& nn : g.bstar_norm2) out.c1_squared = std::max(out.c1_squared, BigRational(b1 / nn));
  out.delta_squared = out.lambda * out.lambda * b1 / out.c1_squared;
  int digits = std::max(40, digits_of(out.delta_squared) / 2 + 40);
  out.delta = realnum::sqrt(RealInterval::exact(out.delta_squared, digits));
  return out;
}

BigInt ReductionProblem::max_coeff_bound() const {
  BigInt m = 0;
  for (const auto& x : coeff_bounds) m = std::max(m, x);
  return m;
}

ApproxLattice build_approx_lattice(const ReductionProblem& p) {
  const int cur = static_cast<int>(p.etas.size());
  if (cur < 1) throw std::invalid_argument("build_approx_lattice: no logarithms");
  if (p.scale <= 0) throw std::invalid_argument("build_approx_lattice: C must be positive");
  ApproxLattice out;
  for (int i = 0; i < cur; ++i) {
    auto f = realnum::floor_scaled(p.etas[static_cast<std::size_t>(i)], p.scale);
    if (!f.stable) {
      throw realnum::PrecisionError("build_approx_lattice: floor(C eta_" + std::to_string(i + 1) + ") is unstable");
    }
    out.floors.push_back(f.value);
  }
  auto f0 = realnum::floor_scaled(p.eta0, p.scale);
  if (!f0.stable) throw realnum::PrecisionError("build_approx_lattice: floor(C eta_0) is unstable");
  out.floor0 = f0.value;
  if (out.floors.back() == 0) throw SingularBasis("build_approx_lattice: last floor is zero, lattice is singular");
  const auto dim = static_cast<std::size_t>(cur);
  out.basis.columns.assign(dim, Vector(dim, 0));
  for (std::size_t j = 0; j < dim; ++j) {
    if (j + 1 < dim) out.basis.columns[j][j] = 1;
    out.basis.columns[j][dim - 1] = out.floors[j];
  }
  out.target.assign(dim, 0);
  out.target[dim - 1] = -out.floor0;
  return out;
}

namespace {

ReductionOutcome finish(const ReductionProblem& p, const ApproxLattice& lat, IntegerBasis reduced);

}  // namespace

ReductionOutcome deweger_bound(const ReductionProblem& p) {
  const std::size_t cur = p.etas.size();
  if (p.coeff_bounds.size() != cur) throw std::invalid_argument("deweger_bound: need one X bound per logarithm");
  ApproxLattice lat = build_approx_lattice(p);
  return finish(p, lat, lll_reduce_staged(lat.basis).basis);
}

ReductionOutcome deweger_bound(const ReductionProblem& p, const IntegerBasis& reduced) {
  if (p.coeff_bounds.size() != p.etas.size()) throw std::invalid_argument("deweger_bound: need one X bound per logarithm");
  ApproxLattice lat = build_approx_lattice(p);
  if (reduced.dim() != lat.basis.dim() || !is_reduced(reduced) ||
      abs(determinant(reduced)) != abs(determinant(lat.basis))) {
    throw std::invalid_argument("deweger_bound: basis is not a reduced basis of the lattice");
  }
  for (int j = 0; j < reduced.dim(); ++j) {
    for (const auto& q : solve(lat.basis, reduced.column(j))) {
      if (q.get_den() != 1) throw std::invalid_argument("deweger_bound: basis is not a reduced basis of the lattice");
    }
  }
  return finish(p, lat, reduced);
}

namespace {

ReductionOutcome finish(const ReductionProblem& p, const ApproxLattice& lat, IntegerBasis reduced) {
  const std::size_t cur = p.etas.size();
  if (p.c3 <= 0) throw std::invalid_argument("deweger_bound: c3 must be positive");
  if (!p.c4.is_positive()) throw std::invalid_argument("deweger_bound: c4 must be positive");
  ReductionOutcome out;
  out.reduced = std::move(reduced);
  out.bound = lattice_min_lower_bound(out.reduced, lat.target);

  out.sum_sq = 0;
  BigInt sum = 0;
  for (std::size_t i = 0; i < cur; ++i) {
    if (i + 1 < cur) out.sum_sq += p.coeff_bounds[i] * p.coeff_bounds[i];
    sum += p.coeff_bounds[i];
  }
  out.allowance = sum + (lat.floor0 != 0 || !p.eta0.is_point() || !p.eta0.contains_zero() ? 1 : 0);
  out.allowance_nearest = BigRational(1 + sum, 2);
  out.degenerate_xk = BigRational(-lat.floor0, lat.floors.back());
  out.degenerate_xk.canonicalize();

  const BigRational& d2 = out.bound.delta_squared;
  out.condition = d2 > BigRational(out.allowance * out.allowance + out.sum_sq);
  if (!out.condition) return out;

  int digits = std::max({40, static_cast<int>(decimal_digits(out.allowance)) + 40, digits_of(d2) / 2 + 40,
                         static_cast<int>(decimal_digits(p.scale)) + 40});
  for (int attempt = 0;; ++attempt) {
    RealInterval gap = realnum::sqrt(RealInterval::exact(BigRational(d2 - BigRational(out.sum_sq)), digits)) -
                       RealInterval::exact(out.allowance, digits);
    if (gap.is_positive()) {
      RealInterval cc3 = RealInterval::exact(BigRational(BigRational(p.scale) * p.c3), digits);
      out.height = (realnum::log(cc3) - realnum::log(gap)) / p.c4.with_digits(std::max(digits, p.c4.digits()));
      BigInt hfloor;
      mpfr_get_z(hfloor.get_mpz_t(), out.height.hi().get(), MPFR_RNDD);
      out.height_floor = hfloor.get_si();
      return out;
    }
    if (attempt > 8) throw realnum::PrecisionError("deweger_bound: cannot separate sqrt(delta^2 - S) from T");
    digits *= 2;
  }
}

}  // namespace

}  // namespace kfibpal::lattice
