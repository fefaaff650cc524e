#include "qfc/conic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qfc/modmath.hpp"

namespace qfc {

namespace {

// Element x + y sqrt(D) of Z[sqrt(D)], D > 0 not a square.
struct QuadInt {
  BigInt x, y;
};

QuadInt mul(const QuadInt& l, const QuadInt& r, const BigInt& D) {
  return {l.x * r.x + D * l.y * r.y, l.x * r.y + l.y * r.x};
}

// Sign of a + b sqrt(D).
int sign_of(const BigInt& a, const BigInt& b, const BigInt& D) {
  const int sa = sgn(a), sb = sgn(b);
  if (sa >= 0 && sb >= 0) return (sa == 0 && sb == 0) ? 0 : 1;
  if (sa <= 0 && sb <= 0) return -1;
  const int cmp = sgn(BigInt(a * a - D * b * b));
  return sa > 0 ? cmp : -cmp;
}

// (x + y sqrt D)^2 compared with |n|.
int square_vs(const QuadInt& a, const BigInt& absn, const BigInt& D) {
  return sign_of(a.x * a.x + D * a.y * a.y - absn, 2 * a.x * a.y, D);
}

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

void require_norm_d(const BigInt& D) {
  if (D == 0 || D == 1) throw Error(Errc::NotApplicable, "norm form needs D not in {0, 1}");
}

// Number of v in [lo, hi] with v = r (mod step), and the first such v.
std::pair<BigInt, BigInt> progression(const Interval& I, const BigInt& step, const BigInt& r) {
  if (I.lo > I.hi) return {0, 0};
  const BigInt first = I.lo + mod_floor(r - I.lo, step);
  if (first > I.hi) return {0, first};
  return {(I.hi - first) / step + 1, first};
}

}  // namespace

PellUnit fundamental_solution(const BigInt& D) {
  if (D < 2) throw Error(Errc::DTooSmall, "Pell equation needs D >= 2, got " + D.get_str());
  if (squarefree_extract(D).k != 1) throw Error(Errc::NotSquareFree, D.get_str() + " is not square-free");
  const BigInt a0 = isqrt(D);
  BigInt P = 0, Q = 1, a = a0;
  BigInt h = a0, hprev = 1, k = 1, kprev = 0;
  while (h * h - D * k * k != 1) {
    P = a * Q - P;
    Q = (D - P * P) / Q;
    a = (a0 + P) / Q;
    BigInt hn = a * h + hprev, kn = a * k + kprev;
    hprev = std::move(h);
    kprev = std::move(k);
    h = std::move(hn);
    k = std::move(kn);
  }
  return {D, h, k};
}

std::vector<LatticePoint> enumerate_in_progression(const BigInt& D, const BigInt& n, const Interval& xI,
                                                   const Interval& yI, const BigInt& step, const BigInt& xr,
                                                   const BigInt& yr) {
  require_norm_d(D);
  std::vector<LatticePoint> out;
  const auto [cx, fx] = progression(xI, step, xr);
  const auto [cy, fy] = progression(yI, step, yr);
  if (cx == 0 || cy == 0) return out;
  const bool scan_y = cy <= cx;
  if ((scan_y ? cy : cx) > kScanGuard) throw Error(Errc::GuardExceeded, "scan interval longer than 10^7");

  auto accept = [&](const BigInt& x, const BigInt& y) {
    if (xI.contains(x) && yI.contains(y) && divides(step, x - xr) && divides(step, y - yr)) out.push_back({x, y});
  };

  const BigInt& f = scan_y ? fy : fx;
  const Interval& I = scan_y ? yI : xI;
  const std::int64_t count = to_i64(scan_y ? cy : cx);

  // int64 fast path when every intermediate value stays below 2^62.
  const BigInt vmax = std::max<BigInt>(abs(I.lo), abs(I.hi));
  const bool small = fits_i64(step) && fits_i64(f) &&
                     abs(n) + abs(D) * vmax * vmax + vmax * vmax < BigInt(1L << 62);
  if (small) {
    const std::int64_t Di = to_i64(D), ni = to_i64(n), st = to_i64(step);
    std::int64_t v = to_i64(f);
    for (std::int64_t i = 0; i < count; ++i, v += st) {
      if (scan_y) {
        const std::int64_t sq = ni + Di * v * v;
        if (sq < 0) continue;
        const std::uint64_t r = isqrt_u64(static_cast<std::uint64_t>(sq));
        if (static_cast<std::int64_t>(r * r) != sq) continue;
        const auto ri = static_cast<std::int64_t>(r);
        accept(big(ri), big(v));
        if (ri != 0) accept(big(-ri), big(v));
      } else {
        const std::int64_t num = v * v - ni;
        if (num % Di != 0) continue;
        const std::int64_t sq = num / Di;
        if (sq < 0) continue;
        const std::uint64_t r = isqrt_u64(static_cast<std::uint64_t>(sq));
        if (static_cast<std::int64_t>(r * r) != sq) continue;
        const auto ri = static_cast<std::int64_t>(r);
        accept(big(v), big(ri));
        if (ri != 0) accept(big(v), big(-ri));
      }
    }
  } else {
    BigInt v = f, r;
    for (std::int64_t i = 0; i < count; ++i, v += step) {
      if (scan_y) {
        if (!is_perfect_square(n + D * v * v, &r)) continue;
        accept(r, v);
        if (r != 0) accept(-r, v);
      } else {
        const BigInt num = v * v - n;
        if (!divides(D, num)) continue;
        if (!is_perfect_square(num / D, &r)) continue;
        accept(v, r);
        if (r != 0) accept(v, -r);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint> enumerate_in_box_scan(const BigInt& D, const BigInt& n, const Interval& xI,
                                                const Interval& yI) {
  return enumerate_in_progression(D, n, xI, yI, 1, 0, 0);
}

BigInt representative_bound(const PellUnit& unit, const BigInt& n) {
  // ceil(sqrt(|n| (u0 + 1) / (2D))) without floating point.
  const BigInt q = ceil_div(abs(n) * (unit.u0 + 1), 2 * unit.D);
  BigInt r = isqrt(q);
  if (r * r < q) ++r;
  return r;
}

std::vector<LatticePoint> class_representatives(const PellUnit& unit, const BigInt& n) {
  const BigInt ymax = representative_bound(unit, n);
  if (ymax > kScanGuard) throw Error(Errc::GuardExceeded, "representative search bound " + ymax.get_str());
  std::vector<LatticePoint> reps;
  BigInt r;
  for (BigInt y = 0; y <= ymax; ++y) {
    if (is_perfect_square(n + unit.D * y * y, &r)) reps.push_back({r, y});
  }
  return reps;
}

std::vector<LatticePoint> enumerate_in_box_orbit(const PellUnit& unit, const BigInt& n, const Interval& xI,
                                                 const Interval& yI) {
  if (n == 0) throw Error(Errc::NotApplicable, "orbit enumeration needs n != 0");
  std::set<LatticePoint> found;
  if (xI.lo > xI.hi || yI.lo > yI.hi) return {};
  const BigInt xmax = std::max<BigInt>(abs(xI.lo), abs(xI.hi));
  const BigInt ymax = std::max<BigInt>(abs(yI.lo), abs(yI.hi));
  const QuadInt eps{unit.u0, unit.v0};

  auto consider = [&](const BigInt& x, const BigInt& y) {
    if (xI.contains(x) && yI.contains(y)) found.insert({x, y});
  };

  for (const auto& rep : class_representatives(unit, n)) {
    for (int sx : {1, -1}) {
      for (int sy : {1, -1}) {
        // Forward powers of epsilon on each sign variant; the conjugate
        // (x, -y) of every visited point supplies the backward powers.
        QuadInt a{sx * rep.x, sy * rep.y};
        while (true) {
          consider(a.x, a.y);
          consider(a.x, -a.y);
          const bool growing = sgn(a.x) * sgn(a.y) > 0;
          if (growing && abs(a.x) > xmax && abs(a.y) > ymax) break;
          a = mul(a, eps, unit.D);
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

std::vector<LatticePoint> enumerate_in_box_orbit(const BigInt& D, const BigInt& n, const Interval& xI,
                                                 const Interval& yI) {
  if (D < 2) throw Error(Errc::NotApplicable, "orbit enumeration needs D >= 2; use the scan");
  return enumerate_in_box_orbit(fundamental_solution(D), n, xI, yI);
}

namespace {

// Moves a > 0 into [sqrt|n|, sqrt|n| * eps) by powers of eps.
QuadInt reduce_positive(QuadInt a, const PellUnit& unit, const BigInt& absn) {
  const QuadInt eps{unit.u0, unit.v0};
  const QuadInt inv{unit.u0, -unit.v0};
  while (square_vs(a, absn, unit.D) < 0) a = mul(a, eps, unit.D);
  while (true) {
    QuadInt down = mul(a, inv, unit.D);
    if (square_vs(down, absn, unit.D) < 0) break;
    a = std::move(down);
  }
  return a;
}

}  // namespace

LatticePoint primitive_reduce(const PellUnit& unit, const LatticePoint& pt) {
  const BigInt n = norm(unit.D, pt);
  if (n == 0) throw Error(Errc::NotApplicable, "primitive_reduce needs n != 0");
  const BigInt absn = abs(n);
  auto positive = [&](BigInt x, BigInt y) {
    if (sign_of(x, y, unit.D) < 0) {
      x = -x;
      y = -y;
    }
    return QuadInt{std::move(x), std::move(y)};
  };
  const QuadInt c1 = reduce_positive(positive(pt.x, pt.y), unit, absn);
  const QuadInt c2 = reduce_positive(positive(pt.x, -pt.y), unit, absn);
  const bool first = sign_of(c2.x - c1.x, c2.y - c1.y, unit.D) >= 0;
  const QuadInt& best = first ? c1 : c2;
  return {best.x, best.y};
}

LatticePoint primitive_reduce(const BigInt& D, const LatticePoint& pt) {
  return primitive_reduce(fundamental_solution(D), pt);
}

SolutionClass solution_class(const PellUnit& unit, const LatticePoint& pt) {
  return {unit.D, norm(unit.D, pt), primitive_reduce(unit, pt)};
}

namespace {

constexpr std::uint64_t kRhoBudget = 50'000'000;

std::uint64_t brent_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1; c < 64; ++c) {
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1, r = 1, steps = 0;
    constexpr std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
      steps += r;
      if (steps > kRhoBudget) throw Error(Errc::FactorizationTimeout, "rho budget exhausted");
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  throw Error(Errc::FactorizationTimeout, "rho failed for " + std::to_string(n));
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    primes.push_back(n);
    return;
  }
  const std::uint64_t d = brent_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t d = 2; d < 1000 && d * d <= n; ++d) {
    while (n % d == 0) {
      primes.push_back(d);
      n /= d;
    }
  }
  if (n > 1) factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t q : primes) {
    if (!out.empty() && out.back().first == q) {
      ++out.back().second;
    } else {
      out.emplace_back(q, 1);
    }
  }
  return out;
}

std::vector<LatticePoint> solve_xy_in_box(const BigInt& n, const Interval& xI, const Interval& yI) {
  if (n == 0) throw Error(Errc::NotApplicable, "X Y = 0 has infinitely many solutions");
  const BigInt absn = abs(n);
  if (!absn.fits_ulong_p() || absn >= BigInt(1L << 62)) {
    throw Error(Errc::FactorizationTimeout, "|n| beyond 2^62: " + n.get_str());
  }
  std::vector<std::uint64_t> divisors{1};
  for (auto [q, e] : factorize(absn.get_ui())) {
    const std::size_t base = divisors.size();
    std::uint64_t pw = 1;
    for (unsigned i = 0; i < e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < base; ++j) divisors.push_back(divisors[j] * pw);
    }
  }
  std::vector<LatticePoint> out;
  for (std::uint64_t dv : divisors) {
    const BigInt d(static_cast<unsigned long>(dv));
    for (int s : {1, -1}) {
      const BigInt X = s * d;
      const BigInt Y = n / X;
      if (xI.contains(X) && yI.contains(Y)) out.push_back({X, Y});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qfc
