#include <omp.h>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "qfc/conic.hpp"

namespace qfc {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double integrate(const auto& f, double a, double b) {
  if (a == b) return 0.0;
  if (a > b) std::swap(a, b);
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-12);
}

// Geometry of one conic x^2 - D y^2 = n in double precision. Each branch is
// parameterized by a single real: the angle on ellipses, y on hyperbolas with
// n > 0 (branches x > 0 and x < 0), x on hyperbolas with n < 0 (branches y > 0, y < 0).
struct Conic {
  double D, n;

  bool ellipse() const { return D < 0; }

  int branch(double x, double y) const {
    if (ellipse()) return 0;
    return n > 0 ? (x > 0 ? 1 : -1) : (y > 0 ? 1 : -1);
  }

  double param(double x, double y) const {
    if (ellipse()) {
      double t = std::atan2(y * std::sqrt(-D), x);
      return t < 0 ? t + kTwoPi : t;
    }
    return n > 0 ? y : x;
  }

  double span(double t0, double t1) const {
    if (ellipse()) {
      const double a2 = n, b2 = n / -D;
      return integrate([=](double t) { return std::sqrt(a2 * std::sin(t) * std::sin(t) + b2 * std::cos(t) * std::cos(t)); },
                       t0, t1);
    }
    if (n > 0) {
      return integrate([=, this](double y) { return std::sqrt(1.0 + D * D * y * y / (n + D * y * y)); }, t0, t1);
    }
    return integrate([=, this](double x) { return std::sqrt(1.0 + x * x / (D * (x * x - n))); }, t0, t1);
  }

  // Arc from parameter t0 moving forward to t1 (wrapping once on ellipses).
  double forward(double t0, double t1) const {
    if (ellipse() && t1 < t0) t1 += kTwoPi;
    return span(t0, t1);
  }

  double circumference() const { return span(0.0, kTwoPi); }
};

double chord(double x0, double y0, double x1, double y1) { return std::hypot(x1 - x0, y1 - y0); }

}  // namespace

double chord_length(const LatticePoint& p1, const LatticePoint& p2) {
  return chord(p1.x.get_d(), p1.y.get_d(), p2.x.get_d(), p2.y.get_d());
}

double arc_length(const BigInt& D, const BigInt& n, const LatticePoint& p1, const LatticePoint& p2) {
  if (D == 0 || D == 1 || n == 0) throw Error(Errc::NotApplicable, "arc length needs D not in {0, 1} and n != 0");
  if (norm(D, p1) != n || norm(D, p2) != n) throw Error(Errc::NotOnConic, "point not on x^2 - D y^2 = n");
  const Conic conic{D.get_d(), n.get_d()};
  const double x1 = p1.x.get_d(), y1 = p1.y.get_d(), x2 = p2.x.get_d(), y2 = p2.y.get_d();
  if (conic.branch(x1, y1) != conic.branch(x2, y2)) throw Error(Errc::DifferentBranch, "points on different branches");
  if (p1 == p2) return 0.0;
  const double t1 = conic.param(x1, y1), t2 = conic.param(x2, y2);
  if (!conic.ellipse()) return conic.span(t1, t2);
  const double fwd = conic.forward(t1, t2);
  return std::min(fwd, conic.circumference() - fwd);
}

namespace {

struct Pt {
  std::int64_t x, y;
};

struct Rec {
  std::int64_t n;
  Pt pt;
};

std::int64_t isqrt_i64(std::int64_t v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

void push_signed(std::vector<Rec>& out, std::int64_t n, std::int64_t x, std::int64_t y) {
  for (int sx : {1, -1}) {
    if (x == 0 && sx < 0) continue;
    for (int sy : {1, -1}) {
      if (y == 0 && sy < 0) continue;
      out.push_back({n, {sx * x, sy * y}});
    }
  }
}

// Every point with 1 <= |x^2 - D y^2| <= n_max (and |y| <= y_window on hyperbolas).
std::vector<Rec> collect_points(std::int64_t D, std::int64_t n_max, std::int64_t y_window) {
  std::vector<Rec> out;
  if (D < 0) {
    const std::int64_t a = -D;
    for (std::int64_t y = 0; a * y * y <= n_max; ++y) {
      for (std::int64_t x = 0; x * x + a * y * y <= n_max; ++x) {
        const std::int64_t n = x * x + a * y * y;
        if (n != 0) push_signed(out, n, x, y);
      }
    }
  } else {
    for (std::int64_t y = 0; y <= y_window; ++y) {
      const std::int64_t base = D * y * y;
      const std::int64_t lo = base - n_max;
      std::int64_t xlo = lo <= 0 ? 0 : isqrt_i64(lo);
      if (xlo * xlo < lo) ++xlo;
      const std::int64_t xhi = isqrt_i64(base + n_max);
      for (std::int64_t x = xlo; x <= xhi; ++x) {
        const std::int64_t n = x * x - base;
        if (n != 0 && n >= -n_max && n <= n_max) push_signed(out, n, x, y);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Rec& l, const Rec& r) { return l.n < r.n; });
  return out;
}

struct Partial {
  std::uint64_t triples = 0, quadratures = 0, conics = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  std::int64_t min_n = 0;
  std::vector<ArcViolation> violations;

  void take_min(double ratio, std::int64_t n) {
    if (ratio < min_ratio || (ratio == min_ratio && std::abs(n) < std::abs(min_n))) {
      min_ratio = ratio;
      min_n = n;
    }
  }

  void merge(const Partial& o) {
    triples += o.triples;
    quadratures += o.quadratures;
    conics += o.conics;
    if (o.min_ratio < min_ratio || (o.min_ratio == min_ratio && std::abs(o.min_n) < std::abs(min_n))) {
      min_ratio = o.min_ratio;
      min_n = o.min_n;
    }
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
  }
};

// Upper half-plane (including the positive x-axis) first, then counter-clockwise.
bool angle_less(const Pt& l, const Pt& r) {
  auto half = [](const Pt& p) { return (p.y > 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; };
  const int hl = half(l), hr = half(r);
  if (hl != hr) return hl < hr;
  return static_cast<__int128>(l.x) * r.y - static_cast<__int128>(l.y) * r.x > 0;
}

void check_branch(std::int64_t D, std::int64_t n, const std::vector<Pt>& pts, bool cyclic, Partial& acc) {
  const std::size_t count = pts.size();
  if (count < 3) return;
  const Conic conic{static_cast<double>(D), static_cast<double>(n)};
  const double threshold = std::pow(std::abs(static_cast<double>(n)), 1.0 / 6.0);
  const std::size_t triples = cyclic ? count : count - 2;
  for (std::size_t i = 0; i < triples; ++i) {
    const Pt& a = pts[i];
    const Pt& b = pts[(i + 1) % count];
    const Pt& c = pts[(i + 2) % count];
    ++acc.triples;
    const double lower = chord(static_cast<double>(a.x), static_cast<double>(a.y), static_cast<double>(c.x),
                               static_cast<double>(c.y));
    // arc >= chord, so a long chord settles the triple unless it could lower the minimum.
    if (lower > threshold && lower / threshold >= acc.min_ratio) continue;
    ++acc.quadratures;
    const double t0 = conic.param(static_cast<double>(a.x), static_cast<double>(a.y));
    const double t1 = conic.param(static_cast<double>(c.x), static_cast<double>(c.y));
    const double arc = cyclic ? conic.forward(t0, t1) : conic.span(t0, t1);
    acc.take_min(arc / threshold, n);
    if (arc <= threshold) {
      acc.violations.push_back({D, n, {big(a.x), big(a.y)}, {big(b.x), big(b.y)}, {big(c.x), big(c.y)}, arc, threshold});
    }
  }
}

void check_conic(std::int64_t D, std::int64_t n, const Rec* begin, const Rec* end, Partial& acc) {
  ++acc.conics;
  if (D < 0) {
    std::vector<Pt> pts;
    for (const Rec* r = begin; r != end; ++r) pts.push_back(r->pt);
    std::sort(pts.begin(), pts.end(), angle_less);
    check_branch(D, n, pts, true, acc);
    return;
  }
  std::vector<Pt> branches[2];
  for (const Rec* r = begin; r != end; ++r) {
    const bool upper = n > 0 ? r->pt.x > 0 : r->pt.y > 0;
    branches[upper ? 0 : 1].push_back(r->pt);
  }
  for (auto& pts : branches) {
    if (n > 0) {
      std::sort(pts.begin(), pts.end(), [](const Pt& l, const Pt& r) { return l.y < r.y; });
    } else {
      std::sort(pts.begin(), pts.end(), [](const Pt& l, const Pt& r) { return l.x < r.x; });
    }
    check_branch(D, n, pts, false, acc);
  }
}

std::vector<std::pair<std::size_t, std::size_t>> group_by_n(const std::vector<Rec>& recs) {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < recs.size();) {
    std::size_t j = i;
    while (j < recs.size() && recs[j].n == recs[i].n) ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  return groups;
}

LemmaReport make_report(std::int64_t D, std::int64_t n_max, std::int64_t y_window, Partial&& acc) {
  LemmaReport report;
  report.D = D;
  report.n_max = n_max;
  report.y_window = D < 0 ? 0 : y_window;
  report.conics_with_points = acc.conics;
  report.triples_checked = acc.triples;
  report.quadratures = acc.quadratures;
  report.min_ratio = acc.min_ratio;
  report.min_ratio_n = acc.min_n;
  std::sort(acc.violations.begin(), acc.violations.end(),
            [](const ArcViolation& l, const ArcViolation& r) { return l.n < r.n || (l.n == r.n && l.first < r.first); });
  report.violations = std::move(acc.violations);
  return report;
}

void validate(std::int64_t D) {
  if (D == 0 || D == 1 || squarefree_extract(big(D)).k != 1) {
    throw Error(Errc::NotSquareFree, "lemma verifier needs square-free D not in {0, 1}");
  }
}

}  // namespace

LemmaReport verify_small_arc_lemma_serial(std::int64_t D, std::int64_t n_max, std::int64_t y_window) {
  validate(D);
  const auto recs = collect_points(D, n_max, y_window);
  Partial acc;
  for (auto [i, j] : group_by_n(recs)) check_conic(D, recs[i].n, recs.data() + i, recs.data() + j, acc);
  return make_report(D, n_max, y_window, std::move(acc));
}

LemmaReport verify_small_arc_lemma(std::int64_t D, std::int64_t n_max, std::int64_t y_window) {
  validate(D);
  const auto recs = collect_points(D, n_max, y_window);
  const auto groups = group_by_n(recs);
  Partial total;
#pragma omp parallel
  {
    Partial local;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto [i, j] = groups[g];
      check_conic(D, recs[i].n, recs.data() + i, recs.data() + j, local);
    }
#pragma omp critical
    total.merge(local);
  }
  return make_report(D, n_max, y_window, std::move(total));
}

}  // namespace qfc
