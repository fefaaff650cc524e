#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qfc/conic.hpp"
#include "support.hpp"

using namespace qfc;
using support::errc_of;

namespace {

std::vector<LatticePoint> pts(std::initializer_list<std::pair<long, long>> xs) {
  std::vector<LatticePoint> out;
  for (auto [x, y] : xs) out.push_back({x, y});
  return out;
}

std::vector<LatticePoint> brute_norm(std::int64_t D, std::int64_t n, std::int64_t x0, std::int64_t x1,
                                     std::int64_t y0, std::int64_t y1) {
  std::vector<LatticePoint> out;
  for (auto [x, y] : oracle::norm_points(D, n, x0, x1, y0, y1)) out.push_back({x, y});
  return out;
}

bool squarefree(std::int64_t D) {
  const std::int64_t a = std::abs(D);
  for (std::int64_t q = 2; q * q <= a; ++q)
    if (a % (q * q) == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("fundamental_solution examples") {
  auto u = fundamental_solution(2);
  CHECK(u.u0 == 3);
  CHECK(u.v0 == 2);
  u = fundamental_solution(3);
  CHECK(u.u0 == 2);
  CHECK(u.v0 == 1);
  u = fundamental_solution(61);
  CHECK(u.u0 == 1766319049);
  CHECK(u.v0 == 226153980);
  CHECK(u.u0 * u.u0 - 61 * u.v0 * u.v0 == 1);
  CHECK(errc_of([] { fundamental_solution(1); }) == Errc::DTooSmall);
  CHECK(errc_of([] { fundamental_solution(8); }) == Errc::NotSquareFree);
}

TEST_CASE("fundamental_solution matches a brute-force search for square-free D <= 200 with small units") {
  for (std::int64_t D = 2; D <= 200; ++D) {
    if (!squarefree(D)) continue;
    const auto u = fundamental_solution(D);
    REQUIRE(u.u0 * u.u0 - D * u.v0 * u.v0 == 1);
    if (u.v0 > 100000) continue;  // brute force would be slow
    const auto [bu, bv] = oracle::pell_brute(D);
    CHECK(u.u0 == bu);
    CHECK(u.v0 == bv);
  }
}

TEST_CASE("enumerate_in_box_scan examples") {
  CHECK(enumerate_in_box_scan(2, 7, {1, 10}, {1, 10}) == pts({{3, 1}, {5, 3}}));
  CHECK(enumerate_in_box_scan(-1, 25, {-5, 5}, {-5, 5}).size() == 12);
  CHECK(enumerate_in_box_scan(2, 1, {1, 1}, {0, 0}) == pts({{1, 0}}));
  CHECK(enumerate_in_box_scan(2, 7, {5, 4}, {1, 10}).empty());
}

TEST_CASE("scan agrees with a double loop") {
  std::mt19937_64 rng(1);
  for (std::int64_t D : {-7, -3, -2, -1, 2, 3, 5, 6, 7, 10, 13}) {
    for (int i = 0; i < 60; ++i) {
      const std::int64_t n = static_cast<std::int64_t>(rng() % 401) - 200;
      const std::int64_t x0 = static_cast<std::int64_t>(rng() % 81) - 40, y0 = static_cast<std::int64_t>(rng() % 81) - 40;
      const std::int64_t x1 = x0 + static_cast<std::int64_t>(rng() % 60), y1 = y0 + static_cast<std::int64_t>(rng() % 60);
      INFO("D=" << D << " n=" << n);
      CHECK(enumerate_in_box_scan(D, n, {x0, x1}, {y0, y1}) == brute_norm(D, n, x0, x1, y0, y1));
    }
  }
}

TEST_CASE("enumerate_in_progression keeps exactly the matching residue classes") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t D = (i % 2) ? 3 : -5;
    const std::int64_t n = static_cast<std::int64_t>(rng() % 301) - 150;
    const std::int64_t step = 1 + static_cast<std::int64_t>(rng() % 7);
    const std::int64_t xr = static_cast<std::int64_t>(rng() % step), yr = static_cast<std::int64_t>(rng() % step);
    auto expected = brute_norm(D, n, -60, 60, -60, 60);
    std::erase_if(expected, [&](const LatticePoint& p) {
      return oracle::mod(to_i64(p.x) - xr, step) != 0 || oracle::mod(to_i64(p.y) - yr, step) != 0;
    });
    CHECK(enumerate_in_progression(D, n, {-60, 60}, {-60, 60}, step, xr, yr) == expected);
  }
}

TEST_CASE("enumerate_in_box_orbit examples") {
  CHECK(enumerate_in_box_orbit(2, 7, {1, 100}, {1, 100}) == pts({{3, 1}, {5, 3}, {13, 9}, {27, 19}, {75, 53}}));
  CHECK(enumerate_in_box_orbit(2, 1, {0, 20}, {0, 20}) == pts({{1, 0}, {3, 2}, {17, 12}}));
  CHECK(enumerate_in_box_orbit(3, -2, {0, 50}, {0, 50}) == enumerate_in_box_scan(3, -2, {0, 50}, {0, 50}));
  CHECK(enumerate_in_box_orbit(3, -2, {0, 50}, {0, 50}).front() == LatticePoint{1, 1});
  CHECK(errc_of([] { enumerate_in_box_orbit(2, 0, {0, 5}, {0, 5}); }) == Errc::NotApplicable);
  CHECK(errc_of([] { enumerate_in_box_orbit(-1, 5, {0, 5}, {0, 5}); }) == Errc::NotApplicable);
}

TEST_CASE("orbit and scan agree on random boxes, including far from the origin") {
  std::mt19937_64 rng(3);
  for (std::int64_t D : {2, 3, 5, 6, 7, 10, 13, 19, 61}) {
    const auto unit = fundamental_solution(D);
    for (int i = 0; i < 150; ++i) {
      std::int64_t n = static_cast<std::int64_t>(rng() % 1001) - 500;
      if (n == 0) n = 1;
      const std::int64_t x0 = static_cast<std::int64_t>(rng() % 4001) - 2000;
      const std::int64_t y0 = static_cast<std::int64_t>(rng() % 4001) - 2000;
      const Interval xI{x0, x0 + static_cast<long>(rng() % 1000)}, yI{y0, y0 + static_cast<long>(rng() % 1000)};
      INFO("D=" << D << " n=" << n << " x0=" << x0 << " y0=" << y0);
      CHECK(enumerate_in_box_orbit(unit, n, xI, yI) == enumerate_in_box_scan(D, n, xI, yI));
    }
  }
}

TEST_CASE("class representatives cover every orbit") {
  for (std::int64_t D : {2, 3, 7, 13}) {
    const auto unit = fundamental_solution(D);
    for (std::int64_t n = -300; n <= 300; ++n) {
      if (n == 0) continue;
      std::set<LatticePoint> reps;
      for (const auto& r : class_representatives(unit, n)) {
        REQUIRE(norm(D, r) == n);
        reps.insert(primitive_reduce(unit, r));
      }
      for (const auto& pt : enumerate_in_box_scan(D, n, {-3000, 3000}, {-3000, 3000})) {
        INFO("D=" << D << " n=" << n << " pt=(" << pt.x << "," << pt.y << ")");
        CHECK(reps.count(primitive_reduce(unit, pt)) == 1);
      }
    }
  }
}

TEST_CASE("primitive_reduce examples and idempotence") {
  CHECK(primitive_reduce(2, LatticePoint{5, 3}) == LatticePoint{3, 1});
  CHECK(primitive_reduce(2, LatticePoint{3, 1}) == LatticePoint{3, 1});
  CHECK(primitive_reduce(2, LatticePoint{3, -1}) == LatticePoint{3, 1});
  std::mt19937_64 rng(4);
  for (std::int64_t D : {2, 3, 5, 6, 7, 10}) {
    const auto unit = fundamental_solution(D);
    for (std::int64_t n = -200; n <= 200; ++n) {
      if (n == 0) continue;
      for (const auto& pt : enumerate_in_box_scan(D, n, {-500, 500}, {-500, 500})) {
        const auto r = primitive_reduce(unit, pt);
        REQUIRE(norm(D, r) == n);
        REQUIRE(primitive_reduce(unit, r) == r);
        // Multiplying by the unit or flipping signs stays in the same class.
        const LatticePoint up{unit.u0 * pt.x + D * unit.v0 * pt.y, unit.v0 * pt.x + unit.u0 * pt.y};
        CHECK(primitive_reduce(unit, up) == r);
        CHECK(primitive_reduce(unit, LatticePoint{-pt.x, -pt.y}) == r);
        CHECK(solution_class(unit, pt).rep == r);
      }
    }
  }
}

TEST_CASE("factorize") {
  auto f = factorize(1);
  CHECK(f.empty());
  f = factorize(360);
  CHECK(f == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
  f = factorize(1000003ULL * 1000000007ULL);
  CHECK(f == std::vector<std::pair<std::uint64_t, unsigned>>{{1000003, 1}, {1000000007, 1}});
  f = factorize(4611686018427387847ULL);
  CHECK(f == std::vector<std::pair<std::uint64_t, unsigned>>{{4611686018427387847ULL, 1}});
}

TEST_CASE("solve_xy_in_box examples") {
  CHECK(solve_xy_in_box(12, {1, 12}, {1, 12}).size() == 6);
  CHECK(solve_xy_in_box(-1, {-1, 1}, {-1, 1}) == pts({{-1, 1}, {1, -1}}));
  CHECK(solve_xy_in_box(BigInt(1009) * 1013, {1, 2000000}, {1, 2000000}).size() == 4);
  CHECK(errc_of([] { solve_xy_in_box(0, {1, 2}, {1, 2}); }) == Errc::NotApplicable);
}

TEST_CASE("solve_xy_in_box agrees with a double loop") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    std::int64_t n = static_cast<std::int64_t>(rng() % 2001) - 1000;
    if (n == 0) n = 360;
    const std::int64_t x0 = static_cast<std::int64_t>(rng() % 201) - 100, y0 = static_cast<std::int64_t>(rng() % 201) - 100;
    const std::int64_t x1 = x0 + static_cast<std::int64_t>(rng() % 150), y1 = y0 + static_cast<std::int64_t>(rng() % 150);
    std::vector<LatticePoint> expected;
    for (std::int64_t x = x0; x <= x1; ++x)
      for (std::int64_t y = y0; y <= y1; ++y)
        if (x * y == n) expected.push_back({x, y});
    CHECK(solve_xy_in_box(n, {x0, x1}, {y0, y1}) == expected);
  }
}

TEST_CASE("arc_length examples") {
  const LatticePoint a{3, 4}, b{4, 3}, c{5, 0};
  CHECK(arc_length(-1, 25, a, a) == 0.0);
  CHECK(arc_length(-1, 25, a, b) == doctest::Approx(5 * std::acos(24.0 / 25)).epsilon(1e-9));
  CHECK(arc_length(-1, 25, a, c) == doctest::Approx(5 * std::acos(15.0 / 25)).epsilon(1e-9));
  CHECK(errc_of([] { arc_length(-1, 25, {3, 3}, {5, 0}); }) == Errc::NotOnConic);
  CHECK(errc_of([] { arc_length(2, 7, {3, 1}, {-3, 1}); }) == Errc::DifferentBranch);
}

TEST_CASE("arc_length: circle closed form, arc >= chord and additivity along a branch") {
  for (std::int64_t r2 : {25, 65, 325, 1105, 5525}) {
    const auto circle = enumerate_in_box_scan(-1, r2, {-100, 100}, {-100, 100});
    const double r = std::sqrt(static_cast<double>(r2));
    for (std::size_t i = 0; i < circle.size(); ++i) {
      for (std::size_t j = 0; j < circle.size(); ++j) {
        const auto& P = circle[i];
        const auto& Q = circle[j];
        const double arc = arc_length(-1, r2, P, Q);
        const double expected = oracle::circle_arc(r, P.x.get_d(), P.y.get_d(), Q.x.get_d(), Q.y.get_d());
        CHECK(arc == doctest::Approx(expected).epsilon(1e-8));
        CHECK(arc + 1e-9 >= chord_length(P, Q));
      }
    }
  }
  // Hyperbola x^2 - 2y^2 = 7, right branch: (3,1), (5,3), (13,9), (27,19).
  const LatticePoint h1{3, 1}, h2{5, 3}, h3{13, 9}, h4{27, 19};
  const double a12 = arc_length(2, 7, h1, h2), a23 = arc_length(2, 7, h2, h3), a34 = arc_length(2, 7, h3, h4);
  CHECK(arc_length(2, 7, h1, h3) == doctest::Approx(a12 + a23).epsilon(1e-9));
  CHECK(arc_length(2, 7, h1, h4) == doctest::Approx(a12 + a23 + a34).epsilon(1e-9));
  CHECK(a12 >= chord_length(h1, h2));
  // Ellipse x^2 + 2y^2 = 33: (1,4), (5,2), (-1,4) additive along the short way.
  CHECK(arc_length(-2, 33, {-1, 4}, {5, 2}) ==
        doctest::Approx(arc_length(-2, 33, {-1, 4}, {1, 4}) + arc_length(-2, 33, {1, 4}, {5, 2})).epsilon(1e-9));
}

TEST_CASE("verify_small_arc_lemma examples") {
  const auto r = verify_small_arc_lemma(-1, 25);
  CHECK(r.violations.empty());
  CHECK(r.triples_checked > 0);
  CHECK(r.min_ratio > 1.0);
  const auto two = verify_small_arc_lemma(2, 10000);
  CHECK(two.violations.empty());
}

TEST_CASE("verify_small_arc_lemma: parallel run equals the serial reference") {
  for (std::int64_t D : {-5, -1, 2, 3, 7}) {
    const auto par = verify_small_arc_lemma(D, 3000, 2000);
    const auto ser = verify_small_arc_lemma_serial(D, 3000, 2000);
    CHECK(par.conics_with_points == ser.conics_with_points);
    CHECK(par.triples_checked == ser.triples_checked);
    CHECK(par.min_ratio == ser.min_ratio);
    CHECK(par.min_ratio_n == ser.min_ratio_n);
    CHECK(par.violations.size() == ser.violations.size());
  }
}

TEST_CASE("verify_small_arc_lemma sees the same points as the scan enumerator") {
  // conics_with_points counts (n, branch set) pairs with at least one point; compare per n.
  for (std::int64_t D : {-3, -1, 2, 5}) {
    const std::int64_t n_max = 400, yw = 300;
    std::uint64_t expected = 0;
    for (std::int64_t n = -n_max; n <= n_max; ++n) {
      if (n == 0) continue;
      const std::int64_t xw = D < 0 ? 40 : static_cast<std::int64_t>(std::sqrt(double(n_max) + D * double(yw) * yw)) + 2;
      const Interval yI = D < 0 ? Interval{-40, 40} : Interval{-yw, yw};
      expected += !enumerate_in_box_scan(D, n, {-xw, xw}, yI).empty();
    }
    CHECK(verify_small_arc_lemma_serial(D, n_max, yw).conics_with_points == expected);
  }
}
