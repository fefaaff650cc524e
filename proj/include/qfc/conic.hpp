#pragma once

// Lattice points on x^2 - D y^2 = n and on X Y = n.

#include <cstdint>
#include <utility>
#include <vector>

#include "qfc/bigint.hpp"
#include "qfc/quadform.hpp"

namespace qfc {

struct LatticePoint {
  BigInt x, y;

  friend bool operator==(const LatticePoint& l, const LatticePoint& r) { return l.x == r.x && l.y == r.y; }
  friend bool operator<(const LatticePoint& l, const LatticePoint& r) {
    return l.x < r.x || (l.x == r.x && l.y < r.y);
  }
};

inline BigInt norm(const BigInt& D, const LatticePoint& pt) { return pt.x * pt.x - D * pt.y * pt.y; }

// Minimal positive solution of u^2 - D v^2 = 1; epsilon = u0 + v0 sqrt(D).
struct PellUnit {
  BigInt D, u0, v0;
};

// Orbit representative of a solution of x^2 - D y^2 = n under units and sign changes.
struct SolutionClass {
  BigInt D, n;
  LatticePoint rep;
};

// Continued-fraction expansion of sqrt(D) with the exact (P, Q, a) recurrence.
PellUnit fundamental_solution(const BigInt& D);

// Every (x, y) in xI x yI with x^2 - D y^2 = n, sorted. Scans the shorter side
// with an exact integer square root. D must be square-free and not in {0, 1}.
inline constexpr std::int64_t kScanGuard = 10'000'000;
std::vector<LatticePoint> enumerate_in_box_scan(const BigInt& D, const BigInt& n, const Interval& xI,
                                                const Interval& yI);

// Same, restricted to x = xr (mod step) and y = yr (mod step); only one
// residue class per axis is visited.
std::vector<LatticePoint> enumerate_in_progression(const BigInt& D, const BigInt& n, const Interval& xI,
                                                   const Interval& yI, const BigInt& step, const BigInt& xr,
                                                   const BigInt& yr);

// Representatives with 0 <= y <= Y*, Y* = ceil(sqrt(|n| (u0 + 1) / (2D))), x >= 0.
std::vector<LatticePoint> class_representatives(const PellUnit& unit, const BigInt& n);
BigInt representative_bound(const PellUnit& unit, const BigInt& n);

// Representatives propagated by powers of the unit and sign changes. Requires D >= 2, n != 0.
std::vector<LatticePoint> enumerate_in_box_orbit(const BigInt& D, const BigInt& n, const Interval& xI,
                                                 const Interval& yI);
std::vector<LatticePoint> enumerate_in_box_orbit(const PellUnit& unit, const BigInt& n, const Interval& xI,
                                                 const Interval& yI);

// Canonical orbit representative: |x + y sqrt(D)| in [sqrt|n|, sqrt|n| * epsilon),
// choosing the smaller of the two candidates related by conjugation.
LatticePoint primitive_reduce(const PellUnit& unit, const LatticePoint& pt);
LatticePoint primitive_reduce(const BigInt& D, const LatticePoint& pt);
SolutionClass solution_class(const PellUnit& unit, const LatticePoint& pt);

// Prime factorization of n >= 1 by trial division and Pollard rho (Brent).
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

// All (X, Y) in the box with X Y = n, n != 0, sorted.
std::vector<LatticePoint> solve_xy_in_box(const BigInt& n, const Interval& xI, const Interval& yI);

// Euclidean arc length between two points on one branch of x^2 - D y^2 = n.
// On ellipses this is the shorter of the two arcs.
double arc_length(const BigInt& D, const BigInt& n, const LatticePoint& p1, const LatticePoint& p2);
double chord_length(const LatticePoint& p1, const LatticePoint& p2);

struct ArcViolation {
  std::int64_t D, n;
  LatticePoint first, middle, last;
  double arc, threshold;
};

struct LemmaReport {
  std::int64_t D = 0;
  std::int64_t n_max = 0;
  std::int64_t y_window = 0;           // hyperbolas only
  std::uint64_t conics_with_points = 0;
  std::uint64_t triples_checked = 0;
  std::uint64_t quadratures = 0;
  double min_ratio = 0;                // min arc(P_i, P_{i+2}) / |n|^{1/6}; +inf if no triple
  std::int64_t min_ratio_n = 0;
  std::vector<ArcViolation> violations;
};

inline constexpr std::int64_t kDefaultYWindow = 10'000;

// For every 1 <= |n| <= n_max, orders lattice points along each branch and checks
// that any three consecutive points span an arc longer than |n|^{1/6}.
// Hyperbola branches are truncated to |y| <= y_window. Runs the n values in parallel.
LemmaReport verify_small_arc_lemma(std::int64_t D, std::int64_t n_max, std::int64_t y_window = kDefaultYWindow);
LemmaReport verify_small_arc_lemma_serial(std::int64_t D, std::int64_t n_max,
                                          std::int64_t y_window = kDefaultYWindow);

}  // namespace qfc
