#pragma once

// Exact count of solutions of Q(x,y) = lambda (mod p) in a box.

#include <optional>
#include <utility>
#include <vector>

#include "qfc/quadform.hpp"

namespace qfc {

using Point = std::pair<BigInt, BigInt>;

struct CountResult {
  std::uint64_t count = 0;
  // Sorted lexicographically; filled only when requested.
  std::optional<std::vector<Point>> solutions;
  // Some column had every coefficient of the y-polynomial vanish, so the whole
  // column was counted. Only reducible instances do this.
  bool degenerate_row = false;
};

// Per-column solver: for every x, solve c y^2 + (bx + e) y + (ax^2 + dx + f - lambda) = 0 (mod p)
// and count the roots' classes in [L+1, L+M]. Columns run in parallel with OpenMP.
CountResult count_exact(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p, const Box& box,
                        bool collect = false);

// Same algorithm on a single thread; the reference the parallel kernel is tested against.
CountResult count_exact_serial(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p,
                               const Box& box, bool collect = false);

// Double loop over the box. Refuses M above kNaiveGuard.
inline constexpr std::int64_t kNaiveGuard = 10'000;
CountResult count_naive(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p, const Box& box,
                        bool collect = false);

}  // namespace qfc
