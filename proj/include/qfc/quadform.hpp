#pragma once

// Binary quadratic polynomials Q(x,y) = ax^2 + bxy + cy^2 + dx + ey + f and
// their reduction, modulo p, to one of three standard congruences.

#include <optional>
#include <string>
#include <utility>

#include "qfc/bigint.hpp"
#include "qfc/modmath.hpp"

namespace qfc {

struct QuadraticForm {
  BigInt a, b, c, d, e, f;

  // Rejects b^2 - 4ac = 0 with DegenerateForm.
  QuadraticForm(BigInt a, BigInt b, BigInt c, BigInt d, BigInt e, BigInt f);

  // Parabolic forms are only used by the D = 0 sanity experiment.
  static QuadraticForm allow_degenerate(BigInt a, BigInt b, BigInt c, BigInt d, BigInt e, BigInt f);

  BigInt discriminant() const { return b * b - 4 * a * c; }
  BigInt evaluate(const BigInt& x, const BigInt& y) const;
  std::uint64_t evaluate_mod(std::uint64_t x, std::uint64_t y, const PrimeModulus& p) const;
  std::string to_string() const;

 private:
  struct Unchecked {};
  QuadraticForm(Unchecked, BigInt a, BigInt b, BigInt c, BigInt d, BigInt e, BigInt f);
};

inline BigInt discriminant(const QuadraticForm& q) { return q.discriminant(); }

// x in [K+1, K+M], y in [L+1, L+M].
struct Box {
  BigInt K, L;
  std::int64_t M;

  Box(BigInt K, BigInt L, std::int64_t M);
  BigInt x_lo() const { return K + 1; }
  BigInt x_hi() const { return K + M; }
  BigInt y_lo() const { return L + 1; }
  BigInt y_hi() const { return L + M; }
};

// Closed integer interval.
struct Interval {
  BigInt lo, hi;
  BigInt length() const { return hi - lo + 1; }
  bool contains(const BigInt& v) const { return lo <= v && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Integer affine map (x, y) -> (X, Y).
struct AffineMap {
  BigInt ax, bx, cx;  // X = ax*x + bx*y + cx
  BigInt ay, by, cy;  // Y = ay*x + by*y + cy

  std::pair<BigInt, BigInt> apply(const BigInt& x, const BigInt& y) const;
  BigInt det() const { return ax * by - ay * bx; }
  // Exact integer preimage, if one exists.
  std::optional<std::pair<BigInt, BigInt>> invert(const BigInt& X, const BigInt& Y) const;
  // Images of the box rows as exact hull intervals.
  Interval x_image(const Box& box) const;
  Interval y_image(const Box& box) const;

  static AffineMap identity() { return {1, 0, 0, 0, 1, 0}; }
};

enum class StandardKind { Norm, Hyperbolic, Difference };

std::string_view kind_name(StandardKind k) noexcept;

// One of
//   Norm:        X^2 - D Y^2 = mu      (D square-free, D not in {0, 1})
//   Hyperbolic:  X Y = mu
//   Difference:  X^2 - Y^2 = mu
// modulo p, with s (Q(x,y) - lambda) = lhs - mu for every integer (x, y) and (X, Y) = map(x, y).
struct StandardInstance {
  StandardKind kind;
  BigInt D;          // square-free part; 1 for Difference, 0 for Hyperbolic
  BigInt mu;         // residue in [0, p)
  AffineMap map;
  BigInt scale;      // s, not divisible by p
  BigInt y_stretch;  // k from D = D1 k^2
  bool swapped;      // x and y exchanged because a = 0 (mod p)
  Interval x_interval;
  Interval y_interval;

  // lhs(X, Y) - mu, reduced mod p.
  std::uint64_t residual(const BigInt& X, const BigInt& Y, const PrimeModulus& p) const;
};

bool is_absolutely_irreducible(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p);

struct SquarefreeSplit {
  BigInt core;  // D1, square-free, same sign as D
  BigInt k;     // D = D1 k^2, k >= 1
};

SquarefreeSplit squarefree_extract(const BigInt& D);

StandardInstance standardize(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p,
                             const Box& box);

}  // namespace qfc
