#pragma once

// Arithmetic modulo an odd prime p < 2^62.

#include <cstdint>
#include <vector>

#include "qfc/bigint.hpp"
#include "qfc/error.hpp"

namespace qfc {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

// Odd prime modulus. Construction verifies primality and caches the
// Tonelli-Shanks decomposition p - 1 = q * 2^s together with the least
// quadratic non-residue.
class PrimeModulus {
 public:
  static constexpr std::uint64_t kMax = std::uint64_t{1} << 62;

  explicit PrimeModulus(std::uint64_t p);
  explicit PrimeModulus(const BigInt& p);

  std::uint64_t value() const noexcept { return p_; }
  BigInt big() const { return BigInt(static_cast<unsigned long>(p_)); }

  std::uint64_t reduce(std::int64_t v) const noexcept;
  std::uint64_t reduce(const BigInt& v) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return mulmod(a, b, p_); }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept { return powmod(a, e, p_); }

  // Raw inverse of a nonzero residue.
  std::uint64_t inv(std::uint64_t a) const;
  // Raw Legendre symbol in {-1, 0, 1}.
  int legendre(std::uint64_t a) const noexcept;
  // Square roots of a; returns the number of roots written to out (0, 1 or 2), ascending.
  int sqrt(std::uint64_t a, std::uint64_t out[2]) const noexcept;

  std::uint64_t nonresidue() const noexcept { return z_; }

  friend bool operator==(const PrimeModulus& l, const PrimeModulus& r) noexcept { return l.p_ == r.p_; }

 private:
  std::uint64_t p_;
  std::uint64_t q_;   // odd part of p - 1
  unsigned s_;        // power of two in p - 1
  std::uint64_t z_;   // least quadratic non-residue
};

struct Residue {
  std::uint64_t value;
  PrimeModulus modulus;

  Residue(std::int64_t v, const PrimeModulus& m) : value(m.reduce(v)), modulus(m) {}
  Residue(const BigInt& v, const PrimeModulus& m) : value(m.reduce(v)), modulus(m) {}

  friend bool operator==(const Residue& l, const Residue& r) noexcept {
    return l.value == r.value && l.modulus == r.modulus;
  }
};

Residue mod_inverse(const Residue& a);
int legendre(const Residue& a);
// {r : r^2 = a (mod p)} in ascending order.
std::vector<Residue> sqrt_mod(const Residue& a);

// Signed representative in [-(p-1)/2, (p-1)/2].
std::int64_t signed_rep(std::uint64_t v, std::uint64_t p) noexcept;
BigInt signed_rep(const BigInt& v, const PrimeModulus& p);

// |{n in [lo, hi] : n = r (mod p)}|.
BigInt count_class_in_interval(const Residue& r, const BigInt& lo, const BigInt& hi);

// Same count for 1 <= j <= m, the shape the box counter uses after translation.
inline std::uint64_t count_class_in_prefix(std::uint64_t r, std::uint64_t p, std::uint64_t m) noexcept {
  // j = r + k p with j >= 1.
  std::uint64_t first = r == 0 ? p : r;
  return first > m ? 0 : (m - first) / p + 1;
}

}  // namespace qfc
