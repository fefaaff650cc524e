#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>

namespace qfc {

using BigInt = mpz_class;

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

inline bool fits_i64(const BigInt& v) { return v.fits_slong_p(); }

inline std::int64_t to_i64(const BigInt& v) { return static_cast<std::int64_t>(v.get_si()); }

inline BigInt abs_big(const BigInt& v) { return abs(v); }

// floor(sqrt(n)) for n >= 0.
inline BigInt isqrt(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// True iff n >= 0 is a perfect square; stores the root when requested.
inline bool is_perfect_square(const BigInt& n, BigInt* root = nullptr) {
  if (sgn(n) < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (root) *root = isqrt(n);
  return true;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// a mod m in [0, m) for m > 0.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline BigInt gcd_big(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline bool divides(const BigInt& d, const BigInt& n) {
  return sgn(d) != 0 && mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

}  // namespace qfc
