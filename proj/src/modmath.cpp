#include "qfc/modmath.hpp"

#include <array>
#include <string>

namespace qfc {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t w : kWitnesses) {
    if (n % w == 0) return n == w;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p), q_(0), s_(0), z_(0) {
  if (p < 3 || p >= kMax || !is_prime_u64(p)) {
    throw Error(Errc::NotPrime, std::to_string(p) + " is not an odd prime below 2^62");
  }
  q_ = p - 1;
  while ((q_ & 1) == 0) {
    q_ >>= 1;
    ++s_;
  }
  // The least non-residue is prime, so scanning 2, 3, 4, ... finds the same
  // value as scanning primes.
  z_ = 2;
  while (legendre(z_) != -1) ++z_;
}

static std::uint64_t checked_u64(const BigInt& p) {
  if (sgn(p) <= 0 || !p.fits_ulong_p()) {
    throw Error(Errc::NotPrime, p.get_str() + " is not an odd prime below 2^62");
  }
  return p.get_ui();
}

PrimeModulus::PrimeModulus(const BigInt& p) : PrimeModulus(checked_u64(p)) {}

std::uint64_t PrimeModulus::reduce(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
}

std::uint64_t PrimeModulus::reduce(const BigInt& v) const {
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p_));
}

std::uint64_t PrimeModulus::inv(std::uint64_t a) const {
  a %= p_;
  if (a == 0) throw Error(Errc::ZeroInverse, "0 has no inverse mod " + std::to_string(p_));
  // Extended Euclid on signed 128-bit to stay clear of overflow.
  __int128 r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t0 < 0) t0 += p_;
  return static_cast<std::uint64_t>(t0);
}

int PrimeModulus::legendre(std::uint64_t a) const noexcept {
  a %= p_;
  if (a == 0) return 0;
  return powmod(a, (p_ - 1) / 2, p_) == 1 ? 1 : -1;
}

int PrimeModulus::sqrt(std::uint64_t a, std::uint64_t out[2]) const noexcept {
  a %= p_;
  if (a == 0) {
    out[0] = 0;
    return 1;
  }
  if (legendre(a) != 1) return 0;
  std::uint64_t r;
  if (s_ == 1) {
    r = powmod(a, (p_ + 1) / 4, p_);
  } else {
    // Tonelli-Shanks.
    unsigned m = s_;
    std::uint64_t c = powmod(z_, q_, p_);
    std::uint64_t t = powmod(a, q_, p_);
    r = powmod(a, (q_ + 1) / 2, p_);
    while (t != 1) {
      unsigned i = 0;
      std::uint64_t t2 = t;
      while (t2 != 1) {
        t2 = mulmod(t2, t2, p_);
        ++i;
      }
      std::uint64_t b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p_);
      m = i;
      c = mulmod(b, b, p_);
      t = mulmod(t, c, p_);
      r = mulmod(r, b, p_);
    }
  }
  std::uint64_t other = p_ - r;
  out[0] = r < other ? r : other;
  out[1] = r < other ? other : r;
  return 2;
}

Residue mod_inverse(const Residue& a) {
  return Residue(static_cast<std::int64_t>(a.modulus.inv(a.value)), a.modulus);
}

int legendre(const Residue& a) { return a.modulus.legendre(a.value); }

std::vector<Residue> sqrt_mod(const Residue& a) {
  std::uint64_t roots[2];
  int n = a.modulus.sqrt(a.value, roots);
  std::vector<Residue> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.emplace_back(static_cast<std::int64_t>(roots[i]), a.modulus);
  return out;
}

std::int64_t signed_rep(std::uint64_t v, std::uint64_t p) noexcept {
  v %= p;
  return v > p / 2 ? static_cast<std::int64_t>(v) - static_cast<std::int64_t>(p) : static_cast<std::int64_t>(v);
}

BigInt signed_rep(const BigInt& v, const PrimeModulus& p) {
  return big(signed_rep(p.reduce(v), p.value()));
}

BigInt count_class_in_interval(const Residue& r, const BigInt& lo, const BigInt& hi) {
  if (lo > hi) throw Error(Errc::EmptyInterval, "[" + lo.get_str() + ", " + hi.get_str() + "]");
  BigInt p = r.modulus.big();
  BigInt rv(static_cast<unsigned long>(r.value));
  return floor_div(hi - rv, p) - floor_div(lo - 1 - rv, p);
}

}  // namespace qfc
