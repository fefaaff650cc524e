#pragma once

// Lifting X^2 - D Y^2 = mu (mod p) on a square box to a finite family of
// Diophantine equations (tx + k0)^2 - D (ty + l0)^2 = n_z.

#include <optional>
#include <vector>

#include "qfc/conic.hpp"
#include "qfc/quadform.hpp"

namespace qfc {

enum class Regime { SmallM, LargeM };

std::string_view regime_name(Regime r) noexcept;

struct RegimeChoice {
  BigInt T;
  Regime regime;
};

// SmallM iff 256 M^4 (1+|D|)^3 < p.
Regime classify_regime(const BigInt& M, const PrimeModulus& p, const BigInt& D);

// SmallM: T = 8(1+|D|)M. LargeM: T = ceil((p/M)^{1/3}), at least 2. RegimeOverflow if T >= p.
RegimeChoice choose_T(const BigInt& M, const PrimeModulus& p, const BigInt& D);

// t K = k0, t L = l0 (mod p) with |k0|, |l0| < p/T.
struct PigeonholeData {
  BigInt T, t, k0, l0;
  std::uint64_t p;
};

// Smallest such t in [1, T^2].
PigeonholeData find_pigeonhole(const BigInt& K, const BigInt& L, const PrimeModulus& p, const BigInt& T);

struct NormEquationInstance {
  BigInt D, z, n, t, k0, l0, mu0;
  Box box;  // x, y in [1, M]; box.K, box.L are the offsets of the lifted variables
};

// (1+|D|) T^2 M^2 / p + 2 (1+|D|) M / T + 1/2, exactly.
mpq_class z_bound(const BigInt& D, const BigInt& T, const BigInt& M, const PrimeModulus& p);
// Largest integer strictly below z_bound.
BigInt z_max(const mpq_class& bound);

struct Decomposition {
  BigInt D;
  Box box;           // square box [K+1, K+M]^2 covering the standardized variables
  RegimeChoice choice;
  PigeonholeData pigeonhole;
  BigInt mu;         // mu - (K^2 - D L^2) mod p
  BigInt mu0;        // signed representative of t * mu
  mpq_class bound;
  std::vector<NormEquationInstance> instances;  // ascending z
};

// Norm congruence X^2 - D Y^2 = mu (mod p) on [K+1, K+M]^2.
Decomposition decompose(const BigInt& D, const BigInt& mu, const Box& box, const PrimeModulus& p);
// Norm-kind standard instance, on the square hull of its transformed intervals.
Decomposition decompose(const StandardInstance& inst, const PrimeModulus& p);

enum class SolveStrategy { Auto, Scan, Orbit };

// Lattice points (U, V) = (tx + k0, ty + l0) of one instance with 1 <= x, y <= M.
std::vector<LatticePoint> solve_instance(const NormEquationInstance& inst, SolveStrategy strategy = SolveStrategy::Auto,
                                         const std::optional<PellUnit>& unit = std::nullopt);

// Maps each instance's (U, V) back to the box coordinates (K + x, L + y); union over z, sorted.
std::vector<LatticePoint> recompose(const std::vector<NormEquationInstance>& instances,
                                    const std::vector<std::vector<LatticePoint>>& solutions);

}  // namespace qfc
