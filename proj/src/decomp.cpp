#include "qfc/decomp.hpp"

#include <algorithm>
#include <set>

namespace qfc {

std::string_view regime_name(Regime r) noexcept { return r == Regime::SmallM ? "SmallM" : "LargeM"; }

Regime classify_regime(const BigInt& M, const PrimeModulus& p, const BigInt& D) {
  const BigInt one_d = 1 + abs(D);
  return 256 * M * M * M * M * one_d * one_d * one_d < p.big() ? Regime::SmallM : Regime::LargeM;
}

RegimeChoice choose_T(const BigInt& M, const PrimeModulus& p, const BigInt& D) {
  if (M < 1) throw Error(Errc::EmptyInterval, "M must be positive");
  RegimeChoice out;
  out.regime = classify_regime(M, p, D);
  if (out.regime == Regime::SmallM) {
    out.T = 8 * (1 + abs(D)) * M;
  } else {
    // Smallest T with T^3 >= ceil(p / M).
    const BigInt target = ceil_div(p.big(), M);
    BigInt T;
    mpz_root(T.get_mpz_t(), target.get_mpz_t(), 3);
    if (T * T * T < target) ++T;
    out.T = T < 2 ? BigInt(2) : T;
  }
  if (out.T >= p.big()) throw Error(Errc::RegimeOverflow, "T = " + out.T.get_str() + " is not below p");
  return out;
}

PigeonholeData find_pigeonhole(const BigInt& K, const BigInt& L, const PrimeModulus& p, const BigInt& T) {
  if (T < 1 || T >= p.big()) throw Error(Errc::NotFound, "pigeonhole needs 1 <= T < p");
  const std::uint64_t P = p.value();
  const std::uint64_t kr = p.reduce(K), lr = p.reduce(L);
  const BigInt limit = T * T;
  const BigInt pb = p.big();
  std::uint64_t kt = 0, lt = 0;
  for (BigInt t = 1; t <= limit; ++t) {
    kt = p.add(kt, kr);
    lt = p.add(lt, lr);
    const BigInt k0 = big(signed_rep(kt, P)), l0 = big(signed_rep(lt, P));
    if (abs(k0) * T < pb && abs(l0) * T < pb) return {T, t, k0, l0, P};
  }
  throw Error(Errc::NotFound, "no multiplier t <= T^2; pigeonhole violated");
}

mpq_class z_bound(const BigInt& D, const BigInt& T, const BigInt& M, const PrimeModulus& p) {
  const BigInt one_d = 1 + abs(D);
  mpq_class b = mpq_class(one_d * T * T * M * M, p.big()) + mpq_class(2 * one_d * M, T) + mpq_class(1, 2);
  b.canonicalize();
  return b;
}

BigInt z_max(const mpq_class& bound) {
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  return c - 1;
}

Decomposition decompose(const BigInt& D, const BigInt& mu, const Box& box, const PrimeModulus& p) {
  if (D == 0 || D == 1) throw Error(Errc::NotApplicable, "norm decomposition needs D not in {0, 1}");
  const BigInt M = big(box.M);
  Decomposition out{D, box, choose_T(M, p, D), {}, {}, {}, {}, {}};
  out.pigeonhole = find_pigeonhole(box.K, box.L, p, out.choice.T);
  const auto& ph = out.pigeonhole;

  // (x^2 + 2Kx) - D (y^2 + 2Ly) = mu - (K^2 - D L^2), then multiply by t.
  out.mu = BigInt(static_cast<unsigned long>(p.reduce(BigInt(mu - (box.K * box.K - D * box.L * box.L)))));
  out.mu0 = signed_rep(BigInt(ph.t * out.mu), p);
  out.bound = z_bound(D, ph.T, M, p);
  const BigInt zm = z_max(out.bound);
  if (out.choice.regime == Regime::SmallM && zm != 0) {
    throw Error(Errc::RegimeOverflow, "SmallM regime produced |z| range " + zm.get_str());
  }
  const BigInt shift = ph.k0 * ph.k0 - D * ph.l0 * ph.l0;
  for (BigInt z = -zm; z <= zm; ++z) {
    NormEquationInstance inst{D, z, ph.t * (out.mu0 + p.big() * z) + shift, ph.t, ph.k0, ph.l0, out.mu0, box};
    out.instances.push_back(std::move(inst));
  }
  return out;
}

Decomposition decompose(const StandardInstance& inst, const PrimeModulus& p) {
  if (inst.kind != StandardKind::Norm) throw Error(Errc::NotApplicable, "decompose expects a Norm-kind instance");
  const BigInt side = std::max<BigInt>(inst.x_interval.length(), inst.y_interval.length());
  if (!fits_i64(side)) throw Error(Errc::GuardExceeded, "transformed box too large");
  return decompose(inst.D, inst.mu, Box(inst.x_interval.lo - 1, inst.y_interval.lo - 1, to_i64(side)), p);
}

std::vector<LatticePoint> solve_instance(const NormEquationInstance& inst, SolveStrategy strategy,
                                         const std::optional<PellUnit>& unit) {
  const BigInt M = big(inst.box.M);
  if (inst.n == 0) {
    // D is not a square, so U = V = 0.
    if (divides(inst.t, inst.k0) && divides(inst.t, inst.l0)) {
      const BigInt x = -inst.k0 / inst.t, y = -inst.l0 / inst.t;
      if (x >= 1 && x <= M && y >= 1 && y <= M) return {{0, 0}};
    }
    return {};
  }
  const Interval UI{inst.t + inst.k0, inst.t * M + inst.k0};
  const Interval VI{inst.t + inst.l0, inst.t * M + inst.l0};
  if (strategy == SolveStrategy::Auto) {
    strategy = SolveStrategy::Scan;
    if (inst.D >= 2 && unit && representative_bound(*unit, inst.n) <= M) strategy = SolveStrategy::Orbit;
  }
  if (strategy == SolveStrategy::Scan) return enumerate_in_progression(inst.D, inst.n, UI, VI, inst.t, inst.k0, inst.l0);

  const PellUnit u = unit ? *unit : fundamental_solution(inst.D);
  std::vector<LatticePoint> out;
  for (auto& pt : enumerate_in_box_orbit(u, inst.n, UI, VI)) {
    if (divides(inst.t, pt.x - inst.k0) && divides(inst.t, pt.y - inst.l0)) out.push_back(std::move(pt));
  }
  return out;
}

std::vector<LatticePoint> recompose(const std::vector<NormEquationInstance>& instances,
                                    const std::vector<std::vector<LatticePoint>>& solutions) {
  if (instances.size() != solutions.size()) throw Error(Errc::InversionMismatch, "instance/solution count mismatch");
  std::set<LatticePoint> out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    for (const auto& pt : solutions[i]) {
      if (norm(inst.D, pt) != inst.n) throw Error(Errc::InversionMismatch, "point off its norm equation");
      if (!divides(inst.t, pt.x - inst.k0) || !divides(inst.t, pt.y - inst.l0)) {
        throw Error(Errc::InversionMismatch, "t does not divide U - k0 or V - l0");
      }
      const BigInt x = (pt.x - inst.k0) / inst.t, y = (pt.y - inst.l0) / inst.t;
      out.insert({inst.box.K + x, inst.box.L + y});
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace qfc
